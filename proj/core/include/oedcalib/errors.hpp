#pragma once

#include <stdexcept>
#include <string>

namespace oedcalib {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Root finding: the target value is not bracketed by the domain endpoints.
struct TargetOutOfRange : Error {
    using Error::Error;
};

/// A function evaluation produced NaN or infinity where a finite value is required.
struct NonFiniteValue : Error {
    using Error::Error;
};

/// A matrix expected to be positive semidefinite has a clearly negative eigenvalue.
struct NotPSD : Error {
    using Error::Error;
};

/// An argument lies outside the interval it must belong to.
struct DomainError : Error {
    using Error::Error;
};

/// The heteroscedastic weight dmu/dy vanished at an interior point.
struct SingularWeight : Error {
    using Error::Error;
};

/// c'theta is not estimable under the given design (c outside range(M)).
struct NotEstimable : Error {
    using Error::Error;
};

/// The design's information matrix is singular where a full-rank one is required.
struct SingularDesign : Error {
    using Error::Error;
};

/// Support merging removed every point.
struct EmptyDesign : Error {
    using Error::Error;
};

/// The requested operation is not defined for this criterion.
struct UnsupportedCriterion : Error {
    using Error::Error;
};

/// Every candidate ratio produced a singular information matrix.
struct SingularSequence : Error {
    using Error::Error;
};

/// Scenario configuration is malformed; message names the offending field.
struct ConfigError : Error {
    using Error::Error;
};

/// Failure writing an artifact to disk.
struct IoError : Error {
    using Error::Error;
};

}  // namespace oedcalib
