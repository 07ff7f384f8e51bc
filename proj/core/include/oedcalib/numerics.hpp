#pragma once

#include <functional>
#include <span>
#include <vector>

#include "oedcalib/interval.hpp"

namespace oedcalib {

/// Solve g(y) = target for strictly monotone continuous g on the domain.
/// Bisection down to a bracket of width 1e-12 * domain length, followed by up
/// to five Newton steps when a derivative is supplied. The result y satisfies
/// |g(y) - target| <= tol * max(1, |target|).
///
/// Throws TargetOutOfRange when the target is not between g(lo) and g(hi)
/// (beyond the tol-sized slack), NonFiniteValue when g produces NaN/inf.
double invert_monotone(const std::function<double(double)>& g, double target,
                       const Interval& domain, double tol,
                       const std::function<double(double)>& dg = nullptr);

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
/// Rules are computed on first use and cached; thread-safe.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const QuadratureRule& gauss_legendre_rule(int nodes);

/// Integral of g over the domain by the n-point Gauss-Legendre rule.
/// Exact for polynomials of degree <= 2n-1. Throws NonFiniteValue if any
/// node evaluation is not finite.
double gauss_legendre(const std::function<double(double)>& g, const Interval& domain,
                      int nodes);

/// argmin of a unimodal function on [lo, hi] by golden-section search.
double golden_section(const std::function<double(double)>& g, double lo, double hi,
                      double tol);

struct MinimizeResult {
    std::vector<double> point;
    double value;
};

/// Derivative-free multistart minimization over a k-box, k <= 6.
/// Starts are taken from a deterministic stratified (Halton) grid, each run
/// is Nelder-Mead with box clamping plus a coordinate golden-section polish.
/// No RNG is involved: identical inputs give identical output. The returned
/// point lies inside the box and its value never exceeds the objective at
/// any start point. Non-finite objective values are treated as +inf; if the
/// objective is non-finite at every start, throws NonFiniteValue.
MinimizeResult minimize_box(const std::function<double(std::span<const double>)>& g,
                            std::span<const Interval> box, int starts);

}  // namespace oedcalib
