#pragma once

#include <span>
#include <vector>

#include "oedcalib/errors.hpp"

namespace oedcalib {

/// Small dense symmetric matrix with packed lower-triangular storage, so
/// symmetry holds exactly by construction. Dimensions here are tiny (the
/// number of model parameters), so all algorithms are O(dim^3) direct
/// methods with no blocking.
class SymMatrix {
  public:
    explicit SymMatrix(int dim);

    static SymMatrix identity(int dim);
    static SymMatrix diagonal(std::span<const double> d);

    int dim() const { return dim_; }

    double operator()(int i, int j) const { return a_[index(i, j)]; }
    void set(int i, int j, double v) { a_[index(i, j)] = v; }
    void add(int i, int j, double v) { a_[index(i, j)] += v; }

    /// this += scale * v v^T
    void add_outer(std::span<const double> v, double scale);

    SymMatrix& operator+=(const SymMatrix& other);
    SymMatrix& operator*=(double s);

    /// M x
    std::vector<double> mul(std::span<const double> x) const;

    /// x^T M x
    double quad(std::span<const double> x) const;

    /// x^T M y
    double bilinear(std::span<const double> x, std::span<const double> y) const;

    double max_abs() const;

  private:
    static int index(int i, int j) {
        if (j > i) std::swap(i, j);
        return i * (i + 1) / 2 + j;
    }

    int dim_;
    std::vector<double> a_;
};

/// Eigenvalues in ascending order with orthonormal eigenvectors stored
/// column-major (vectors[j*dim + i] = component i of eigenvector j).
struct EigenDecomposition {
    std::vector<double> values;
    std::vector<double> vectors;
    int dim = 0;

    double vec(int i, int j) const { return vectors[j * dim + i]; }
};

/// Cyclic Jacobi rotations; exact for the tiny symmetric matrices used here.
EigenDecomposition eigen_sym(const SymMatrix& m);

struct PseudoInverse {
    SymMatrix matrix;
    int rank;
};

/// Moore-Penrose pseudoinverse. Eigenvalues of magnitude below
/// 1e-10 * max|eigenvalue| are treated as zero; rank counts the rest.
/// Equals the ordinary inverse for nonsingular input.
PseudoInverse sym_inverse(const SymMatrix& m);

/// log det of a PSD matrix; -infinity for singular input. Throws NotPSD if a
/// clearly negative eigenvalue is present.
double log_det(const SymMatrix& m);

}  // namespace oedcalib
