#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <complex>
#include <initializer_list>
#include <vector>

#include "errors.hpp"

namespace sqpd {

using cd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using SparseMatrix = Eigen::SparseMatrix<cd>;

// Reduced Planck constant in meV*fs. Energies are meV, times fs throughout.
inline constexpr double kHbar = 658.2119569;

/// Tensor-product Hilbert space with the fixed factor order
/// (photon, plasmon(s), QD1, QD2). All modules assume this order.
class CompositeSpace {
public:
    CompositeSpace(std::initializer_list<int> dims)
        : CompositeSpace(std::vector<int>(dims)) {}
    explicit CompositeSpace(std::vector<int> dims);

    static CompositeSpace single_pn(int n_ph, int n_pl);
    static CompositeSpace two_pn(int n_ph, int n_pl);

    int site_count() const { return static_cast<int>(dims_.size()); }
    int dim(int site) const { return dims_.at(site); }
    int total_dim() const { return total_; }
    const std::vector<int>& dims() const { return dims_; }

    int photon_site() const { return 0; }
    int plasmon_count() const { return site_count() - 3; }
    int plasmon_site(int i = 0) const;
    int qd_site(int j) const;  // j = 0 or 1

    /// Flat index of a basis ket given per-site occupation numbers.
    int index_of(const std::vector<int>& occ) const;
    /// Per-site occupation numbers of a flat basis index.
    std::vector<int> occupation(int flat) const;

    /// Basis ket |occ[0], occ[1], ...> in the full space.
    Vector basis_ket(const std::vector<int>& occ) const;

private:
    std::vector<int> dims_;
    int total_ = 1;
};

/// dim x dim bosonic lowering operator: entry sqrt(n) at (n-1, n).
Matrix annihilation(int dim);
Matrix creation(int dim);
Matrix number_operator(int dim);
Matrix identity(int dim);

/// Fock ket |n> in a dim-dimensional truncated space.
Vector fock_ket(int dim, int n);

/// Place a single-site operator into the full space: identity elsewhere.
Matrix embed(const Matrix& op, int site, const CompositeSpace& space);

/// Kronecker product of kets in the given (fixed) factor order.
Vector tensor_ket(const std::vector<Vector>& factors);

Matrix kron(const Matrix& a, const Matrix& b);

double hermiticity_error(const Matrix& m);
bool is_hermitian(const Matrix& m, double tol = 1e-12);

}  // namespace sqpd
