#include "algebra.hpp"

#include <cmath>

namespace sqpd {

CompositeSpace::CompositeSpace(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.size() < 3)
        throw ConfigError("composite space needs at least photon, plasmon and QD factors");
    for (int d : dims_)
        if (d < 2) throw ConfigError("all factor dimensions must be >= 2");
    // the last two factors are the quantum dots and are hard two-level
    if (dims_[dims_.size() - 1] != 2 || dims_[dims_.size() - 2] != 2)
        throw ConfigError("QD factors must have dimension 2");
    total_ = 1;
    for (int d : dims_) total_ *= d;
}

CompositeSpace CompositeSpace::single_pn(int n_ph, int n_pl) {
    return CompositeSpace({n_ph, n_pl, 2, 2});
}

CompositeSpace CompositeSpace::two_pn(int n_ph, int n_pl) {
    return CompositeSpace({n_ph, n_pl, n_pl, 2, 2});
}

int CompositeSpace::plasmon_site(int i) const {
    if (i < 0 || i >= plasmon_count()) throw ConfigError("plasmon index out of range");
    return 1 + i;
}

int CompositeSpace::qd_site(int j) const {
    if (j < 0 || j > 1) throw ConfigError("QD index out of range");
    return site_count() - 2 + j;
}

int CompositeSpace::index_of(const std::vector<int>& occ) const {
    if (static_cast<int>(occ.size()) != site_count())
        throw ConfigError("occupation list length does not match factor count");
    int idx = 0;
    for (int s = 0; s < site_count(); ++s) {
        if (occ[s] < 0 || occ[s] >= dims_[s])
            throw ConfigError("occupation number out of range for factor");
        idx = idx * dims_[s] + occ[s];
    }
    return idx;
}

std::vector<int> CompositeSpace::occupation(int flat) const {
    std::vector<int> occ(site_count());
    for (int s = site_count() - 1; s >= 0; --s) {
        occ[s] = flat % dims_[s];
        flat /= dims_[s];
    }
    return occ;
}

Vector CompositeSpace::basis_ket(const std::vector<int>& occ) const {
    Vector v = Vector::Zero(total_);
    v(index_of(occ)) = 1.0;
    return v;
}

Matrix annihilation(int dim) {
    if (dim < 2) throw ConfigError("annihilation operator needs dim >= 2");
    Matrix a = Matrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

Matrix creation(int dim) { return annihilation(dim).adjoint(); }

Matrix number_operator(int dim) {
    Matrix n = Matrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) n(k, k) = static_cast<double>(k);
    return n;
}

Matrix identity(int dim) { return Matrix::Identity(dim, dim); }

Vector fock_ket(int dim, int n) {
    if (n < 0 || n >= dim) throw ConfigError("Fock occupation out of range");
    Vector v = Vector::Zero(dim);
    v(n) = 1.0;
    return v;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Matrix embed(const Matrix& op, int site, const CompositeSpace& space) {
    if (site < 0 || site >= space.site_count())
        throw ConfigError("embed: site index out of range");
    if (op.rows() != op.cols() || op.rows() != space.dim(site))
        throw ConfigError("embed: operator dimension does not match factor dimension");
    Matrix out = Matrix::Identity(1, 1);
    for (int s = 0; s < space.site_count(); ++s)
        out = kron(out, s == site ? op : Matrix(identity(space.dim(s))));
    return out;
}

Vector tensor_ket(const std::vector<Vector>& factors) {
    if (factors.empty()) throw ConfigError("tensor_ket: no factors");
    Vector out = factors[0];
    for (size_t k = 1; k < factors.size(); ++k) {
        Vector next(out.size() * factors[k].size());
        for (Eigen::Index i = 0; i < out.size(); ++i)
            next.segment(i * factors[k].size(), factors[k].size()) = out(i) * factors[k];
        out = std::move(next);
    }
    return out;
}

double hermiticity_error(const Matrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& m, double tol) {
    return m.rows() == m.cols() && hermiticity_error(m) <= tol;
}

}  // namespace sqpd
