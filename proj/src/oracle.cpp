#include "oracle.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace sqpd {

namespace {
const cd kI{0.0, 1.0};

// vec(A X B) = (B^T kron A) vec(X) for column-major vec
Matrix kron_t(const Matrix& bt, const Matrix& a) {
    Matrix out(bt.rows() * a.rows(), bt.cols() * a.cols());
    for (Eigen::Index i = 0; i < bt.rows(); ++i)
        for (Eigen::Index j = 0; j < bt.cols(); ++j)
            out.block(i * a.rows(), j * a.cols(), a.rows(), a.cols()) = bt(i, j) * a;
    return out;
}
}  // namespace

Matrix build_liouvillian_matrix(const Matrix& h, const std::vector<Dissipator>& dissipators) {
    const Eigen::Index d = h.rows();
    const Matrix id = Matrix::Identity(d, d);
    Matrix lv = -kI * (kron_t(id, h) - kron_t(h.transpose(), id));
    for (const auto& dis : dissipators) {
        const Matrix x = Matrix(dis.op);
        const Matrix xd = x.adjoint();
        const Matrix xdx = xd * x;
        lv += 0.5 * dis.rate *
              (2.0 * kron_t(xd.transpose(), x) - kron_t(id, xdx) - kron_t(xdx.transpose(), id));
    }
    return lv / kHbar;
}

Matrix evolve_by_expm(const Matrix& rho0, const Matrix& liouvillian, double t_fs) {
    const Eigen::Index d = rho0.rows();
    const Matrix propagator = (liouvillian * t_fs).exp();
    Vector v = Eigen::Map<const Vector>(rho0.data(), d * d);
    v = propagator * v;
    return Eigen::Map<const Matrix>(v.data(), d, d);
}

}  // namespace sqpd
