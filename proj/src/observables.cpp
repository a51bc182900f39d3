#include "observables.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace sqpd {

namespace {

// clamp tiny negative eigenvalues coming from finite tolerance
constexpr double kEigClamp = 1e-10;

QDMatrix sigma_y_pair() {
    Eigen::Matrix2cd sy;
    sy << 0, cd(0, -1), cd(0, 1), 0;
    QDMatrix out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block<2, 2>(2 * i, 2 * j) = sy(i, j) * sy;
    return out;
}

}  // namespace

QDMatrix partial_trace_qds(const Matrix& rho, const CompositeSpace& space) {
    const int dim = space.total_dim();
    if (rho.rows() != dim || rho.cols() != dim)
        throw ConfigError("partial_trace_qds: state dimension does not match space");
    const int env = dim / 4;  // photon and plasmon factors combined
    // factor order is (photon, plasmons, QD1, QD2): QDs are the fastest index
    QDMatrix out = QDMatrix::Zero();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            cd acc = 0.0;
            for (int e = 0; e < env; ++e) acc += rho(e * 4 + i, e * 4 + j);
            out(i, j) = acc;
        }
    return out;
}

std::array<double, 4> bell_populations(const QDMatrix& rho_c) {
    const auto bell = bell_basis();
    std::array<double, 4> pops{};
    for (int k = 0; k < 4; ++k)
        pops[k] = std::real(cd(bell[k].adjoint() * rho_c * bell[k]));
    return pops;
}

std::array<double, 4> bell_populations(const Matrix& rho, const CompositeSpace& space) {
    return bell_populations(partial_trace_qds(rho, space));
}

double d_metric(const std::array<double, 4>& pops) {
    return std::max(pops[1] - (pops[0] + pops[2] + pops[3]), 0.0);
}

QDMatrix spin_flip(const QDMatrix& rho_c) {
    static const QDMatrix yy = sigma_y_pair();
    return yy * rho_c.conjugate() * yy;
}

double concurrence_mixed(const QDMatrix& rho_c) {
    if (std::abs(std::real(rho_c.trace()) - 1.0) > 1e-6 || std::abs(std::imag(rho_c.trace())) > 1e-6)
        throw ConfigError("concurrence_mixed: state must have unit trace");

    const QDMatrix prod = rho_c * spin_flip(rho_c);
    Eigen::ComplexEigenSolver<QDMatrix> es(prod, /*computeEigenvectors=*/false);
    std::array<double, 4> lam{};
    for (int k = 0; k < 4; ++k) {
        double v = std::real(es.eigenvalues()(k));
        if (std::abs(v) < kEigClamp) v = 0.0;  // sqrt is ill-conditioned at zero
        lam[k] = std::sqrt(std::max(v, 0.0));
    }
    std::sort(lam.begin(), lam.end(), std::greater<>());
    return std::clamp(lam[0] - lam[1] - lam[2] - lam[3], 0.0, 1.0);
}

double concurrence_mixed_literal(const QDMatrix& rho_c) {
    Eigen::SelfAdjointEigenSolver<QDMatrix> es(rho_c);
    QDMatrix sqrt_rho = QDMatrix::Zero();
    for (int k = 0; k < 4; ++k) {
        const double v = std::max(es.eigenvalues()(k), 0.0);
        sqrt_rho += std::sqrt(v) * es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
    }
    const QDMatrix m = sqrt_rho * spin_flip(rho_c) * sqrt_rho;  // Hermitian PSD
    Eigen::SelfAdjointEigenSolver<QDMatrix> es2(m);
    std::array<double, 4> lam{};
    for (int k = 0; k < 4; ++k) {
        double v = es2.eigenvalues()(k);
        if (std::abs(v) < kEigClamp) v = 0.0;
        lam[k] = std::sqrt(std::max(v, 0.0));
    }
    std::sort(lam.begin(), lam.end(), std::greater<>());
    return std::clamp(lam[0] - lam[1] - lam[2] - lam[3], 0.0, 1.0);
}

double concurrence_pure_ket(const QDKet& ket) {
    const auto magic = magic_basis();
    cd sum = 0.0;
    for (const auto& e : magic) {
        const cd beta = cd(e.adjoint() * ket);  // beta_i = <e_i|psi>
        sum += beta * beta;
    }
    return std::min(std::abs(sum), 1.0);
}

double concurrence_blocks(const std::vector<QDKet>& blocks) {
    QDMatrix rho_c = QDMatrix::Zero();
    for (const auto& v : blocks) rho_c += v * v.adjoint();
    const double tr = std::real(rho_c.trace());
    if (tr <= 0.0) return 0.0;
    return concurrence_mixed(rho_c / tr);
}

}  // namespace sqpd
