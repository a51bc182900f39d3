#pragma once

#include "model.hpp"

namespace sqpd {

/// Dense vectorized Lindblad generator L with d vec(rho)/dt = L vec(rho)
/// (column-major vec, units 1/fs). Only feasible for small truncations; used
/// as the independent matrix-exponential oracle for the propagation engine.
Matrix build_liouvillian_matrix(const Matrix& h, const std::vector<Dissipator>& dissipators);

/// rho(t) = unvec(expm(L t) vec(rho0)).
Matrix evolve_by_expm(const Matrix& rho0, const Matrix& liouvillian, double t_fs);

}  // namespace sqpd
