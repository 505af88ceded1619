#include "trps/rates.hpp"

#include <cmath>

namespace trps {

RateEigenvalues rate_eigenvalues(const SystemParams& p) {
    const cplx i(0.0, 1.0);
    const cplx center = -0.5 * (p.gamma_tot() + i * (p.omega_21 + p.omega_c));
    const cplx u = 0.5 * (p.kappa - p.gamma) - p.gamma_ph + i * p.omega_c21();
    const cplx disc = u * u - 4.0 * std::conj(p.g_plus()) * p.g_minus();
    const cplx root = 0.5 * std::sqrt(disc);
    return {center + root, center - root};
}

}  // namespace trps
