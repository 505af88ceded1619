#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "trps/config.hpp"
#include "trps/units.hpp"

namespace th {

inline trps::SystemParams fig1_params() { return trps::preset_config("fig1_res5").params; }
inline trps::SystemParams fig3_params() { return trps::preset_config("fig3_fano").params; }
inline trps::SystemParams tls_params() { return trps::preset_config("figS4_tls").params; }

// Bare TLS test point away from any rate degeneracy.
inline trps::SystemParams tls_probe(double gamma_ph = 0.0) {
    trps::SystemParams p;
    p.gamma = 50.0;
    p.kappa = 13.0;
    p.gamma_ph = gamma_ph;
    return p;
}

inline double cdist(trps::cplx a, trps::cplx b) { return std::abs(a - b); }

// tau samples uniform over (0, 9 hbar / Gamma_tot] ps.
inline std::vector<double> tau_samples(const trps::SystemParams& p, int n) {
    const double top = 9.0 * trps::kHbarUevPs / p.gamma_tot();
    std::vector<double> out;
    out.reserve(static_cast<size_t>(n));
    for (int k = 1; k <= n; ++k) out.push_back(top * k / n);
    return out;
}

}  // namespace th
