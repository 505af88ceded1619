#pragma once

#include "trps/system_params.hpp"

namespace trps {

// Complex decay rates of the single-excitation coherence sector. Both
// have negative real part for any dissipative parameter set; their sum
// is -(Gamma_tot + i(w21 + wc)).
struct RateEigenvalues {
    cplx gamma_plus;
    cplx gamma_minus;

    cplx difference() const { return gamma_plus - gamma_minus; }
    bool degenerate(double tol = 1e-12) const {
        return std::abs(difference()) < tol;
    }
};

RateEigenvalues rate_eigenvalues(const SystemParams& p);

inline constexpr double kDegenerateRateTol = 1e-12;

}  // namespace trps
