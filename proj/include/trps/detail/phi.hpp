#pragma once

#include <complex>

namespace trps::detail {

using cplx = std::complex<double>;

// phi1(z) = (e^z - 1)/z, the first exponential integrator function.
// Series fallback keeps the removable singularity at z = 0 smooth.
inline cplx phi1(const cplx& z) {
    if (std::abs(z) < 1e-4) {
        return 1.0 + z * (0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z / 120.0)));
    }
    return (std::exp(z) - 1.0) / z;
}

// phi2(z) = (phi1(z) - 1)/z = (e^z - 1 - z)/z^2.
inline cplx phi2(const cplx& z) {
    if (std::abs(z) < 1e-4) {
        return 0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z * (1.0 / 120.0 + z / 720.0)));
    }
    return (phi1(z) - 1.0) / z;
}

// d phi1 / dz = (e^z (z - 1) + 1)/z^2 = int_0^1 v e^{zv} dv.
inline cplx dphi1(const cplx& z) {
    if (std::abs(z) < 1e-3) {
        return 0.5 + z * (1.0 / 3.0 + z * (1.0 / 8.0 + z * (1.0 / 30.0 + z / 144.0)));
    }
    return (std::exp(z) * (z - 1.0) + 1.0) / (z * z);
}

// psi_k(z) = int_0^1 v^k e^{zv} dv; psi_0 = phi1, psi_1 = dphi1.
inline cplx psi2(const cplx& z) {
    if (std::abs(z) < 1e-3) {
        return 1.0 / 3.0 + z * (0.25 + z * (0.1 + z * (1.0 / 36.0 + z / 168.0)));
    }
    return (std::exp(z) - 2.0 * dphi1(z)) / z;
}

inline cplx psi3(const cplx& z) {
    if (std::abs(z) < 1e-3) {
        return 0.25 + z * (0.2 + z * (1.0 / 12.0 + z * (1.0 / 42.0 + z / 192.0)));
    }
    return (std::exp(z) - 3.0 * psi2(z)) / z;
}

}  // namespace trps::detail
