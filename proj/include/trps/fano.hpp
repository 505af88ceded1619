#pragma once

#include <vector>

#include "trps/system_params.hpp"

namespace trps {

// One-sided Fourier transform of the phased oscillation,
//   F_phi(nu) = int_0^inf cos(|g| tau + phi) e^{i nu tau - Gs tau / 2} dtau,
// probing how the doublet separation of |F|^2 depends on the phase.
struct FanoProbeResult {
    double g_mag = 0.0;
    double gamma_s = 0.0;
    double phi = 0.0;
    std::vector<double> nu_grid;
    std::vector<cplx> f;          // adaptive quadrature of the definition
    std::vector<double> abs2;     // |F|^2
};

FanoProbeResult fano_probe(double g_mag, double gamma_s, double phi,
                           const std::vector<double>& nu_grid);

// Direct symbolic integration of the definition:
// 1/2 [ e^{i phi}/(Gs/2 - i(nu+|g|)) + e^{-i phi}/(Gs/2 - i(nu-|g|)) ].
cplx fano_closed_form(double g_mag, double gamma_s, double phi, double nu);

// Alternative textbook-style evaluator kept for comparison:
// e^{i phi} Gs/((nu+|g|)^2 + Gs^2) + e^{-i phi} Gs/((nu-|g|)^2 + Gs^2).
// Disagrees with the definition integral; see the comparison report
// emitted by the scenario runner.
cplx fano_lorentzian_form(double g_mag, double gamma_s, double phi, double nu);

}  // namespace trps
