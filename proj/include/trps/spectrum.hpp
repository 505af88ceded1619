#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "trps/kernels.hpp"
#include "trps/propagate.hpp"
#include "trps/system_params.hpp"

namespace trps {

// Emission-channel weights chi_{mu,mu'} entering the spectrum sum.
struct ChannelWeights {
    cplx sigma_sigma;   // gamma / pi
    cplx a_a;           // kappa / pi
    cplx sigma_a;       // gamma_F / pi
    cplx a_sigma;       // conj(gamma_F) / pi
};

ChannelWeights channel_weights(const SystemParams& p);

// Real-valued spectrum S(nu, t) on a rectangular grid.
// values(i, j) is the intensity at nu_grid[i], t_grid_ps[j].
struct Spectrogram {
    std::vector<double> nu_grid;      // ueV
    std::vector<double> t_grid_ps;    // ps
    Eigen::MatrixXd values;
    double gamma_s = 0.0;             // ueV

    double max_value() const;
    double min_value() const;
};

// Throws InvariantViolation if min(S) < -1e-6 * max(S).
void check_nonnegative(const Spectrogram& spec, const std::string& context = "");

// Upper bound (natural units) on the trajectory step usable for spectrum
// assembly: min(0.02 * 2pi/|Im(gamma_+ - gamma_-)|, 0.1/max(Gamma_tot, Gamma_s)).
double assembly_step_rule_nat(const SystemParams& p, const SpectrometerParams& spm);

// Uniform grid from 0 to t_max_ps with step <= rule/divisor (in ps).
std::vector<double> fine_time_grid(const SystemParams& p, const SpectrometerParams& spm,
                                   double t_max_ps, int divisor);

// Default display grid: n points over [center - span_factor*band,
// center + span_factor*band], band = max(2|g|, |w_c21| + Gamma_tot, 2 Gamma_s).
std::vector<double> default_nu_grid(const SystemParams& p, const SpectrometerParams& spm,
                                    int n_points = 601, double span_factor = 3.0);

// The bracketed emission source kappa<n_cav> + gamma<n_tls> + 2Re[gamma_F <coh>].
std::vector<double> emission_source(const SystemParams& p,
                                    const ExpectationTrajectory& traj);

struct AssemblyOptions {
    int workers = 1;                  // must not affect results bitwise
    bool accumulate_time_integral = false;
};

struct AssemblyResult {
    Spectrogram spectrogram;
    std::vector<double> time_integral;   // per nu, ueV^-1 * ps scale; empty unless requested
};

// Core quadrature: folds the trajectory sources with the spectral kernels
// over s' on the trajectory grid, exactly integrating the kernel across
// each step and interpolating the source linearly. Output columns are
// snapped to the nearest trajectory samples of the requested times.
AssemblyResult assemble_spectrum(const SystemParams& p, const SpectrometerParams& spm,
                                 const ExpectationTrajectory& traj,
                                 const std::vector<double>& nu_grid,
                                 const std::vector<double>& t_grid_ps,
                                 const AssemblyOptions& opts = {});

Spectrogram trps(const SystemParams& p, const SpectrometerParams& spm,
                 const ExpectationTrajectory& traj,
                 const std::vector<double>& nu_grid,
                 const std::vector<double>& t_grid_ps,
                 const AssemblyOptions& opts = {});

// Tail criterion for the time integral: the emission source must drop
// below 1e-6 of its maximum with a 5 hbar/Gamma_s filter-memory tail left
// before the final sample; otherwise NotConverged.
void check_time_integral_converged(const SystemParams& p, const SpectrometerParams& spm,
                                   const ExpectationTrajectory& traj);

// Time integral of the spectrum over the full trajectory horizon.
std::vector<double> time_integrated_spectrum(const SystemParams& p,
                                             const SpectrometerParams& spm,
                                             const ExpectationTrajectory& traj,
                                             const std::vector<double>& nu_grid,
                                             const AssemblyOptions& opts = {});

struct EnergyIntegrated {
    std::vector<double> t_ps;
    std::vector<double> quadrature;   // trapezoid of the spectrogram over nu
    std::vector<double> reference;    // source convolved with Gs e^{-Gs t}
};

// nu-quadrature of a spectrogram against the analytic convolution
// reference. The spectrogram grid must span at least +-12 * Gamma_band
// around the emitter center, Gamma_band = max(Gamma_s, Gamma_tot, 2|g|,
// |w_c21|); otherwise GridTooNarrow.
EnergyIntegrated energy_integrated_intensity(const Spectrogram& spec,
                                             const SystemParams& p,
                                             const SpectrometerParams& spm,
                                             const ExpectationTrajectory& traj);

// Convolution reference alone, on the trajectory grid.
std::vector<double> energy_integrated_reference(const SystemParams& p,
                                                const SpectrometerParams& spm,
                                                const ExpectationTrajectory& traj);

// Wide internal grid for the energy-integration identity. Early output
// times carry wings of width hbar/t, so the span scales with both the
// emitter linewidths and 1/t_first.
std::vector<double> energy_identity_grid(const SystemParams& p,
                                         const SpectrometerParams& spm,
                                         double t_first_ps);

// Closed-form spectrum of the bare TLS (g = 0, eta = 0): oracle for the
// assembly engine.
Spectrogram tls_trps(const SystemParams& p, const SpectrometerParams& spm,
                     const std::vector<double>& nu_grid,
                     const std::vector<double>& t_grid_ps);

double tls_trps_value(const SystemParams& p, const SpectrometerParams& spm,
                      double nu, double t_ps);

// Closed-form time integral: Lorentzian of HWHM (gamma + Gamma_s)/2 + gamma_ph.
std::vector<double> tls_time_integrated(const SystemParams& p, const SpectrometerParams& spm,
                                        const std::vector<double>& nu_grid);

// Closed-form energy integral: gamma e^{-gamma t} convolved with
// Gs e^{-Gs t}; independent of the dephasing rate.
std::vector<double> tls_energy_integrated(const SystemParams& p, const SpectrometerParams& spm,
                                          const std::vector<double>& t_grid_ps);

}  // namespace trps
