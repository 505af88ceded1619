#pragma once

#include <string>
#include <vector>

#include "trps/coefficients.hpp"
#include "trps/propagate.hpp"

namespace trps {

// Correlation channel: which operator pair <O_mu^dag ... O_mu'> is traced.
enum class Channel { sigma, a };

// Two-time trace <O_mu^dag(s + tau') O_mu'(s)> against signed lags tau'.
// window_mask marks the causal window -s < tau' < 0; values vanish
// identically for tau' < -s.
struct CorrelationTrace {
    double s_ps = 0.0;
    Channel mu = Channel::a;
    Channel mu_prime = Channel::a;
    std::vector<double> tau_prime_ps;
    std::vector<cplx> values;
    std::vector<bool> window_mask;
};

// Future-directed trace: tau_grid_ps >= 0 mapped to tau' = +tau.
CorrelationTrace correlation_future(const SystemParams& p,
                                    const ExpectationTrajectory& traj,
                                    double s_ps,
                                    const std::vector<double>& tau_grid_ps,
                                    Channel mu = Channel::a,
                                    Channel mu_prime = Channel::a);

// Past-directed trace: tau_grid_ps >= 0 interpreted as lag into the past,
// output indexed by tau' = -tau.
CorrelationTrace correlation_past(const SystemParams& p,
                                  const ExpectationTrajectory& traj,
                                  double s_ps,
                                  const std::vector<double>& tau_grid_ps,
                                  Channel mu = Channel::a,
                                  Channel mu_prime = Channel::a);

// Both directions merged onto one signed tau' grid (ascending).
CorrelationTrace correlation_trace(const SystemParams& p,
                                   const ExpectationTrajectory& traj,
                                   double s_ps,
                                   const std::vector<double>& tau_prime_grid_ps,
                                   Channel mu = Channel::a,
                                   Channel mu_prime = Channel::a);

// Uniform tau step (ps) satisfying the sampling rule for the parameter set.
double correlation_tau_step_ps(const SystemParams& p);

// CSV export: columns tau_prime_ps, re, im, in_causal_window.
std::string correlation_csv(const CorrelationTrace& trace);

}  // namespace trps
