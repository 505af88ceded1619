#include "trps/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "trps/errors.hpp"
#include "trps/io.hpp"
#include "trps/units.hpp"

namespace trps {

namespace {

struct SourcePair {
    cplx onto_sigma;  // <O_mu^dag sigma_->
    cplx onto_a;      // <O_mu^dag a>
};

// Single-time sources entering the regression expansion for channel mu.
SourcePair sources_at(const ExpectationTrajectory& traj, std::size_t j, Channel mu) {
    if (mu == Channel::sigma) {
        return {cplx(traj.n_tls[j], 0.0), traj.coh[j]};
    }
    return {traj.coh_conj_pair[j], cplx(traj.n_cav[j], 0.0)};
}

std::size_t locate(const ExpectationTrajectory& traj, double t_ps) {
    if (traj.size() == 0) throw Error("trajectory is empty");
    const double t0 = traj.times_ps.front();
    if (traj.size() == 1) {
        if (std::abs(t_ps - t0) > 1e-9 * std::max(1.0, std::abs(t0))) {
            throw OutOfTrajectory("time not on the trajectory grid");
        }
        return 0;
    }
    const double dt = traj.step_ps();
    const double x = (t_ps - t0) / dt;
    const auto j = static_cast<long>(std::llround(x));
    if (j < 0 || j >= static_cast<long>(traj.size())) {
        std::ostringstream os;
        os << "time " << t_ps << " ps outside the trajectory range ["
           << traj.times_ps.front() << ", " << traj.times_ps.back() << "] ps";
        throw OutOfTrajectory(os.str());
    }
    if (std::abs(x - static_cast<double>(j)) > 1e-6) {
        std::ostringstream os;
        os << "time " << t_ps << " ps not on the trajectory grid (step " << dt << " ps)";
        throw OutOfTrajectory(os.str());
    }
    return static_cast<std::size_t>(j);
}

cplx pick(const CoefficientValues& v, Channel c, int which) {
    if (c == Channel::sigma) return which == 1 ? v.c_sigma_1 : v.c_sigma_2;
    return which == 1 ? v.c_a_1 : v.c_a_2;
}

cplx value_at(const CoefficientSet& coeffs,
              const ExpectationTrajectory& traj, double s_ps, double tau_prime_ps,
              Channel mu, Channel mu_prime) {
    if (tau_prime_ps <= 0.0) {
        const double u_ps = s_ps + tau_prime_ps;
        const std::size_t j = locate(traj, u_ps);
        const auto src = sources_at(traj, j, mu);
        const auto cv = coeffs.at_ps(-tau_prime_ps);
        return pick(cv, mu_prime, 1) * src.onto_sigma + pick(cv, mu_prime, 2) * src.onto_a;
    }
    const std::size_t j = locate(traj, s_ps);
    const auto src = sources_at(traj, j, mu_prime);
    const auto cv = coeffs.at_ps(tau_prime_ps);
    return std::conj(pick(cv, mu, 1) * src.onto_sigma + pick(cv, mu, 2) * src.onto_a);
}

CorrelationTrace evaluate(const SystemParams& p, const ExpectationTrajectory& traj,
                          double s_ps, const std::vector<double>& tau_prime_ps,
                          Channel mu, Channel mu_prime) {
    if (s_ps < 0.0) throw Error("correlation anchor time must be non-negative");
    const CoefficientSet coeffs(p);
    CorrelationTrace out;
    out.s_ps = s_ps;
    out.mu = mu;
    out.mu_prime = mu_prime;
    out.tau_prime_ps = tau_prime_ps;
    out.values.reserve(tau_prime_ps.size());
    out.window_mask.reserve(tau_prime_ps.size());
    const double edge_tol = 1e-9 * std::max(1.0, s_ps);
    for (double tp : tau_prime_ps) {
        const bool before_start = tp < -s_ps - edge_tol;
        if (before_start) {
            out.values.push_back(cplx(0.0, 0.0));
            out.window_mask.push_back(false);
            continue;
        }
        const double tp_clamped = std::max(tp, -s_ps);
        out.values.push_back(value_at(coeffs, traj, s_ps, tp_clamped, mu, mu_prime));
        out.window_mask.push_back(tp < 0.0);
    }
    return out;
}

}  // namespace

CorrelationTrace correlation_future(const SystemParams& p,
                                    const ExpectationTrajectory& traj, double s_ps,
                                    const std::vector<double>& tau_grid_ps,
                                    Channel mu, Channel mu_prime) {
    for (double tau : tau_grid_ps) {
        if (tau < 0.0) throw Error("future lag grid must be non-negative");
    }
    return evaluate(p, traj, s_ps, tau_grid_ps, mu, mu_prime);
}

CorrelationTrace correlation_past(const SystemParams& p,
                                  const ExpectationTrajectory& traj, double s_ps,
                                  const std::vector<double>& tau_grid_ps,
                                  Channel mu, Channel mu_prime) {
    std::vector<double> signed_grid;
    signed_grid.reserve(tau_grid_ps.size());
    for (double tau : tau_grid_ps) {
        if (tau < 0.0) throw Error("past lag grid must be non-negative");
        signed_grid.push_back(-tau);
    }
    return evaluate(p, traj, s_ps, signed_grid, mu, mu_prime);
}

CorrelationTrace correlation_trace(const SystemParams& p,
                                   const ExpectationTrajectory& traj, double s_ps,
                                   const std::vector<double>& tau_prime_grid_ps,
                                   Channel mu, Channel mu_prime) {
    for (std::size_t k = 1; k < tau_prime_grid_ps.size(); ++k) {
        if (tau_prime_grid_ps[k] <= tau_prime_grid_ps[k - 1]) {
            throw Error("signed lag grid must be strictly ascending");
        }
    }
    return evaluate(p, traj, s_ps, tau_prime_grid_ps, mu, mu_prime);
}

double correlation_tau_step_ps(const SystemParams& p) {
    const RateEigenvalues r = rate_eigenvalues(p);
    const double beat = std::abs(r.difference().imag());
    const double carrier = std::abs(p.omega_21) + std::abs(p.omega_c);
    const double envelope = std::max({p.gamma_tot(), carrier, 1e-300});
    double step_nat = 0.1 / envelope;
    if (beat > 0.0) {
        step_nat = std::min(step_nat, 0.02 * 2.0 * M_PI / beat);
    }
    return natural_to_ps(step_nat);
}

std::string correlation_csv(const CorrelationTrace& trace) {
    std::ostringstream os;
    os << "tau_prime_ps,re,im,in_causal_window\n";
    for (std::size_t k = 0; k < trace.tau_prime_ps.size(); ++k) {
        os << format_sci(trace.tau_prime_ps[k]) << ',' << format_sci(trace.values[k].real())
           << ',' << format_sci(trace.values[k].imag()) << ','
           << (trace.window_mask[k] ? 1 : 0) << '\n';
    }
    return os.str();
}

}  // namespace trps
