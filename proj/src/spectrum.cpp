#include "trps/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "trps/detail/phi.hpp"
#include "trps/errors.hpp"
#include "trps/units.hpp"

namespace trps {

namespace {

constexpr double kSourceFloorFrac = 1e-6;   // tail criterion on the source
constexpr double kFilterTails = 5.0;        // spectrometer memories past decay

struct StepCoef {
    cplx e;    // e^{alpha dt}
    cplx c0;   // dt * dphi1(alpha dt), weight of the left source sample
    cplx c1;   // dt * phi2(alpha dt), weight of the right source sample
};

StepCoef step_coef(const cplx& alpha, double dt) {
    const cplx z = alpha * dt;
    return {std::exp(z), dt * (detail::phi1(z) - detail::phi2(z)), dt * detail::phi2(z)};
}

// Combined pole sources u_P, u_M: trajectory expectations folded with the
// channel weights and the kernel pole decomposition.
struct PoleSources {
    std::vector<cplx> up;
    std::vector<cplx> um;
};

PoleSources pole_sources(const SystemParams& p, const SpectralKernelSet& ker,
                         const ExpectationTrajectory& traj) {
    const ChannelWeights x = channel_weights(p);
    const std::size_t n = traj.size();
    PoleSources out;
    out.up.assign(n, cplx(0.0, 0.0));
    out.um.assign(n, cplx(0.0, 0.0));

    struct Term {
        cplx weight;        // chi_{mu,mu'}
        KernelIndex k1;     // kernel (mu', 1)
        KernelIndex k2;     // kernel (mu', 2)
        int source;         // channel mu: 0 = sigma, 1 = a
    };
    const Term terms[4] = {
        {x.sigma_sigma, KernelIndex::sigma_1, KernelIndex::sigma_2, 0},
        {x.a_a, KernelIndex::a_1, KernelIndex::a_2, 1},
        {x.sigma_a, KernelIndex::a_1, KernelIndex::a_2, 0},
        {x.a_sigma, KernelIndex::sigma_1, KernelIndex::sigma_2, 1},
    };
    for (const Term& tm : terms) {
        if (std::abs(tm.weight) == 0.0) continue;
        const cplx wp1 = tm.weight * ker.wp(tm.k1);
        const cplx wm1 = tm.weight * ker.wm(tm.k1);
        const cplx wp2 = tm.weight * ker.wp(tm.k2);
        const cplx wm2 = tm.weight * ker.wm(tm.k2);
        for (std::size_t j = 0; j < n; ++j) {
            // E_{mu,1}, E_{mu,2}: <O_mu^dag sigma_->, <O_mu^dag a> sources.
            const cplx e1 = tm.source == 0 ? cplx(traj.n_tls[j], 0.0)
                                           : traj.coh_conj_pair[j];
            const cplx e2 = tm.source == 0 ? traj.coh[j] : cplx(traj.n_cav[j], 0.0);
            out.up[j] += wp1 * e1 + wp2 * e2;
            out.um[j] += wm1 * e1 + wm2 * e2;
        }
    }
    return out;
}

// Running spectrometer-window integral of one pole source at pole -Gs,
// B[0] = 0, B[j+1] = e^{-Gs dt} B[j] + c0 u[j] + c1 u[j+1].
std::vector<cplx> window_integral(const std::vector<cplx>& u, double gamma_s, double dt) {
    const StepCoef cb = step_coef(cplx(-gamma_s, 0.0), dt);
    std::vector<cplx> b(u.size(), cplx(0.0, 0.0));
    for (std::size_t j = 0; j + 1 < u.size(); ++j) {
        b[j + 1] = cb.e * b[j] + cb.c0 * u[j] + cb.c1 * u[j + 1];
    }
    return b;
}

struct OutputColumn {
    std::size_t traj_index;
    std::size_t column;
};

}  // namespace

ChannelWeights channel_weights(const SystemParams& p) {
    const cplx gf = p.gamma_f();
    ChannelWeights w;
    w.sigma_sigma = cplx(p.gamma / M_PI, 0.0);
    w.a_a = cplx(p.kappa / M_PI, 0.0);
    w.sigma_a = gf / M_PI;
    w.a_sigma = std::conj(gf) / M_PI;
    return w;
}

double Spectrogram::max_value() const {
    return values.size() == 0 ? 0.0 : values.maxCoeff();
}

double Spectrogram::min_value() const {
    return values.size() == 0 ? 0.0 : values.minCoeff();
}

void check_nonnegative(const Spectrogram& spec, const std::string& context) {
    const double mx = spec.max_value();
    const double mn = spec.min_value();
    if (mn < -1e-6 * std::max(mx, 0.0)) {
        std::ostringstream os;
        os << "spectrum dips negative";
        if (!context.empty()) os << " (" << context << ")";
        os << ": min " << mn << " vs max " << mx;
        throw InvariantViolation(os.str());
    }
}

double assembly_step_rule_nat(const SystemParams& p, const SpectrometerParams& spm) {
    const RateEigenvalues r = rate_eigenvalues(p);
    double rule = 0.1 / std::max(p.gamma_tot(), spm.gamma_s);
    const double beat = std::abs(r.difference().imag());
    if (beat > 1e-12) {
        rule = std::min(rule, 0.02 * 2.0 * M_PI / beat);
    }
    return rule;
}

std::vector<double> fine_time_grid(const SystemParams& p, const SpectrometerParams& spm,
                                   double t_max_ps, int divisor) {
    if (divisor < 1) throw ConfigError("fine step divisor must be at least 1");
    if (!(t_max_ps > 0.0)) throw Error("time horizon must be positive");
    const double dt_ps = natural_to_ps(assembly_step_rule_nat(p, spm)) / divisor;
    const auto n = static_cast<std::size_t>(std::ceil(t_max_ps / dt_ps)) + 1;
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = static_cast<double>(k) * dt_ps;
    return out;
}

std::vector<double> default_nu_grid(const SystemParams& p, const SpectrometerParams& spm,
                                    int n_points, double span_factor) {
    if (n_points < 3) throw ConfigError("frequency grid needs at least 3 points");
    const double band = std::max({2.0 * p.g_mag, std::abs(p.omega_c21()) + p.gamma_tot(),
                                  2.0 * spm.gamma_s});
    const double center = 0.5 * (p.omega_21 + p.omega_c);
    std::vector<double> out(static_cast<std::size_t>(n_points));
    const double lo = center - span_factor * band;
    const double hi = center + span_factor * band;
    for (int k = 0; k < n_points; ++k) {
        out[static_cast<std::size_t>(k)] =
            lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n_points - 1);
    }
    return out;
}

std::vector<double> emission_source(const SystemParams& p,
                                    const ExpectationTrajectory& traj) {
    const cplx gf = p.gamma_f();
    std::vector<double> src(traj.size());
    for (std::size_t j = 0; j < traj.size(); ++j) {
        src[j] = p.kappa * traj.n_cav[j] + p.gamma * traj.n_tls[j] +
                 2.0 * (gf * traj.coh[j]).real();
    }
    return src;
}

AssemblyResult assemble_spectrum(const SystemParams& p, const SpectrometerParams& spm,
                                 const ExpectationTrajectory& traj,
                                 const std::vector<double>& nu_grid,
                                 const std::vector<double>& t_grid_ps,
                                 const AssemblyOptions& opts) {
    p.validate();
    spm.validate();
    if (traj.size() < 2) throw Error("trajectory too short for assembly");
    if (nu_grid.empty()) throw Error("frequency grid is empty");
    if (std::abs(traj.times_ps.front()) > 1e-12) {
        throw Error("assembly trajectory must start at t = 0");
    }
    const double dt_ps = traj.step_ps();
    const double dt = ps_to_natural(dt_ps);
    const double rule = assembly_step_rule_nat(p, spm);
    if (dt > rule * (1.0 + 1e-6)) {
        std::ostringstream os;
        os << "trajectory step " << dt_ps << " ps exceeds the assembly rule "
           << natural_to_ps(rule) << " ps";
        throw TrajectoryTooCoarse(os.str());
    }

    const std::size_t n = traj.size();
    std::vector<OutputColumn> columns;
    columns.reserve(t_grid_ps.size());
    std::vector<double> snapped(t_grid_ps.size());
    for (std::size_t k = 0; k < t_grid_ps.size(); ++k) {
        const double t = t_grid_ps[k];
        if (t < -1e-12) throw OutOfTrajectory("output time before t = 0");
        const auto j = static_cast<std::size_t>(std::llround(std::max(t, 0.0) / dt_ps));
        if (j >= n) {
            std::ostringstream os;
            os << "output time " << t << " ps beyond the trajectory horizon "
               << traj.times_ps.back() << " ps";
            throw OutOfTrajectory(os.str());
        }
        columns.push_back({j, k});
        snapped[k] = static_cast<double>(j) * dt_ps;
    }
    std::sort(columns.begin(), columns.end(),
              [](const OutputColumn& a, const OutputColumn& b) {
                  return a.traj_index < b.traj_index;
              });

    const SpectralKernelSet ker(p, spm);
    const PoleSources src = pole_sources(p, ker, traj);
    const double gs = spm.gamma_s;
    const std::vector<cplx> bp = window_integral(src.up, gs, dt);
    const std::vector<cplx> bm = window_integral(src.um, gs, dt);

    const cplx gamma_p = ker.rates().gamma_plus;
    const cplx gamma_m = ker.rates().gamma_minus;
    const double danger_scale =
        1e-6 * std::max({gs, std::abs(gamma_p), std::abs(gamma_m)});

    AssemblyResult result;
    result.spectrogram.nu_grid = nu_grid;
    result.spectrogram.t_grid_ps = snapped;
    result.spectrogram.gamma_s = gs;
    result.spectrogram.values.setZero(static_cast<Eigen::Index>(nu_grid.size()),
                                      static_cast<Eigen::Index>(t_grid_ps.size()));
    if (opts.accumulate_time_integral) {
        result.time_integral.assign(nu_grid.size(), 0.0);
    }

    const StepCoef cb = step_coef(cplx(-gs, 0.0), dt);
    const cplx psi1 = detail::dphi1(cplx(-gs * dt, 0.0));
    const cplx psi2 = detail::psi2(cplx(-gs * dt, 0.0));
    const cplx psi3 = detail::psi3(cplx(-gs * dt, 0.0));

    auto run_range = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t ai = lo; ai < hi; ++ai) {
            const double nu = nu_grid[ai];
            const cplx i_nu(0.0, nu);
            const cplx xp = i_nu + gamma_p + 0.5 * gs;
            const cplx xm = i_nu + gamma_m + 0.5 * gs;
            const StepCoef cp = step_coef(i_nu + gamma_p - 0.5 * gs, dt);
            const StepCoef cm = step_coef(i_nu + gamma_m - 0.5 * gs, dt);
            const bool danger_p = std::abs(xp) < danger_scale;
            const bool danger_m = std::abs(xm) < danger_scale;
            const cplx inv_xp = danger_p ? cplx(0.0, 0.0) : gs / xp;
            const cplx inv_xm = danger_m ? cplx(0.0, 0.0) : gs / xm;

            cplx hp(0.0, 0.0), hm(0.0, 0.0);
            cplx w1p(0.0, 0.0), w2p(0.0, 0.0), w1m(0.0, 0.0), w2m(0.0, 0.0);
            double prev = 0.0;
            double ti = 0.0;
            std::size_t col = 0;
            while (col < columns.size() && columns[col].traj_index == 0) {
                result.spectrogram.values(static_cast<Eigen::Index>(ai),
                                          static_cast<Eigen::Index>(columns[col].column)) = 0.0;
                ++col;
            }
            for (std::size_t j = 0; j + 1 < n; ++j) {
                const cplx u0p = src.up[j], u1p = src.up[j + 1];
                const cplx u0m = src.um[j], u1m = src.um[j + 1];
                if (danger_p) {
                    w2p = cb.e * (w2p + 2.0 * dt * w1p + dt * dt * bp[j]) +
                          dt * dt * dt * (u0p * psi2 + (u1p - u0p) * (psi2 - psi3));
                    w1p = cb.e * (w1p + dt * bp[j]) +
                          dt * dt * (u0p * psi1 + (u1p - u0p) * (psi1 - psi2));
                }
                if (danger_m) {
                    w2m = cb.e * (w2m + 2.0 * dt * w1m + dt * dt * bm[j]) +
                          dt * dt * dt * (u0m * psi2 + (u1m - u0m) * (psi2 - psi3));
                    w1m = cb.e * (w1m + dt * bm[j]) +
                          dt * dt * (u0m * psi1 + (u1m - u0m) * (psi1 - psi2));
                }
                hp = cp.e * hp + cp.c0 * u0p + cp.c1 * u1p;
                hm = cm.e * hm + cm.c0 * u0m + cm.c1 * u1m;
                const cplx tp = danger_p ? gs * (w1p + 0.5 * xp * w2p)
                                         : inv_xp * (hp - bp[j + 1]);
                const cplx tm = danger_m ? gs * (w1m + 0.5 * xm * w2m)
                                         : inv_xm * (hm - bm[j + 1]);
                const double val = (tp + tm).real();
                if (opts.accumulate_time_integral) {
                    ti += 0.5 * (prev + val) * dt;
                    prev = val;
                }
                while (col < columns.size() && columns[col].traj_index == j + 1) {
                    result.spectrogram.values(
                        static_cast<Eigen::Index>(ai),
                        static_cast<Eigen::Index>(columns[col].column)) = val;
                    ++col;
                }
            }
            if (opts.accumulate_time_integral) {
                result.time_integral[ai] = ti;
            }
        }
    };

    const int workers = std::max(
        1, std::min(opts.workers, static_cast<int>(nu_grid.size())));
    if (workers == 1) {
        run_range(0, nu_grid.size());
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        const std::size_t chunk =
            (nu_grid.size() + static_cast<std::size_t>(workers) - 1) /
            static_cast<std::size_t>(workers);
        for (int w = 0; w < workers; ++w) {
            const std::size_t lo =
                std::min(static_cast<std::size_t>(w) * chunk, nu_grid.size());
            const std::size_t hi = std::min(lo + chunk, nu_grid.size());
            if (lo >= hi) break;
            pool.emplace_back(run_range, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    return result;
}

Spectrogram trps(const SystemParams& p, const SpectrometerParams& spm,
                 const ExpectationTrajectory& traj,
                 const std::vector<double>& nu_grid,
                 const std::vector<double>& t_grid_ps,
                 const AssemblyOptions& opts) {
    AssemblyOptions local = opts;
    local.accumulate_time_integral = false;
    return assemble_spectrum(p, spm, traj, nu_grid, t_grid_ps, local).spectrogram;
}

void check_time_integral_converged(const SystemParams& p, const SpectrometerParams& spm,
                                   const ExpectationTrajectory& traj) {
    const std::vector<double> src = emission_source(p, traj);
    const double src_max = *std::max_element(src.begin(), src.end());
    if (!(src_max > 0.0)) {
        throw NotConverged("emission source vanishes along the trajectory");
    }
    std::size_t last = 0;
    for (std::size_t j = 0; j < src.size(); ++j) {
        if (src[j] >= kSourceFloorFrac * src_max) last = j;
    }
    const double tail_ps = traj.times_ps.back() - traj.times_ps[last];
    const double need_ps = kFilterTails * kHbarUevPs / spm.gamma_s;
    if (tail_ps < need_ps * (1.0 - 1e-9)) {
        std::ostringstream os;
        os << "time integral not converged: source still at "
           << src[src.size() - 1] / src_max << " of max, tail " << tail_ps
           << " ps of " << need_ps << " ps needed";
        throw NotConverged(os.str());
    }
}

std::vector<double> time_integrated_spectrum(const SystemParams& p,
                                             const SpectrometerParams& spm,
                                             const ExpectationTrajectory& traj,
                                             const std::vector<double>& nu_grid,
                                             const AssemblyOptions& opts) {
    check_time_integral_converged(p, spm, traj);
    AssemblyOptions local = opts;
    local.accumulate_time_integral = true;
    const std::vector<double> t_end{traj.times_ps.back()};
    return assemble_spectrum(p, spm, traj, nu_grid, t_end, local).time_integral;
}

std::vector<double> energy_integrated_reference(const SystemParams& p,
                                                const SpectrometerParams& spm,
                                                const ExpectationTrajectory& traj) {
    if (traj.size() < 2) throw Error("trajectory too short for the reference");
    const std::vector<double> src = emission_source(p, traj);
    const double dt = ps_to_natural(traj.step_ps());
    const double gs = spm.gamma_s;
    const StepCoef cb = step_coef(cplx(-gs, 0.0), dt);
    std::vector<double> out(src.size(), 0.0);
    cplx acc(0.0, 0.0);
    for (std::size_t j = 0; j + 1 < src.size(); ++j) {
        acc = cb.e * acc + cb.c0 * src[j] + cb.c1 * src[j + 1];
        out[j + 1] = gs * acc.real();
    }
    return out;
}

EnergyIntegrated energy_integrated_intensity(const Spectrogram& spec,
                                             const SystemParams& p,
                                             const SpectrometerParams& spm,
                                             const ExpectationTrajectory& traj) {
    if (spec.nu_grid.size() < 3) throw GridTooNarrow("frequency grid too small");
    for (std::size_t k = 1; k < spec.nu_grid.size(); ++k) {
        if (spec.nu_grid[k] <= spec.nu_grid[k - 1]) {
            throw Error("frequency grid must be ascending");
        }
    }
    const double band = std::max({spm.gamma_s, p.gamma_tot(), 2.0 * p.g_mag,
                                  std::abs(p.omega_c21())});
    const double center = 0.5 * (p.omega_21 + p.omega_c);
    if (spec.nu_grid.front() > center - 12.0 * band ||
        spec.nu_grid.back() < center + 12.0 * band) {
        std::ostringstream os;
        os << "frequency grid [" << spec.nu_grid.front() << ", " << spec.nu_grid.back()
           << "] ueV does not span +-" << 12.0 * band << " ueV around " << center
           << " ueV";
        throw GridTooNarrow(os.str());
    }

    const std::vector<double> ref_full = energy_integrated_reference(p, spm, traj);
    const double dt_ps = traj.step_ps();

    EnergyIntegrated out;
    out.t_ps = spec.t_grid_ps;
    out.quadrature.resize(spec.t_grid_ps.size());
    out.reference.resize(spec.t_grid_ps.size());
    for (std::size_t k = 0; k < spec.t_grid_ps.size(); ++k) {
        double q = 0.0;
        for (std::size_t a = 0; a + 1 < spec.nu_grid.size(); ++a) {
            const double h = spec.nu_grid[a + 1] - spec.nu_grid[a];
            q += 0.5 * h *
                 (spec.values(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(k)) +
                  spec.values(static_cast<Eigen::Index>(a + 1),
                              static_cast<Eigen::Index>(k)));
        }
        out.quadrature[k] = q;
        const auto j = static_cast<std::size_t>(std::llround(spec.t_grid_ps[k] / dt_ps));
        if (j >= ref_full.size() ||
            std::abs(spec.t_grid_ps[k] - static_cast<double>(j) * dt_ps) > 1e-6 * dt_ps) {
            throw OutOfTrajectory("spectrogram time not on the trajectory grid");
        }
        out.reference[k] = ref_full[j];
    }
    return out;
}

std::vector<double> energy_identity_grid(const SystemParams& p,
                                         const SpectrometerParams& spm,
                                         double t_first_ps) {
    if (!(t_first_ps > 0.0)) throw Error("first output time must be positive");
    const RateEigenvalues r = rate_eigenvalues(p);
    const double w_est = 2.0 * p.gamma_tot() + spm.gamma_s + 2.0 * p.g_mag +
                         std::abs(p.omega_c21());
    const double span = std::max(30.0 * w_est, 150.0 * kHbarUevPs / t_first_ps);
    const double w_narrow =
        0.5 * spm.gamma_s +
        std::min(std::abs(r.gamma_plus.real()), std::abs(r.gamma_minus.real()));
    const double t_osc_ps = 7.0 * kHbarUevPs / w_narrow;
    double h = w_narrow / 8.0;
    if (t_first_ps < t_osc_ps) {
        h = std::min(h, M_PI * w_narrow / 28.0);
    }
    auto npts = static_cast<long>(2.0 * span / h) | 1L;
    npts = std::max(601L, std::min(npts, 120001L));
    const double center = 0.5 * (p.omega_21 + p.omega_c);
    std::vector<double> out(static_cast<std::size_t>(npts));
    for (long k = 0; k < npts; ++k) {
        out[static_cast<std::size_t>(k)] =
            center - span + 2.0 * span * static_cast<double>(k) /
                                static_cast<double>(npts - 1);
    }
    return out;
}

double tls_trps_value(const SystemParams& p, const SpectrometerParams& spm,
                      double nu, double t_ps) {
    const double t = ps_to_natural(t_ps);
    const double gs = spm.gamma_s;
    const cplx a = cplx(0.0, nu - p.omega_21) + 0.5 * p.gamma - p.gamma_ph - 0.5 * gs;
    const cplx c(p.gamma - gs, 0.0);
    const cplx z1 = a * t;
    const cplx z2 = c * t;
    cplx dd;
    if (std::abs(z1 - z2) < 1e-5 * std::max(1.0, std::abs(z1))) {
        dd = detail::dphi1(0.5 * (z1 + z2));
    } else {
        dd = (detail::phi1(z1) - detail::phi1(z2)) / (z1 - z2);
    }
    return (p.gamma / M_PI) * gs * std::exp(-p.gamma * t) * (t * t * dd).real();
}

Spectrogram tls_trps(const SystemParams& p, const SpectrometerParams& spm,
                     const std::vector<double>& nu_grid,
                     const std::vector<double>& t_grid_ps) {
    Spectrogram out;
    out.nu_grid = nu_grid;
    out.t_grid_ps = t_grid_ps;
    out.gamma_s = spm.gamma_s;
    out.values.setZero(static_cast<Eigen::Index>(nu_grid.size()),
                       static_cast<Eigen::Index>(t_grid_ps.size()));
    for (std::size_t a = 0; a < nu_grid.size(); ++a) {
        for (std::size_t k = 0; k < t_grid_ps.size(); ++k) {
            out.values(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(k)) =
                tls_trps_value(p, spm, nu_grid[a], t_grid_ps[k]);
        }
    }
    return out;
}

std::vector<double> tls_time_integrated(const SystemParams& p,
                                        const SpectrometerParams& spm,
                                        const std::vector<double>& nu_grid) {
    const double w = 0.5 * (p.gamma + spm.gamma_s) + p.gamma_ph;
    std::vector<double> out(nu_grid.size());
    for (std::size_t a = 0; a < nu_grid.size(); ++a) {
        const double d = nu_grid[a] - p.omega_21;
        out[a] = (1.0 / M_PI) * w / (d * d + w * w);
    }
    return out;
}

std::vector<double> tls_energy_integrated(const SystemParams& p,
                                          const SpectrometerParams& spm,
                                          const std::vector<double>& t_grid_ps) {
    const double g = p.gamma;
    const double gs = spm.gamma_s;
    std::vector<double> out(t_grid_ps.size());
    const bool confluent = std::abs(g - gs) < 1e-9 * std::max(g, gs);
    for (std::size_t k = 0; k < t_grid_ps.size(); ++k) {
        const double t = ps_to_natural(t_grid_ps[k]);
        if (confluent) {
            out[k] = g * g * t * std::exp(-g * t);
        } else {
            out[k] = g * gs * (std::exp(-gs * t) - std::exp(-g * t)) / (g - gs);
        }
    }
    return out;
}

}  // namespace trps
