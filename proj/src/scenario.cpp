#include "trps/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "trps/basis.hpp"
#include "trps/correlations.hpp"
#include "trps/errors.hpp"
#include "trps/fano.hpp"
#include "trps/liouvillian.hpp"
#include "trps/peaks.hpp"
#include "trps/propagate.hpp"
#include "trps/rates.hpp"
#include "trps/spectrum.hpp"
#include "trps/units.hpp"

namespace trps {

namespace {

namespace fs = std::filesystem;

// Collects emitted files so a failed run can remove everything it wrote.
class ProductSink {
  public:
    explicit ProductSink(const std::string& out_dir) {
        created_root_ = !fs::exists(out_dir);
        fs::create_directories(out_dir);
        manifest_.root = out_dir;
    }

    void emit(const std::string& relpath, const std::string& content) {
        write_file((fs::path(manifest_.root) / relpath).string(), content);
        manifest_.entries.push_back(
            {relpath, fnv1a64(content), static_cast<std::uint64_t>(content.size())});
    }

    void discard_all() {
        for (const auto& e : manifest_.entries) {
            std::error_code ec;
            fs::remove(fs::path(manifest_.root) / e.relpath, ec);
        }
        if (created_root_) {
            std::error_code ec;
            fs::remove(manifest_.root, ec);
        }
    }

    const Manifest& manifest() const { return manifest_; }

  private:
    bool created_root_ = false;
    Manifest manifest_;
};

// Last time the emission source sits above 1e-6 of its maximum, plus a
// two-sample margin of the probe grid.
double source_horizon_ps(const SystemParams& p, const TrajectoryModes& modes) {
    double t_up = natural_to_ps(18.0 / modes.slowest_active_decay());
    for (int attempt = 0; attempt < 2; ++attempt) {
        const std::vector<double> grid = uniform_grid(t_up, 4097);
        const ExpectationTrajectory traj = modes.evaluate(grid);
        const std::vector<double> src = emission_source(p, traj);
        const double src_max = *std::max_element(src.begin(), src.end());
        if (!(src_max > 0.0)) return t_up;
        std::size_t last = 0;
        for (std::size_t j = 0; j < src.size(); ++j) {
            if (src[j] >= 1e-6 * src_max) last = j;
        }
        if (last + 1 < src.size()) {
            return grid[last] + 2.0 * (grid[1] - grid[0]);
        }
        t_up *= 2.0;
    }
    throw InvariantViolation("emission source does not decay below 1e-6 of its maximum");
}

ExpectationTrajectory stride_subsample(const ExpectationTrajectory& traj, int stride) {
    ExpectationTrajectory out;
    for (std::size_t j = 0; j < traj.size(); j += static_cast<std::size_t>(stride)) {
        out.times_ps.push_back(traj.times_ps[j]);
        out.n_cav.push_back(traj.n_cav[j]);
        out.n_tls.push_back(traj.n_tls[j]);
        out.coh.push_back(traj.coh[j]);
        out.coh_conj_pair.push_back(traj.coh_conj_pair[j]);
    }
    return out;
}

std::string trajectory_csv(const SystemParams& p, const ExpectationTrajectory& traj) {
    const std::vector<double> src = emission_source(p, traj);
    std::ostringstream os;
    os << "t_ps,n_cav,n_tls,re_coh,im_coh,source\n";
    for (std::size_t j = 0; j < traj.size(); ++j) {
        os << format_sci(traj.times_ps[j]) << ',' << format_sci(traj.n_cav[j]) << ','
           << format_sci(traj.n_tls[j]) << ',' << format_sci(traj.coh[j].real()) << ','
           << format_sci(traj.coh[j].imag()) << ',' << format_sci(src[j]) << '\n';
    }
    return os.str();
}

// gnuplot nonuniform-matrix layout: row 0 holds the column count and the
// output times, every following row is nu followed by S(nu, t).
std::string spectrogram_csv(const Spectrogram& spec) {
    std::ostringstream os;
    os << spec.t_grid_ps.size();
    for (double t : spec.t_grid_ps) os << ',' << format_sci(t);
    os << '\n';
    for (std::size_t i = 0; i < spec.nu_grid.size(); ++i) {
        os << format_sci(spec.nu_grid[i]);
        for (std::size_t k = 0; k < spec.t_grid_ps.size(); ++k) {
            os << ','
               << format_sci(spec.values(static_cast<Eigen::Index>(i),
                                         static_cast<Eigen::Index>(k)));
        }
        os << '\n';
    }
    return os.str();
}

std::string xy_csv(const std::string& header, const std::vector<double>& x,
                   const std::vector<double>& y) {
    std::ostringstream os;
    os << header << '\n';
    for (std::size_t k = 0; k < x.size(); ++k) {
        os << format_sci(x[k]) << ',' << format_sci(y[k]) << '\n';
    }
    return os.str();
}

std::string peak_csv(const PeakAnalysis& pa) {
    std::ostringstream os;
    os << "kind,position_ueV,height,prominence\n";
    for (const Peak& pk : pa.peaks) {
        os << "time_integrated," << format_sci(pk.position) << ',' << format_sci(pk.height)
           << ',' << format_sci(pk.prominence) << '\n';
    }
    return os.str();
}

std::string ei_csv(const EnergyIntegrated& ei, const std::vector<double>& rel_dev) {
    std::ostringstream os;
    os << "t_ps,quadrature,reference,rel_dev\n";
    for (std::size_t k = 0; k < ei.t_ps.size(); ++k) {
        os << format_sci(ei.t_ps[k]) << ',' << format_sci(ei.quadrature[k]) << ','
           << format_sci(ei.reference[k]) << ',' << format_sci(rel_dev[k]) << '\n';
    }
    return os.str();
}

std::vector<double> relative_deviation(const EnergyIntegrated& ei) {
    double ref_max = 0.0;
    for (double r : ei.reference) ref_max = std::max(ref_max, std::abs(r));
    std::vector<double> out(ei.t_ps.size(), 0.0);
    for (std::size_t k = 0; k < ei.t_ps.size(); ++k) {
        const double denom = std::max(std::abs(ei.reference[k]), 1e-3 * ref_max);
        if (denom > 0.0) out[k] = std::abs(ei.quadrature[k] - ei.reference[k]) / denom;
    }
    return out;
}

// Same sample spacing, twice the span, for the single identity refinement.
std::vector<double> widen_grid(const std::vector<double>& grid) {
    const std::size_t n = grid.size();
    const double h = grid[1] - grid[0];
    const double center = 0.5 * (grid.front() + grid.back());
    const double span = 0.5 * (grid.back() - grid.front());
    const std::size_t n2 = 2 * (n - 1) + 1;
    std::vector<double> out(n2);
    for (std::size_t k = 0; k < n2; ++k) {
        out[k] = center - 2.0 * span + h * static_cast<double>(k);
    }
    return out;
}

struct RunContext {
    const ScenarioConfig& cfg;
    ProductSink& sink;
    std::ostringstream meta;
};

void run_dynamics(RunContext& rc) {
    const ScenarioConfig& cfg = rc.cfg;
    const SystemParams& p = cfg.params;
    const LiouvillianMatrix liou = build_liouvillian(p, cfg.truncation, cfg.fano_ordering);
    const std::vector<double> weights = parse_initial_weights(cfg.initial_state);
    const QuantumState rho0{weights.empty() ? initial_state_excited(cfg.truncation)
                                            : initial_state_diagonal(weights, cfg.truncation),
                            cfg.truncation};
    const TrajectoryModes modes(liou, rho0);

    const RateEigenvalues rr = rate_eigenvalues(p);
    rc.meta << "gamma_plus_uev = " << format_sci(rr.gamma_plus.real()) << ' '
            << format_sci(rr.gamma_plus.imag()) << '\n';
    rc.meta << "gamma_minus_uev = " << format_sci(rr.gamma_minus.real()) << ' '
            << format_sci(rr.gamma_minus.imag()) << '\n';

    const double t_src = source_horizon_ps(p, modes);
    rc.meta << "source_horizon_ps = " << format_sci(t_src) << '\n';

    const std::vector<double> t_traj = uniform_grid(t_src, 1201);
    const ExpectationTrajectory traj_disp = modes.evaluate(t_traj);
    if (cfg.outputs.trajectory) {
        rc.sink.emit("trajectory.csv", trajectory_csv(p, traj_disp));
    }

    // Cavity-population beat against the detuned vacuum Rabi energy.
    const double rabi = std::sqrt(4.0 * p.g_mag * p.g_mag +
                                  p.omega_c21() * p.omega_c21());
    if (rabi > 0.0) {
        const double period_ps = 2.0 * M_PI * kHbarUevPs / rabi;
        rc.meta << "rabi_period_formula_ps = " << format_sci(period_ps) << '\n';
        const double window = std::min(t_src, 12.0 * period_ps);
        const ExpectationTrajectory osc = modes.evaluate(uniform_grid(window, 4001));
        const double nc_max = *std::max_element(osc.n_cav.begin(), osc.n_cav.end());
        if (nc_max > 0.0) {
            try {
                const PeakAnalysis pa = analyze_peaks(osc.times_ps, osc.n_cav);
                const std::size_t m = std::min<std::size_t>(pa.peaks.size(), 9);
                if (m >= 2) {
                    const double gap =
                        (pa.peaks[m - 1].position - pa.peaks[0].position) /
                        static_cast<double>(m - 1);
                    rc.meta << "rabi_period_measured_ps = " << format_sci(gap) << '\n';
                }
            } catch (const NoPeaks&) {
            }
        }
    }

    if (!cfg.outputs.correlation_times_ps.empty()) {
        const double h_base =
            cfg.grids.tau_step_ps > 0.0 ? cfg.grids.tau_step_ps : correlation_tau_step_ps(p);
        const double h_sub = correlation_tau_step_ps(p) / 4.0;
        const auto mult = std::max<long>(1, std::llround(h_base / h_sub));
        const double h_tau = static_cast<double>(mult) * h_sub;
        const double s_top =
            *std::max_element(cfg.outputs.correlation_times_ps.begin(),
                              cfg.outputs.correlation_times_ps.end());
        const double extent = s_top + 10.0 * h_tau;
        const auto n_c = static_cast<std::size_t>(std::ceil(extent / h_sub)) + 1;
        std::vector<double> t_c(n_c);
        for (std::size_t k = 0; k < n_c; ++k) t_c[k] = static_cast<double>(k) * h_sub;
        const ExpectationTrajectory traj_c = modes.evaluate(t_c);

        for (double s : cfg.outputs.correlation_times_ps) {
            const double s_snap = static_cast<double>(std::llround(s / h_sub)) * h_sub;
            const auto k_past =
                static_cast<long>(std::ceil((s_snap + 20.0 * h_tau) / h_tau));
            const auto k_future =
                static_cast<long>(std::ceil(cfg.grids.tau_future_ps / h_tau));
            std::vector<double> tau_prime;
            tau_prime.reserve(static_cast<std::size_t>(k_past + k_future + 1));
            for (long k = -k_past; k <= k_future; ++k) {
                tau_prime.push_back(static_cast<double>(k) * h_tau);
            }
            const CorrelationTrace trace =
                correlation_trace(p, traj_c, s_snap, tau_prime);
            const std::string tok = rate_token(s);
            rc.sink.emit("correlation_s" + tok + ".csv", correlation_csv(trace));
            rc.meta << "correlation_s" << tok
                    << "_snapped_ps = " << format_sci(s_snap) << '\n';
        }
    }

    const bool spectral = cfg.outputs.spectrogram || cfg.outputs.time_integrated ||
                          cfg.outputs.energy_integrated || cfg.outputs.peak_report;
    if (!spectral) return;

    for (double gs : cfg.gamma_s) {
        SpectrometerParams spm;
        spm.gamma_s = gs;
        spm.validate();
        const std::string tok = rate_token(gs);
        const double t_max = cfg.grids.t_max_ps > 0.0
                                 ? cfg.grids.t_max_ps
                                 : t_src + natural_to_ps(5.0 / gs);
        rc.meta << "t_max_gs" << tok << "_ps = " << format_sci(t_max) << '\n';

        std::vector<double> fine =
            fine_time_grid(p, spm, t_max, cfg.grids.fine_step_divisor);
        const double dt_ps = fine[1] - fine[0];
        while ((fine.size() - 1) % static_cast<std::size_t>(cfg.grids.fine_step_divisor)) {
            fine.push_back(static_cast<double>(fine.size()) * dt_ps);
        }
        const ExpectationTrajectory traj = modes.evaluate(fine);
        const std::vector<double> t_disp = uniform_grid(t_max, cfg.grids.t_outputs);
        const std::vector<double> nu_disp =
            default_nu_grid(p, spm, cfg.grids.nu_points, cfg.grids.nu_span_factor);

        for (double t : t_disp) {
            check_state_invariants(modes.state_at(t), {}, cfg.name + " output state");
        }

        const bool need_ti = cfg.outputs.time_integrated || cfg.outputs.peak_report;
        if (cfg.outputs.spectrogram || need_ti) {
            if (need_ti) check_time_integral_converged(p, spm, traj);
            AssemblyOptions opts;
            opts.workers = cfg.workers;
            opts.accumulate_time_integral = need_ti;
            const AssemblyResult res =
                assemble_spectrum(p, spm, traj, nu_disp, t_disp, opts);
            check_nonnegative(res.spectrogram, cfg.name);
            if (cfg.outputs.spectrogram) {
                rc.sink.emit("spectrogram_gs" + tok + ".csv",
                             spectrogram_csv(res.spectrogram));
            }
            if (cfg.outputs.time_integrated) {
                rc.sink.emit("time_integrated_gs" + tok + ".csv",
                             xy_csv("nu_ueV,intensity", nu_disp, res.time_integral));
            }
            if (cfg.outputs.peak_report) {
                PeakAnalysis pa;
                try {
                    pa = analyze_peaks(nu_disp, res.time_integral);
                } catch (const NoPeaks&) {
                }
                rc.sink.emit("peak_report_gs" + tok + ".csv", peak_csv(pa));
                rc.meta << "ti_peak_count_gs" << tok << " = " << pa.peaks.size() << '\n';
                if (pa.peaks.size() >= 2) {
                    rc.meta << "ti_doublet_sep_gs" << tok
                            << "_uev = " << format_sci(pa.doublet_separation()) << '\n';
                }
            }
        }

        if (cfg.outputs.energy_integrated) {
            const ExpectationTrajectory* tp = &traj;
            ExpectationTrajectory sub;
            if (cfg.grids.fine_step_divisor > 1) {
                sub = stride_subsample(traj, cfg.grids.fine_step_divisor);
                tp = &sub;
            }
            AssemblyOptions wopts;
            wopts.workers = cfg.workers;
            std::vector<double> grid_w = energy_identity_grid(p, spm, t_disp[1]);
            Spectrogram spec_w = trps(p, spm, *tp, grid_w, t_disp, wopts);
            EnergyIntegrated ei = energy_integrated_intensity(spec_w, p, spm, *tp);
            std::vector<double> dev = relative_deviation(ei);
            double dev_max = *std::max_element(dev.begin(), dev.end());
            if (dev_max > 0.008) {
                grid_w = widen_grid(grid_w);
                spec_w = trps(p, spm, *tp, grid_w, t_disp, wopts);
                ei = energy_integrated_intensity(spec_w, p, spm, *tp);
                dev = relative_deviation(ei);
                dev_max = *std::max_element(dev.begin(), dev.end());
            }
            if (dev_max > 0.01) {
                std::ostringstream os;
                os << "energy integration identity violated for gamma_s = " << gs
                   << ": max relative deviation " << dev_max;
                throw InvariantViolation(os.str());
            }
            rc.sink.emit("energy_integrated_gs" + tok + ".csv", ei_csv(ei, dev));
            rc.meta << "ei_max_rel_dev_gs" << tok << " = " << format_sci(dev_max) << '\n';
        }
    }
}

void run_fano_probe(RunContext& rc) {
    const FanoProbeSpec& fp = rc.cfg.fano;
    const double g_mag = rc.cfg.params.g_mag;
    const double gs_top = *std::max_element(fp.gamma_s.begin(), fp.gamma_s.end());
    const double span = fp.nu_span > 0.0 ? fp.nu_span : g_mag + 2.0 * gs_top;
    std::vector<double> nu(static_cast<std::size_t>(fp.nu_points));
    for (int k = 0; k < fp.nu_points; ++k) {
        nu[static_cast<std::size_t>(k)] =
            -span + 2.0 * span * static_cast<double>(k) /
                        static_cast<double>(fp.nu_points - 1);
    }
    // Quadrature is spot-checked on a sparse subset; the dense sweep uses
    // the closed form the spot checks validate.
    std::vector<double> nu_spots;
    const int spot_stride = std::max(1, (fp.nu_points - 1) / 8);
    for (int k = 0; k < fp.nu_points; k += spot_stride) {
        nu_spots.push_back(nu[static_cast<std::size_t>(k)]);
    }

    std::ostringstream probe, disc;
    probe << "gamma_s,phi,nu_ueV,re,im,abs2\n";
    disc << "gamma_s,phi,max_abs_quad_minus_closed,max_abs_lorentzian_minus_closed,"
            "doublet_sep_ueV\n";
    for (double gs : fp.gamma_s) {
        for (double phi : fp.phi) {
            std::vector<double> abs2(nu.size());
            for (std::size_t k = 0; k < nu.size(); ++k) {
                const cplx f = fano_closed_form(g_mag, gs, phi, nu[k]);
                abs2[k] = std::norm(f);
                probe << format_sci(gs) << ',' << format_sci(phi) << ','
                      << format_sci(nu[k]) << ',' << format_sci(f.real()) << ','
                      << format_sci(f.imag()) << ',' << format_sci(abs2[k]) << '\n';
            }
            const FanoProbeResult spots = fano_probe(g_mag, gs, phi, nu_spots);
            double dev_quad = 0.0;
            for (std::size_t k = 0; k < nu_spots.size(); ++k) {
                const cplx c = fano_closed_form(g_mag, gs, phi, nu_spots[k]);
                dev_quad = std::max(dev_quad, std::abs(spots.f[k] - c));
            }
            double dev_lor = 0.0;
            for (double v : nu) {
                dev_lor = std::max(dev_lor, std::abs(fano_lorentzian_form(g_mag, gs, phi, v) -
                                                     fano_closed_form(g_mag, gs, phi, v)));
            }
            double sep = 0.0;
            try {
                const PeakAnalysis pa = analyze_peaks(nu, abs2);
                if (pa.peaks.size() >= 2) sep = pa.doublet_separation();
            } catch (const NoPeaks&) {
            }
            disc << format_sci(gs) << ',' << format_sci(phi) << ','
                 << format_sci(dev_quad) << ',' << format_sci(dev_lor) << ','
                 << format_sci(sep) << '\n';
        }
    }
    rc.sink.emit("fano_probe.csv", probe.str());
    rc.sink.emit("fano_discrepancy.csv", disc.str());
}

void run_products(const ScenarioConfig& cfg, ProductSink& sink) {
    RunContext rc{cfg, sink, {}};
    sink.emit("config_echo.ini", emit_config(cfg));
    rc.meta << "scenario = " << cfg.name << '\n';
    rc.meta << "truncation = " << truncation_label(cfg.truncation) << '\n';
    rc.meta << "fano_ordering = " << fano_ordering_label(cfg.fano_ordering) << '\n';
    rc.meta << "gamma_tot_uev = " << format_sci(cfg.params.gamma_tot()) << '\n';

    const bool wants_dynamics =
        cfg.outputs.trajectory || cfg.outputs.spectrogram || cfg.outputs.time_integrated ||
        cfg.outputs.energy_integrated || cfg.outputs.peak_report ||
        !cfg.outputs.correlation_times_ps.empty();
    if (wants_dynamics) run_dynamics(rc);
    if (cfg.outputs.fano_probe) run_fano_probe(rc);

    sink.emit("summary.meta", rc.meta.str());
    sink.emit("manifest.txt", sink.manifest().serialize());
}

}  // namespace

Manifest run_scenario(const ScenarioConfig& cfg, const std::string& out_dir) {
    cfg.validate();
    ProductSink sink(out_dir);
    try {
        run_products(cfg, sink);
    } catch (...) {
        sink.discard_all();
        throw;
    }
    return sink.manifest();
}

namespace {

struct PlannedScript {
    std::string relpath;
    std::string body;
};

std::string plot_preamble() {
    return "set datafile separator comma\nset grid\n";
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool starts_with(const std::string& s, const std::string& prefix) {
    return s.compare(0, prefix.size(), prefix) == 0;
}

}  // namespace

Manifest emit_plot_scripts(const Manifest& manifest) {
    if (manifest.entries.empty()) {
        std::cerr << "warning: empty manifest, no plot scripts emitted\n";
        return manifest;
    }
    std::vector<PlannedScript> scripts;
    for (const ManifestEntry& e : manifest.entries) {
        if (!ends_with(e.relpath, ".csv")) continue;
        const std::string stem = e.relpath.substr(0, e.relpath.size() - 4);
        std::ostringstream body;
        body << plot_preamble();
        if (e.relpath == "trajectory.csv") {
            body << "set xlabel 't (ps)'\n"
                 << "plot 'trajectory.csv' skip 1 using 1:2 with lines title 'n_{cav}', \\\n"
                 << "     '' skip 1 using 1:3 with lines title 'n_{tls}', \\\n"
                 << "     '' skip 1 using 1:6 with lines title 'source'\n";
        } else if (starts_with(e.relpath, "spectrogram_gs")) {
            body << "set view map\nset xlabel 't (ps)'\nset ylabel 'nu (ueV)'\n"
                 << "splot '" << e.relpath << "' nonuniform matrix with image notitle\n";
        } else if (starts_with(e.relpath, "time_integrated_gs")) {
            body << "set xlabel 'nu (ueV)'\nset ylabel 'intensity'\n"
                 << "plot '" << e.relpath << "' skip 1 using 1:2 with lines notitle\n";
        } else if (starts_with(e.relpath, "energy_integrated_gs")) {
            body << "set xlabel 't (ps)'\n"
                 << "plot '" << e.relpath
                 << "' skip 1 using 1:2 with lines title 'quadrature', \\\n"
                 << "     '' skip 1 using 1:3 with points title 'reference'\n";
        } else if (starts_with(e.relpath, "correlation_s")) {
            if (!manifest.has("trajectory.csv")) {
                throw Error("plot script for " + e.relpath +
                            " references trajectory.csv, absent from the manifest");
            }
            body << "set multiplot layout 2,1\nset xlabel 'tau'' (ps)'\n"
                 << "plot '" << e.relpath
                 << "' skip 1 using 1:2 with lines title 're', \\\n"
                 << "     '' skip 1 using 1:3 with lines title 'im'\n"
                 << "set xlabel 't (ps)'\n"
                 << "plot 'trajectory.csv' skip 1 using 1:2 with lines title 'n_{cav}'\n"
                 << "unset multiplot\n";
        } else if (e.relpath == "fano_probe.csv") {
            body << "set xlabel 'nu (ueV)'\nset ylabel '|F|^2'\n"
                 << "plot 'fano_probe.csv' skip 1 using 3:6 with dots notitle\n";
        } else {
            continue;
        }
        scripts.push_back({stem + ".plot", body.str()});
    }

    Manifest out = manifest;
    for (const PlannedScript& s : scripts) {
        write_file((fs::path(out.root) / s.relpath).string(), s.body);
        out.entries.push_back(
            {s.relpath, fnv1a64(s.body), static_cast<std::uint64_t>(s.body.size())});
    }
    for (ManifestEntry& e : out.entries) {
        if (e.relpath != "manifest.txt") continue;
        Manifest others;
        others.root = out.root;
        for (const ManifestEntry& o : out.entries) {
            if (o.relpath != "manifest.txt") others.entries.push_back(o);
        }
        const std::string text = others.serialize();
        write_file((fs::path(out.root) / e.relpath).string(), text);
        e.hash = fnv1a64(text);
        e.bytes = text.size();
    }
    return out;
}

}  // namespace trps
