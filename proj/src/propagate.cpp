#include "trps/propagate.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <unsupported/Eigen/MatrixFunctions>

#include "trps/errors.hpp"
#include "trps/units.hpp"

namespace trps {

namespace {

void check_uniform(const std::vector<double>& times_ps) {
    if (times_ps.empty()) throw Error("time grid is empty");
    if (times_ps.front() < 0.0) throw Error("time grid starts before t = 0");
    if (times_ps.size() < 2) return;
    const double dt = times_ps[1] - times_ps[0];
    if (dt <= 0.0) throw Error("time grid is not ascending");
    for (std::size_t k = 1; k + 1 < times_ps.size(); ++k) {
        const double step = times_ps[k + 1] - times_ps[k];
        if (std::abs(step - dt) > 1e-9 * std::max(1.0, dt)) {
            throw Error("time grid is not uniform");
        }
    }
}

}  // namespace

void check_state_invariants(const QuantumState& state,
                            const StateCheckOptions& opts,
                            const std::string& context) {
    const std::string where = context.empty() ? "" : " (" + context + ")";
    const Matrix& rho = state.rho;
    const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (herm > opts.herm_tol) {
        std::ostringstream os;
        os << "density matrix not Hermitian" << where << ": deviation " << herm;
        throw InvariantViolation(os.str());
    }
    const double tr_dev = std::abs(rho.trace() - cplx(1.0, 0.0));
    if (tr_dev > opts.trace_tol) {
        std::ostringstream os;
        os << "density matrix trace deviates from 1" << where << ": " << tr_dev;
        throw InvariantViolation(os.str());
    }
    const Matrix sym = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -opts.positivity_tol) {
        std::ostringstream os;
        os << "density matrix not positive" << where << ": min eigenvalue " << min_eig;
        throw InvariantViolation(os.str());
    }
}

double ExpectationTrajectory::step_ps() const {
    if (times_ps.size() < 2) throw Error("trajectory has no step");
    return times_ps[1] - times_ps[0];
}

double max_rate(const SystemParams& p) {
    return std::max({p.kappa, p.gamma, p.gamma_ph, 2.0 * p.g_mag,
                     std::abs(p.omega_c21())});
}

std::vector<QuantumState> propagate(const LiouvillianMatrix& liou,
                                    const SystemParams& p,
                                    const QuantumState& rho0,
                                    const std::vector<double>& times_ps) {
    check_uniform(times_ps);
    if (rho0.basis_tag != liou.truncation) {
        throw Error("initial state truncation does not match the generator");
    }

    const int d = basis_dim(liou.truncation);
    std::vector<QuantumState> states;
    states.reserve(times_ps.size());

    Vector v = vectorize(rho0.rho);
    if (times_ps.front() > 0.0) {
        const Matrix u0 = (liou.l * ps_to_natural(times_ps.front())).exp();
        v = u0 * v;
    }
    states.push_back({unvectorize(v, d), liou.truncation});

    if (times_ps.size() >= 2) {
        const double dt_ps = times_ps[1] - times_ps[0];
        if (max_rate(p) * ps_to_natural(dt_ps) > 0.5) {
            std::ostringstream os;
            os << "trajectory step " << dt_ps << " ps does not resolve the fastest rate "
               << max_rate(p) << " ueV";
            throw TrajectoryTooCoarse(os.str());
        }
        const Matrix u = (liou.l * ps_to_natural(dt_ps)).exp();
        for (std::size_t k = 1; k < times_ps.size(); ++k) {
            v = u * v;
            states.push_back({unvectorize(v, d), liou.truncation});
        }
    }
    return states;
}

ExpectationTrajectory expectations(const std::vector<QuantumState>& states,
                                   const std::vector<double>& times_ps) {
    if (states.size() != times_ps.size()) {
        throw Error("state list and time grid lengths differ");
    }
    if (states.empty()) throw Error("state list is empty");
    const Truncation t = states.front().basis_tag;
    const Matrix n_cav = op_n_cav(t);
    const Matrix n_tls = op_n_tls(t);
    const Matrix coh = op_sigma_plus_a(t);
    const Matrix coh_conj = op_a_dag(t) * op_sigma_minus(t);

    ExpectationTrajectory out;
    out.times_ps = times_ps;
    out.n_cav.reserve(states.size());
    out.n_tls.reserve(states.size());
    out.coh.reserve(states.size());
    out.coh_conj_pair.reserve(states.size());
    for (const auto& s : states) {
        out.n_cav.push_back((n_cav * s.rho).trace().real());
        out.n_tls.push_back((n_tls * s.rho).trace().real());
        out.coh.push_back((coh * s.rho).trace());
        out.coh_conj_pair.push_back((coh_conj * s.rho).trace());
    }
    return out;
}

TrajectoryModes::TrajectoryModes(const LiouvillianMatrix& liou,
                                 const QuantumState& rho0)
    : truncation_(liou.truncation) {
    if (rho0.basis_tag != liou.truncation) {
        throw Error("initial state truncation does not match the generator");
    }
    Eigen::ComplexEigenSolver<Matrix> es(liou.l);
    if (es.info() != Eigen::Success) {
        throw Error("eigendecomposition of the generator failed");
    }
    lambdas_ = es.eigenvalues();
    eigvecs_ = es.eigenvectors();

    const Vector v0 = vectorize(rho0.rho);
    rho0_coords_ = eigvecs_.partialPivLu().solve(v0);
    const double residual = (eigvecs_ * rho0_coords_ - v0).norm();
    if (residual > 1e-8 * std::max(1.0, v0.norm())) {
        throw DegenerateRates(
            "generator eigenbasis is too ill-conditioned for mode expansion");
    }

    const Truncation t = liou.truncation;
    auto weights = [&](const Matrix& op) {
        const Vector probe = vectorize(Matrix(op.adjoint()));
        const Eigen::RowVectorXcd row = probe.adjoint() * eigvecs_;
        Vector w(lambdas_.size());
        for (Eigen::Index k = 0; k < lambdas_.size(); ++k) {
            w(k) = row(k) * rho0_coords_(k);
        }
        return w;
    };
    w_n_cav_ = weights(op_n_cav(t));
    w_n_tls_ = weights(op_n_tls(t));
    w_coh_ = weights(op_sigma_plus_a(t));
    w_coh_conj_ = weights(op_a_dag(t) * op_sigma_minus(t));
}

cplx TrajectoryModes::series_at(const Eigen::VectorXcd& w, double t_nat) const {
    cplx acc(0.0, 0.0);
    for (Eigen::Index k = 0; k < lambdas_.size(); ++k) {
        acc += w(k) * std::exp(lambdas_(k) * t_nat);
    }
    return acc;
}

ExpectationTrajectory TrajectoryModes::evaluate(
    const std::vector<double>& times_ps) const {
    ExpectationTrajectory out;
    out.times_ps = times_ps;
    out.n_cav.reserve(times_ps.size());
    out.n_tls.reserve(times_ps.size());
    out.coh.reserve(times_ps.size());
    out.coh_conj_pair.reserve(times_ps.size());
    for (double t_ps : times_ps) {
        if (t_ps < 0.0) throw OutOfTrajectory("trajectory time before t = 0");
        const double t_nat = ps_to_natural(t_ps);
        out.n_cav.push_back(series_at(w_n_cav_, t_nat).real());
        out.n_tls.push_back(series_at(w_n_tls_, t_nat).real());
        out.coh.push_back(series_at(w_coh_, t_nat));
        out.coh_conj_pair.push_back(series_at(w_coh_conj_, t_nat));
    }
    return out;
}

QuantumState TrajectoryModes::state_at(double t_ps) const {
    if (t_ps < 0.0) throw OutOfTrajectory("trajectory time before t = 0");
    const double t_nat = ps_to_natural(t_ps);
    Vector v(lambdas_.size());
    for (Eigen::Index k = 0; k < lambdas_.size(); ++k) {
        v(k) = rho0_coords_(k) * std::exp(lambdas_(k) * t_nat);
    }
    const int d = basis_dim(truncation_);
    return {unvectorize(eigvecs_ * v, d), truncation_};
}

double TrajectoryModes::slowest_active_decay() const {
    const double coord_scale = rho0_coords_.cwiseAbs().maxCoeff();
    const double rate_scale = lambdas_.real().cwiseAbs().maxCoeff();
    double slowest = rate_scale;
    bool found = false;
    for (Eigen::Index k = 0; k < lambdas_.size(); ++k) {
        const double decay = -lambdas_(k).real();
        if (std::abs(rho0_coords_(k)) < 1e-12 * coord_scale) continue;
        if (decay < 1e-12 * rate_scale) continue;  // stationary mode
        if (decay < slowest) {
            slowest = decay;
            found = true;
        }
    }
    if (!found) throw Error("no decaying mode is active in the initial state");
    return slowest;
}

std::vector<double> uniform_grid(double t_max, int n) {
    if (n < 2) throw Error("uniform grid needs at least two points");
    if (!(t_max > 0.0)) throw Error("uniform grid needs a positive extent");
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        out[static_cast<std::size_t>(k)] = t_max * static_cast<double>(k) /
                                           static_cast<double>(n - 1);
    }
    return out;
}

}  // namespace trps
