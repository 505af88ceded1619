#pragma once

#include <complex>
#include <vector>

#include "trps/basis.hpp"
#include "trps/liouvillian.hpp"
#include "trps/system_params.hpp"

namespace trps {

// Density matrix snapshot with its truncation tag.
struct QuantumState {
    Matrix rho;
    Truncation basis_tag = Truncation::n1;
};

// Tolerances for the density-matrix invariants.
struct StateCheckOptions {
    double herm_tol = 1e-12;
    double trace_tol = 1e-10;
    double positivity_tol = 1e-9;
};

// Throws InvariantViolation if rho fails Hermiticity, unit trace or
// positivity within tolerance.
void check_state_invariants(const QuantumState& state,
                            const StateCheckOptions& opts = {},
                            const std::string& context = "");

// Single-time expectation values along a trajectory. Times in ps.
struct ExpectationTrajectory {
    std::vector<double> times_ps;
    std::vector<double> n_cav;            // <a^dag a>
    std::vector<double> n_tls;            // <sigma_+ sigma_->
    std::vector<cplx> coh;                // <sigma_+ a>
    std::vector<cplx> coh_conj_pair;      // <a^dag sigma_->

    std::size_t size() const { return times_ps.size(); }
    double step_ps() const;
};

// Largest rate entering the stepper accuracy guard, in ueV.
double max_rate(const SystemParams& p);

// rho(t_k) = exp(L t_k) rho0 on a uniform grid, via one matrix
// exponential of the per-step generator reused across the grid.
// Rejects steps with max_rate * dt / hbar > 0.5.
std::vector<QuantumState> propagate(const LiouvillianMatrix& liou,
                                    const SystemParams& p,
                                    const QuantumState& rho0,
                                    const std::vector<double>& times_ps);

ExpectationTrajectory expectations(const std::vector<QuantumState>& states,
                                   const std::vector<double>& times_ps);

// Eigenmode expansion of the propagated trajectory: every observable
// series is a finite sum sum_k c_k e^{lambda_k t}. Exactly equivalent to
// the matrix-exponential stepper on any grid, but O(modes) per sample,
// which makes the long-horizon scenarios tractable.
class TrajectoryModes {
  public:
    TrajectoryModes(const LiouvillianMatrix& liou, const QuantumState& rho0);

    ExpectationTrajectory evaluate(const std::vector<double>& times_ps) const;
    QuantumState state_at(double t_ps) const;

    // Decay rate (ueV) of the slowest mode with non-negligible weight in
    // the initial state expansion.
    double slowest_active_decay() const;

  private:
    Truncation truncation_;
    Eigen::VectorXcd lambdas_;           // eigenvalues, natural units
    Eigen::MatrixXcd eigvecs_;           // columns are eigenvectors
    Eigen::VectorXcd rho0_coords_;       // V^{-1} vec(rho0)
    Eigen::VectorXcd w_n_cav_, w_n_tls_, w_coh_, w_coh_conj_;
    cplx series_at(const Eigen::VectorXcd& w, double t_nat) const;
};

// Uniform grid helper: n points from 0 to t_max inclusive.
std::vector<double> uniform_grid(double t_max, int n);

}  // namespace trps
