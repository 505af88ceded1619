#include "doctest.h"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "helpers.hpp"
#include "trps/errors.hpp"
#include "trps/liouvillian.hpp"
#include "trps/peaks.hpp"
#include "trps/propagate.hpp"
#include "trps/rates.hpp"
#include "trps/units.hpp"

using namespace trps;

namespace {

QuantumState excited_state(Truncation t) {
    return QuantumState{initial_state_excited(t), t};
}

ExpectationTrajectory run_modes(const SystemParams& p, Truncation t,
                                const std::vector<double>& grid,
                                FanoOrdering ord = kDefaultFanoOrdering) {
    const LiouvillianMatrix liou = build_liouvillian(p, t, ord);
    return TrajectoryModes(liou, excited_state(t)).evaluate(grid);
}

}  // namespace

TEST_CASE("eigenmode evaluation agrees with stepped matrix exponentials") {
    const SystemParams p = th::fig1_params();
    const LiouvillianMatrix liou = build_liouvillian(p, Truncation::n1);
    const std::vector<double> grid = uniform_grid(50.0, 101);
    const auto states = propagate(liou, p, excited_state(Truncation::n1), grid);
    const ExpectationTrajectory stepped = expectations(states, grid);
    const ExpectationTrajectory modal =
        TrajectoryModes(liou, excited_state(Truncation::n1)).evaluate(grid);
    double worst = 0.0;
    for (size_t k = 0; k < grid.size(); ++k) {
        worst = std::max(worst, std::abs(stepped.n_cav[k] - modal.n_cav[k]));
        worst = std::max(worst, std::abs(stepped.n_tls[k] - modal.n_tls[k]));
        worst = std::max(worst, std::abs(stepped.coh[k] - modal.coh[k]));
        worst = std::max(worst, std::abs(stepped.coh_conj_pair[k] - modal.coh_conj_pair[k]));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("vacuum start leaves every series at zero") {
    const SystemParams p = th::fig1_params();
    const LiouvillianMatrix liou = build_liouvillian(p, Truncation::n1);
    const QuantumState vac{initial_state_diagonal({1.0, 0.0, 0.0, 0.0}, Truncation::n1),
                           Truncation::n1};
    const ExpectationTrajectory traj =
        TrajectoryModes(liou, vac).evaluate(uniform_grid(30.0, 61));
    for (size_t k = 0; k < traj.size(); ++k) {
        CHECK(std::abs(traj.n_cav[k]) < 1e-14);
        CHECK(std::abs(traj.n_tls[k]) < 1e-14);
        CHECK(std::abs(traj.coh[k]) < 1e-14);
    }
}

TEST_CASE("excited start exchanges population in anti-phase") {
    const SystemParams p = th::fig1_params();
    const std::vector<double> grid = uniform_grid(25.0, 2501);
    const ExpectationTrajectory traj = run_modes(p, Truncation::n1, grid);
    CHECK(traj.n_tls[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(traj.n_cav[0]) < 1e-14);
    size_t argmax_cav = 0;
    size_t argmin_tls = 0;
    for (size_t k = 1; k < grid.size(); ++k) {
        if (traj.n_cav[k] > traj.n_cav[argmax_cav]) argmax_cav = k;
        if (traj.n_tls[k] < traj.n_tls[argmin_tls]) argmin_tls = k;
    }
    const double period = 2.0 * M_PI * kHbarUevPs /
                          std::abs(rate_eigenvalues(p).difference().imag());
    CHECK(grid[argmax_cav] == doctest::Approx(9.588).epsilon(0.01));
    CHECK(traj.n_tls[argmax_cav] < 0.1);
    CHECK(std::abs(grid[argmin_tls] - grid[argmax_cav]) < 0.1 * period);
}

TEST_CASE("total excitation decays monotonically without cross emission") {
    for (const auto& p : {th::fig1_params(), th::tls_params()}) {
        REQUIRE(p.eta == 0.0);
        const ExpectationTrajectory traj =
            run_modes(p, Truncation::n1, uniform_grid(120.0, 601));
        for (size_t k = 1; k < traj.size(); ++k) {
            const double n_prev = traj.n_cav[k - 1] + traj.n_tls[k - 1];
            const double n_here = traj.n_cav[k] + traj.n_tls[k];
            CHECK(n_here <= n_prev + 1e-9);
        }
    }
}

TEST_CASE("stepper rejects steps beyond the rate guard") {
    const SystemParams p = th::fig1_params();
    const LiouvillianMatrix liou = build_liouvillian(p, Truncation::n1);
    const double dt_bad = 0.6 * kHbarUevPs / max_rate(p);
    CHECK_THROWS_AS(propagate(liou, p, excited_state(Truncation::n1),
                              uniform_grid(10.0 * dt_bad, 11)),
                    TrajectoryTooCoarse);
}

TEST_CASE("state invariants catch broken density matrices") {
    const int d = basis_dim(Truncation::n1);
    Matrix good = initial_state_excited(Truncation::n1);
    CHECK_NOTHROW(check_state_invariants({good, Truncation::n1}));

    Matrix bad_trace = 0.5 * good;
    CHECK_THROWS_AS(check_state_invariants({bad_trace, Truncation::n1}), InvariantViolation);

    Matrix bad_herm = good;
    bad_herm(0, 1) = cplx(0.0, 1e-6);
    CHECK_THROWS_AS(check_state_invariants({bad_herm, Truncation::n1}), InvariantViolation);

    Matrix bad_pos = Matrix::Zero(d, d);
    bad_pos(0, 0) = 1.1;
    bad_pos(1, 1) = -0.1;
    CHECK_THROWS_AS(check_state_invariants({bad_pos, Truncation::n1}), InvariantViolation);
}

TEST_CASE("cross-emission ordering decides positivity and truncation closure") {
    const SystemParams p = th::fig3_params();
    const std::vector<double> grid = uniform_grid(600.0, 301);

    const ExpectationTrajectory keep1 =
        run_modes(p, Truncation::n1, grid, FanoOrdering::excitation_conserving);
    const ExpectationTrajectory keep2 =
        run_modes(p, Truncation::n2, grid, FanoOrdering::excitation_conserving);
    const ExpectationTrajectory raw1 =
        run_modes(p, Truncation::n1, grid, FanoOrdering::as_written);
    const ExpectationTrajectory raw2 =
        run_modes(p, Truncation::n2, grid, FanoOrdering::as_written);

    double keep_delta = 0.0;
    double raw_delta = 0.0;
    for (size_t k = 0; k < grid.size(); ++k) {
        keep_delta = std::max(keep_delta, std::abs(keep1.n_cav[k] - keep2.n_cav[k]));
        keep_delta = std::max(keep_delta, std::abs(keep1.n_tls[k] - keep2.n_tls[k]));
        keep_delta = std::max(keep_delta, std::abs(keep1.coh[k] - keep2.coh[k]));
        raw_delta = std::max(raw_delta, std::abs(raw1.n_cav[k] - raw2.n_cav[k]));
        raw_delta = std::max(raw_delta, std::abs(raw1.n_tls[k] - raw2.n_tls[k]));
        raw_delta = std::max(raw_delta, std::abs(raw1.coh[k] - raw2.coh[k]));
    }
    CHECK(keep_delta < 1e-12);
    CHECK(raw_delta > 1e-6);

    auto min_eigenvalue = [&](FanoOrdering ord) {
        const LiouvillianMatrix liou = build_liouvillian(p, Truncation::n2, ord);
        const TrajectoryModes modes(liou, excited_state(Truncation::n2));
        double lowest = 0.0;
        for (double t : uniform_grid(600.0, 61)) {
            const QuantumState st = modes.state_at(t);
            Eigen::SelfAdjointEigenSolver<Matrix> es(
                0.5 * (st.rho + st.rho.adjoint()));
            lowest = std::min(lowest, es.eigenvalues().minCoeff());
        }
        return lowest;
    };
    CHECK(min_eigenvalue(FanoOrdering::excitation_conserving) > -1e-12);
    CHECK(min_eigenvalue(FanoOrdering::as_written) < -1e-5);
}

TEST_CASE("slowest active decay tracks the emptying channels") {
    const LiouvillianMatrix tls = build_liouvillian(th::tls_params(), Truncation::n1);
    const double s4 = TrajectoryModes(tls, excited_state(Truncation::n1)).slowest_active_decay();
    CHECK(s4 == doctest::Approx(2.0 * std::abs(rate_eigenvalues(th::tls_params())
                                                   .gamma_minus.real()))
                    .epsilon(1e-6));

    const LiouvillianMatrix f1 = build_liouvillian(th::fig1_params(), Truncation::n1);
    const double g1 = TrajectoryModes(f1, excited_state(Truncation::n1)).slowest_active_decay();
    CHECK(g1 == doctest::Approx(th::fig1_params().gamma_tot()).epsilon(1e-6));
}

TEST_CASE("uniform grids span zero to the endpoint inclusive") {
    const std::vector<double> g = uniform_grid(10.0, 5);
    REQUIRE(g.size() == 5);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(g[1] == doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("trajectory step accessor requires a uniform grid") {
    const SystemParams p = th::tls_params();
    const ExpectationTrajectory traj =
        run_modes(p, Truncation::n1, uniform_grid(10.0, 21));
    CHECK(traj.step_ps() == doctest::Approx(0.5).epsilon(1e-12));
}
