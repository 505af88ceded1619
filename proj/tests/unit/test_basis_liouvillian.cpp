#include "doctest.h"

#include <Eigen/Eigenvalues>
#include <random>

#include "helpers.hpp"
#include "trps/basis.hpp"
#include "trps/errors.hpp"
#include "trps/liouvillian.hpp"
#include "trps/rates.hpp"

using namespace trps;

TEST_CASE("basis dimensions and index round trip") {
    CHECK(basis_dim(Truncation::n1) == 4);
    CHECK(basis_dim(Truncation::n2) == 6);
    for (auto t : {Truncation::n1, Truncation::n2}) {
        const int n_max = t == Truncation::n1 ? 1 : 2;
        std::vector<int> seen;
        for (int e = 0; e <= 1; ++e) {
            for (int n = 0; n <= n_max; ++n) {
                const int k = basis_index(e, n, t);
                CHECK(k >= 0);
                CHECK(k < basis_dim(t));
                seen.push_back(k);
            }
        }
        std::sort(seen.begin(), seen.end());
        for (size_t k = 0; k < seen.size(); ++k) CHECK(seen[k] == static_cast<int>(k));
    }
    CHECK_THROWS_AS(basis_index(0, 2, Truncation::n1), Error);
    CHECK_THROWS_AS(basis_index(2, 0, Truncation::n1), Error);
}

TEST_CASE("ladder operators satisfy the two-level and photon algebra") {
    for (auto t : {Truncation::n1, Truncation::n2}) {
        const int d = basis_dim(t);
        const Matrix sm = op_sigma_minus(t);
        const Matrix sp = op_sigma_plus(t);
        const Matrix id = Matrix::Identity(d, d);
        CHECK((sm * sp + sp * sm - id).norm() == doctest::Approx(0.0).epsilon(1e-14));
        CHECK((sp - sm.adjoint()).norm() == 0.0);
        const Matrix n = op_a(t).adjoint() * op_a(t);
        CHECK((n - op_n_cav(t)).norm() == doctest::Approx(0.0).epsilon(1e-14));
        for (int e = 0; e <= 1; ++e) {
            const int n_max = t == Truncation::n1 ? 1 : 2;
            for (int ph = 0; ph <= n_max; ++ph) {
                CHECK(std::abs(n(basis_index(e, ph, t), basis_index(e, ph, t)) -
                               cplx(ph, 0)) < 1e-15);
            }
        }
    }
}

TEST_CASE("hamiltonian matches the single-excitation block by hand") {
    SystemParams p;
    p.g_mag = 2.0;
    p.g_phase = 0.3;
    p.kappa = 1.0;
    p.gamma = 1.0;
    p.omega_21 = 3.0;
    p.omega_c = 7.0;
    const Matrix h = hamiltonian(p, Truncation::n1);
    CHECK((h - h.adjoint()).norm() < 1e-14);
    const int g0 = basis_index(0, 0, Truncation::n1);
    const int g1 = basis_index(0, 1, Truncation::n1);
    const int e0 = basis_index(1, 0, Truncation::n1);
    CHECK(th::cdist(h(g0, g0), cplx(-1.5, 0)) < 1e-14);
    CHECK(th::cdist(h(g1, g1), cplx(7.0 - 1.5, 0)) < 1e-14);
    CHECK(th::cdist(h(e0, e0), cplx(1.5, 0)) < 1e-14);
    CHECK(th::cdist(h(e0, g1), p.g()) < 1e-14);
    CHECK(th::cdist(h(g1, e0), std::conj(p.g())) < 1e-14);
}

TEST_CASE("liouvillian preserves the trace") {
    for (const auto& p : {th::fig1_params(), th::fig3_params(), th::tls_params()}) {
        for (auto ord : {FanoOrdering::excitation_conserving, FanoOrdering::as_written}) {
            for (auto t : {Truncation::n1, Truncation::n2}) {
                const LiouvillianMatrix liou = build_liouvillian(p, t, ord);
                const int d = basis_dim(t);
                const Vector vid = vectorize(Matrix::Identity(d, d));
                CHECK((vid.adjoint() * liou.l).norm() < 1e-10);
                CHECK((liou.l_adj * vid).norm() < 1e-10);
            }
        }
    }
}

TEST_CASE("adjoint generator is the Hilbert-Schmidt adjoint") {
    const LiouvillianMatrix liou = build_liouvillian(th::fig3_params(), Truncation::n2);
    CHECK((liou.l_adj - liou.l.adjoint()).norm() < 1e-12);
    const int d = basis_dim(Truncation::n2);
    std::mt19937 rng(902);
    std::normal_distribution<double> dist(0.0, 1.0);
    auto random_hermitian = [&]() {
        Matrix m(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) m(i, j) = cplx(dist(rng), dist(rng));
        return Matrix(0.5 * (m + m.adjoint()));
    };
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix x = random_hermitian();
        const Matrix y = random_hermitian();
        const Matrix lx = unvectorize(liou.l_adj * vectorize(x), d);
        const Matrix ly = unvectorize(liou.l * vectorize(y), d);
        const cplx lhs = (lx.adjoint() * y).trace();
        const cplx rhs = (x.adjoint() * ly).trace();
        CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(lhs)));
    }
}

TEST_CASE("rate eigenvalues appear in the liouvillian spectrum") {
    struct Row {
        SystemParams p;
        const char* tag;
    };
    for (const auto& row : {Row{th::fig1_params(), "resonant strong coupling"},
                            Row{th::fig3_params(), "detuned interference"},
                            Row{th::tls_params(), "bare emitter"}}) {
        CAPTURE(row.tag);
        const LiouvillianMatrix liou = build_liouvillian(row.p, Truncation::n1);
        Eigen::ComplexEigenSolver<Matrix> es(liou.l);
        const RateEigenvalues r = rate_eigenvalues(row.p);
        for (cplx target : {r.gamma_plus, r.gamma_minus}) {
            double best = 1e300;
            for (int k = 0; k < es.eigenvalues().size(); ++k) {
                best = std::min(best, std::abs(es.eigenvalues()(k) - target));
            }
            CHECK(best < 1e-9 * std::max(1.0, std::abs(target)));
        }
    }
}

TEST_CASE("cross terms vanish for zero overlap regardless of phase") {
    SystemParams p = th::fig3_params();
    p.eta = 0.0;
    p.theta = 0.4;
    const LiouvillianMatrix a = build_liouvillian(p, Truncation::n2);
    p.theta = 2.9;
    const LiouvillianMatrix b = build_liouvillian(p, Truncation::n2);
    CHECK((a.l - b.l).norm() == 0.0);
    const LiouvillianMatrix c =
        build_liouvillian(p, Truncation::n2, FanoOrdering::as_written);
    CHECK((a.l - c.l).norm() == 0.0);
}

TEST_CASE("the two cross-term orderings differ once the overlap is on") {
    const SystemParams p = th::fig3_params();
    const LiouvillianMatrix a =
        build_liouvillian(p, Truncation::n2, FanoOrdering::excitation_conserving);
    const LiouvillianMatrix b =
        build_liouvillian(p, Truncation::n2, FanoOrdering::as_written);
    CHECK((a.l - b.l).norm() > 1e-3);
}

TEST_CASE("ordering labels round trip") {
    for (auto o : {FanoOrdering::as_written, FanoOrdering::excitation_conserving}) {
        CHECK(parse_fano_ordering(fano_ordering_label(o)) == o);
    }
    CHECK_THROWS_AS(parse_fano_ordering("sideways"), ConfigError);
    CHECK(parse_truncation("n2") == Truncation::n2);
    CHECK_THROWS_AS(parse_truncation("n3"), ConfigError);
}

TEST_CASE("vectorization round trip is column major") {
    Matrix m(2, 2);
    m << cplx(1, 0), cplx(3, 1), cplx(2, 0), cplx(4, -1);
    const Vector v = vectorize(m);
    CHECK(v(0) == m(0, 0));
    CHECK(v(1) == m(1, 0));
    CHECK(v(2) == m(0, 1));
    CHECK((unvectorize(v, 2) - m).norm() == 0.0);
}

TEST_CASE("diagonal initial states normalize and validate") {
    const Matrix rho = initial_state_diagonal({0.0, 1.0, 3.0, 0.0}, Truncation::n1);
    CHECK(std::abs(rho.trace() - cplx(1, 0)) < 1e-15);
    CHECK(std::abs(rho(1, 1) - cplx(0.25, 0)) < 1e-15);
    CHECK(std::abs(rho(2, 2) - cplx(0.75, 0)) < 1e-15);
    CHECK_THROWS_AS(initial_state_diagonal({1.0, 0.0}, Truncation::n1), Error);
    CHECK_THROWS_AS(initial_state_diagonal({1.0, 0.0, -0.1, 0.0}, Truncation::n1), Error);
    CHECK_THROWS_AS(initial_state_diagonal({0.0, 0.0, 0.0, 0.0}, Truncation::n1), Error);
    const Matrix excited = initial_state_excited(Truncation::n2);
    CHECK(std::abs(excited(basis_index(1, 0, Truncation::n2),
                           basis_index(1, 0, Truncation::n2)) -
                   cplx(1, 0)) < 1e-15);
}
