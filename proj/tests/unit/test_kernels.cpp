#include "doctest.h"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "helpers.hpp"
#include "trps/coefficients.hpp"
#include "trps/detail/phi.hpp"
#include "trps/errors.hpp"
#include "trps/kernels.hpp"

using namespace trps;

namespace {

constexpr KernelIndex kAll[] = {KernelIndex::sigma_1, KernelIndex::a_2,
                                KernelIndex::sigma_2, KernelIndex::a_1};

cplx coefficient_at(const CoefficientSet& c, KernelIndex k, double tau_nat) {
    switch (k) {
        case KernelIndex::sigma_1: return c.c_sigma_1(tau_nat);
        case KernelIndex::a_2: return c.c_a_2(tau_nat);
        case KernelIndex::sigma_2: return c.c_sigma_2(tau_nat);
        default: return c.c_a_1(tau_nat);
    }
}

// Gs int_0^{s''} C(tau) e^{(i nu + Gs/2) tau} dtau by adaptive quadrature.
cplx quad_scaled(const CoefficientSet& c, KernelIndex k, double gamma_s, double nu,
                 double spp_nat) {
    using quad = boost::math::quadrature::gauss_kronrod<double, 61>;
    auto part = [&](bool imag_part) {
        auto f = [&](double tau) {
            const cplx v = coefficient_at(c, k, tau) *
                           std::exp(cplx(0.5 * gamma_s * tau, nu * tau));
            return imag_part ? v.imag() : v.real();
        };
        return quad::integrate(f, 0.0, spp_nat, 15, 1e-13);
    };
    return gamma_s * cplx(part(false), part(true));
}

double rel_dist(cplx a, cplx b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-30});
}

}  // namespace

TEST_CASE("kernels vanish at zero window length") {
    const SpectralKernelSet ks(th::fig1_params(), {5.0});
    for (KernelIndex k : kAll) {
        CHECK(std::abs(ks.eval(k, 37.0, 0.0)) == 0.0);
        CHECK(std::abs(ks.eval_scaled(k, 37.0, 0.0)) == 0.0);
    }
}

TEST_CASE("closed-form kernels match adaptive quadrature") {
    struct Combo {
        SystemParams p;
        double gamma_s;
    };
    for (const auto& combo : {Combo{th::fig1_params(), 5.0},
                              Combo{th::fig3_params(), 50.0},
                              Combo{th::tls_probe(30.0), 500.0}}) {
        const CoefficientSet c(combo.p);
        const SpectralKernelSet ks(combo.p, {combo.gamma_s});
        double worst = 0.0;
        for (double nu : {-150.0, -40.0, 0.0, 42.7, 180.0}) {
            for (double spp : {0.01, 0.08, 0.3}) {
                for (KernelIndex k : kAll) {
                    const cplx q = quad_scaled(c, k, combo.gamma_s, nu, spp);
                    const cplx v = ks.eval_scaled(k, nu, spp);
                    if (std::abs(q) < 1e-16 && std::abs(v) < 1e-16) continue;
                    worst = std::max(worst, rel_dist(q, v));
                }
            }
        }
        CHECK(worst < 1e-8);
    }
}

TEST_CASE("unscaled kernels carry the window decay factor") {
    const double gs = 50.0;
    const SpectralKernelSet ks(th::fig3_params(), {gs});
    for (double spp : {0.02, 0.15}) {
        const double damp = std::exp(-gs * spp);
        for (KernelIndex k : kAll) {
            CHECK(th::cdist(ks.eval(k, 12.0, spp), damp * ks.eval_scaled(k, 12.0, spp)) <
                  1e-12 * std::abs(ks.eval_scaled(k, 12.0, spp)) + 1e-300);
        }
    }
}

TEST_CASE("kernels decompose over the two pole primitives") {
    const double gs = 5.0;
    const SpectralKernelSet ks(th::fig1_params(), {gs});
    const RateEigenvalues r = ks.rates();
    for (double nu : {-80.0, 15.0}) {
        for (double spp : {0.05, 0.2}) {
            const cplx xp = cplx(0.5 * gs, nu) + r.gamma_plus;
            const cplx xm = cplx(0.5 * gs, nu) + r.gamma_minus;
            const cplx pp = gs * spp * detail::phi1(xp * spp);
            const cplx pm = gs * spp * detail::phi1(xm * spp);
            for (KernelIndex k : kAll) {
                const cplx direct = ks.wp(k) * pp + ks.wm(k) * pm;
                CHECK(rel_dist(direct, ks.eval_scaled(k, nu, spp)) < 1e-12);
            }
        }
    }
}

TEST_CASE("vanishing pole argument is a removable point") {
    const SystemParams p = th::fig1_params();
    const double gs = -2.0 * rate_eigenvalues(p).gamma_plus.real();
    const double nu0 = -rate_eigenvalues(p).gamma_plus.imag();
    const CoefficientSet c(p);
    const SpectralKernelSet ks(p, {gs});
    for (double nu : {nu0, nu0 + 1e-9, nu0 - 1e-9}) {
        for (KernelIndex k : kAll) {
            const cplx q = quad_scaled(c, k, gs, nu, 0.12);
            CHECK(rel_dist(q, ks.eval_scaled(k, nu, 0.12)) < 1e-8);
        }
    }
}

TEST_CASE("degenerate rates reject or integrate the confluent form") {
    SystemParams p;
    p.gamma = 50.0;
    p.kappa = 50.0;
    CHECK_THROWS_AS(SpectralKernelSet(p, {5.0}, DegeneratePolicy::reject),
                    DegenerateRates);
    const SpectralKernelSet ks(p, {5.0}, DegeneratePolicy::limit_form);
    CHECK(ks.degenerate());
    const CoefficientSet c(p, DegeneratePolicy::limit_form);
    for (double nu : {-30.0, 0.0, 55.0}) {
        for (KernelIndex k : kAll) {
            const cplx q = quad_scaled(c, k, 5.0, nu, 0.15);
            const cplx v = ks.eval_scaled(k, nu, 0.15);
            if (std::abs(q) < 1e-16 && std::abs(v) < 1e-16) continue;
            CHECK(rel_dist(q, v) < 1e-8);
        }
    }
}

TEST_CASE("confluent kernels continue the two-pole form at a collision") {
    SystemParams ep;
    ep.g_mag = 10.0;
    ep.kappa = 50.0;
    ep.gamma = 10.0;
    const SpectralKernelSet limit(ep, {50.0}, DegeneratePolicy::limit_form);
    SystemParams near = ep;
    near.g_mag = 10.0 + 1e-10;
    const SpectralKernelSet plain(near, {50.0}, DegeneratePolicy::reject);
    CHECK_FALSE(plain.degenerate());
    for (double nu : {-22.0, 8.0}) {
        for (KernelIndex k : kAll) {
            CHECK(th::cdist(limit.eval_scaled(k, nu, 0.1),
                            plain.eval_scaled(k, nu, 0.1)) < 1e-3);
        }
    }
}

TEST_CASE("spectrometer width is validated and echoed") {
    CHECK(SpectralKernelSet(th::fig1_params(), {150.0}).gamma_s() == 150.0);
    CHECK_THROWS_AS(SpectralKernelSet(th::fig1_params(), {0.0}), ConfigError);
    CHECK_THROWS_AS(SpectralKernelSet(th::fig1_params(), {-5.0}), ConfigError);
}
