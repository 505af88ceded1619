#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "trps/errors.hpp"
#include "trps/fano.hpp"
#include "trps/peaks.hpp"

using namespace trps;

namespace {

std::vector<double> symmetric_grid(double span, int n) {
    std::vector<double> nu(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        nu[static_cast<std::size_t>(k)] =
            -span + 2.0 * span * static_cast<double>(k) / static_cast<double>(n - 1);
    }
    return nu;
}

double doublet_sep(double g_mag, double gamma_s, double phi) {
    const std::vector<double> nu = symmetric_grid(400.0, 4001);
    std::vector<double> abs2(nu.size());
    for (std::size_t k = 0; k < nu.size(); ++k) {
        abs2[k] = std::norm(fano_closed_form(g_mag, gamma_s, phi, nu[k]));
    }
    return analyze_peaks(nu, abs2).doublet_separation();
}

}  // namespace

TEST_CASE("quadrature of the defining integral matches the closed form") {
    const double g = 100.0;
    const std::vector<double> nu = {-163.0, 0.0, 77.5};
    for (double gs : {5.0, 150.0}) {
        const double phi = -M_PI / 4.0;
        const FanoProbeResult r = fano_probe(g, gs, phi, nu);
        REQUIRE(r.f.size() == nu.size());
        for (std::size_t k = 0; k < nu.size(); ++k) {
            const cplx c = fano_closed_form(g, gs, phi, nu[k]);
            CHECK(std::abs(r.f[k] - c) <= 1e-10);
            CHECK(r.abs2[k] == std::norm(r.f[k]));
        }
    }
}

TEST_CASE("probe echoes its inputs") {
    const FanoProbeResult r = fano_probe(100.0, 150.0, -0.3, {0.0, 1.0});
    CHECK(r.g_mag == 100.0);
    CHECK(r.gamma_s == 150.0);
    CHECK(r.phi == -0.3);
    CHECK(r.nu_grid == std::vector<double>{0.0, 1.0});
}

TEST_CASE("lorentzian comparison form disagrees with the definition") {
    const double g = 100.0;
    const double phi = -M_PI / 4.0;
    auto max_dev = [&](double gs) {
        double dev = 0.0;
        for (double nu : symmetric_grid(400.0, 4001)) {
            dev = std::max(dev, std::abs(fano_lorentzian_form(g, gs, phi, nu) -
                                         fano_closed_form(g, gs, phi, nu)));
        }
        return dev;
    };
    const double dev_slow = max_dev(5.0);
    const double dev_fast = max_dev(150.0);
    CHECK(dev_slow > 0.05);
    CHECK(dev_fast > 2e-3);
    CHECK(dev_fast < dev_slow);
}

TEST_CASE("doublet separation of the phased spectrum shrinks with phase") {
    const double g = 100.0;
    const double gs = 150.0;
    const std::vector<double> phis = {0.0, -M_PI / 8.0, -M_PI / 4.0,
                                      -3.0 * M_PI / 8.0, -M_PI / 2.0};
    const std::vector<double> frozen = {222.7355, 198.2147, 172.6714, 147.5948,
                                        132.2871};
    std::vector<double> seps;
    for (double phi : phis) seps.push_back(doublet_sep(g, gs, phi));
    for (std::size_t k = 0; k < seps.size(); ++k) {
        CHECK(seps[k] == doctest::Approx(frozen[k]).epsilon(5e-4));
    }
    for (std::size_t k = 1; k < seps.size(); ++k) CHECK(seps[k] < seps[k - 1]);
}

TEST_CASE("an overdamped filter washes the doublet into a single line") {
    const std::vector<double> nu = symmetric_grid(400.0, 4001);
    std::vector<double> abs2(nu.size());
    for (std::size_t k = 0; k < nu.size(); ++k) {
        abs2[k] = std::norm(fano_closed_form(100.0, 500.0, 0.0, nu[k]));
    }
    const PeakAnalysis pa = analyze_peaks(nu, abs2);
    REQUIRE(pa.peaks.size() == 1);
    CHECK(std::abs(pa.peaks[0].position) < 1.0);
    CHECK_THROWS_AS((void)pa.doublet_separation(), NoPeaks);
}

TEST_CASE("probe parameter validation") {
    CHECK_THROWS_AS(fano_probe(100.0, 0.0, 0.0, {0.0}), ConfigError);
    CHECK_THROWS_AS(fano_probe(100.0, -5.0, 0.0, {0.0}), ConfigError);
    CHECK_THROWS_AS(fano_probe(-1.0, 150.0, 0.0, {0.0}), ConfigError);
}
