#include "doctest.h"

#include <cmath>
#include <vector>

#include "trps/errors.hpp"
#include "trps/peaks.hpp"

using namespace trps;

namespace {

std::vector<double> grid(double lo, double hi, int n) {
    std::vector<double> x(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        x[static_cast<size_t>(k)] = lo + (hi - lo) * static_cast<double>(k) / (n - 1);
    }
    return x;
}

double lorentzian(double x, double x0, double w) {
    return w * w / ((x - x0) * (x - x0) + w * w);
}

}  // namespace

TEST_CASE("a single line is found and refined off grid") {
    const std::vector<double> x = grid(-10.0, 10.0, 201);
    std::vector<double> y;
    for (double v : x) y.push_back(lorentzian(v, 3.73, 1.5));
    const PeakAnalysis pa = analyze_peaks(x, y);
    REQUIRE(pa.peaks.size() == 1);
    CHECK(std::abs(pa.peaks[0].position - 3.73) < 0.02);
    CHECK(pa.peaks[0].height > 0.99);
    CHECK(pa.main_peak_index() == 0);
}

TEST_CASE("refinement can be disabled") {
    const std::vector<double> x = grid(-10.0, 10.0, 201);
    std::vector<double> y;
    for (double v : x) y.push_back(lorentzian(v, 3.73, 1.5));
    const PeakAnalysis pa = analyze_peaks(x, y, {1e-6, false});
    REQUIRE(pa.peaks.size() == 1);
    CHECK(pa.peaks[0].position == doctest::Approx(3.7).epsilon(1e-12));
}

TEST_CASE("a symmetric doublet refines symmetrically") {
    const std::vector<double> x = grid(-12.0, 12.0, 481);
    std::vector<double> y;
    for (double v : x) y.push_back(lorentzian(v, -4.2, 1.0) + lorentzian(v, 4.2, 1.0));
    const PeakAnalysis pa = analyze_peaks(x, y);
    REQUIRE(pa.peaks.size() == 2);
    CHECK(std::abs(pa.peaks[0].position + pa.peaks[1].position) < 1e-9);
    CHECK(pa.doublet_separation() == doctest::Approx(8.4).epsilon(1e-3));
}

TEST_CASE("monotone series have no peaks") {
    const std::vector<double> x = grid(0.0, 1.0, 50);
    std::vector<double> y;
    for (double v : x) y.push_back(2.0 * v);
    CHECK_THROWS_AS(analyze_peaks(x, y), NoPeaks);
}

TEST_CASE("doublet separation pairs the two most prominent lines") {
    const std::vector<double> x = grid(-20.0, 20.0, 801);
    std::vector<double> y;
    for (double v : x) {
        y.push_back(lorentzian(v, -9.0, 1.0) + 0.9 * lorentzian(v, 9.0, 1.0) +
                    0.15 * lorentzian(v, 1.0, 0.8));
    }
    const PeakAnalysis pa = analyze_peaks(x, y, {1e-3, true});
    REQUIRE(pa.peaks.size() == 3);
    CHECK(pa.doublet_separation() == doctest::Approx(18.0).epsilon(1e-2));
}

TEST_CASE("prominence threshold hides shallow ripples") {
    const std::vector<double> x = grid(-20.0, 20.0, 801);
    std::vector<double> y;
    for (double v : x) {
        y.push_back(lorentzian(v, 0.0, 2.0) + 2e-3 * std::cos(4.0 * v));
    }
    const PeakAnalysis strict = analyze_peaks(x, y, {0.01, true});
    CHECK(strict.peaks.size() == 1);
    const PeakAnalysis loose = analyze_peaks(x, y, {1e-6, true});
    CHECK(loose.peaks.size() > 1);
}

TEST_CASE("satellite spacing averages the gaps on each side") {
    const double period = 3.2;
    const std::vector<double> x = grid(-16.0, 16.0, 3201);
    std::vector<double> y;
    for (double v : x) {
        y.push_back((1.2 + std::cos(2.0 * M_PI * v / period)) *
                    std::exp(-v * v / 120.0));
    }
    const PeakAnalysis pa = analyze_peaks(x, y, {1e-4, true});
    const SatelliteSpacing sp = satellite_spacing(pa, 3);
    CHECK(sp.count_above >= 3);
    CHECK(sp.count_below >= 3);
    CHECK(std::abs(sp.mean_gap_above - period) / period < 0.02);
    CHECK(std::abs(sp.mean_gap_below - period) / period < 0.02);
    CHECK_THROWS_AS(satellite_spacing(pa, 1), Error);
}

TEST_CASE("lone peaks have no satellites to space") {
    const std::vector<double> x = grid(-10.0, 10.0, 401);
    std::vector<double> y;
    for (double v : x) y.push_back(lorentzian(v, 0.0, 2.0));
    const SatelliteSpacing sp = satellite_spacing(analyze_peaks(x, y), 3);
    CHECK(sp.count_above == 0);
    CHECK(sp.count_below == 0);
    CHECK(sp.mean_gap_above == 0.0);
    CHECK(sp.mean_gap_below == 0.0);
}

TEST_CASE("degenerate inputs are rejected") {
    CHECK_THROWS_AS(analyze_peaks({0.0, 1.0}, {1.0}, {}), Error);
    CHECK_THROWS_AS(analyze_peaks({0.0}, {1.0}, {}), Error);
    PeakAnalysis empty;
    CHECK_THROWS_AS(empty.doublet_separation(), NoPeaks);
    PeakAnalysis one;
    one.peaks.push_back({1.0, 2.0, 2.0});
    CHECK_THROWS_AS(one.doublet_separation(), NoPeaks);
}
