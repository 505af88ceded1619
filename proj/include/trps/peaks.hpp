#pragma once

#include <optional>
#include <vector>

namespace trps {

struct Peak {
    double position = 0.0;    // parabolically refined abscissa
    double height = 0.0;      // sample height at the grid maximum
    double prominence = 0.0;  // height above the higher flanking minimum
};

struct PeakOptions {
    double prominence_frac = 1e-6;  // threshold relative to the series maximum
    bool refine = true;             // parabolic sub-grid refinement
};

struct PeakAnalysis {
    std::vector<Peak> peaks;   // ascending by position

    // Distance between the two most prominent peaks.
    double doublet_separation() const;
    // Index (into peaks) of the highest peak.
    std::size_t main_peak_index() const;
};

// Local-maximum detection with prominence thresholding on a uniform grid.
// Throws NoPeaks if nothing clears the threshold.
PeakAnalysis analyze_peaks(const std::vector<double>& x,
                           const std::vector<double>& values,
                           const PeakOptions& opts = {});

struct SatelliteSpacing {
    int count_above = 0;         // satellites found above the main peak
    int count_below = 0;
    double mean_gap_above = 0.0; // mean adjacent gap among the first n above
    double mean_gap_below = 0.0;
};

// Mean adjacent gap of the first `per_side` satellites on each side of
// the main peak.
SatelliteSpacing satellite_spacing(const PeakAnalysis& analysis, int per_side);

}  // namespace trps
