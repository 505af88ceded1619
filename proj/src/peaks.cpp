#include "trps/peaks.hpp"

#include <algorithm>
#include <cmath>

#include "trps/errors.hpp"

namespace trps {

double PeakAnalysis::doublet_separation() const {
    if (peaks.size() < 2) throw NoPeaks("doublet separation needs two peaks");
    std::size_t first = 0, second = 1;
    if (peaks[second].prominence > peaks[first].prominence) std::swap(first, second);
    for (std::size_t k = 2; k < peaks.size(); ++k) {
        if (peaks[k].prominence > peaks[first].prominence) {
            second = first;
            first = k;
        } else if (peaks[k].prominence > peaks[second].prominence) {
            second = k;
        }
    }
    return std::abs(peaks[first].position - peaks[second].position);
}

std::size_t PeakAnalysis::main_peak_index() const {
    if (peaks.empty()) throw NoPeaks("no peaks to rank");
    std::size_t best = 0;
    for (std::size_t k = 1; k < peaks.size(); ++k) {
        if (peaks[k].height > peaks[best].height) best = k;
    }
    return best;
}

PeakAnalysis analyze_peaks(const std::vector<double>& x,
                           const std::vector<double>& values,
                           const PeakOptions& opts) {
    if (x.size() != values.size()) throw Error("abscissa and value lengths differ");
    if (x.size() < 3) throw NoPeaks("series too short for peak detection");
    const double ymax = *std::max_element(values.begin(), values.end());
    if (!(ymax > 0.0)) throw NoPeaks("series has no positive values");
    const double dx = x[1] - x[0];

    PeakAnalysis out;
    const std::size_t n = values.size();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!(values[i] > values[i - 1] && values[i] >= values[i + 1])) continue;
        // The flanking minima bound the descent on each side.
        std::size_t l = i;
        while (l > 0 && values[l - 1] <= values[l]) --l;
        std::size_t r = i;
        while (r + 1 < n && values[r + 1] <= values[r]) ++r;
        const double lmin =
            l < i ? *std::min_element(values.begin() + static_cast<long>(l),
                                      values.begin() + static_cast<long>(i))
                  : values[i];
        const double rmin =
            r > i ? *std::min_element(values.begin() + static_cast<long>(i) + 1,
                                      values.begin() + static_cast<long>(r) + 1)
                  : values[i];
        const double prom = values[i] - std::max(lmin, rmin);
        if (prom <= opts.prominence_frac * ymax) continue;
        Peak pk;
        pk.height = values[i];
        pk.prominence = prom;
        pk.position = x[i];
        if (opts.refine) {
            const double den = values[i - 1] - 2.0 * values[i] + values[i + 1];
            if (den != 0.0) {
                pk.position += 0.5 * (values[i - 1] - values[i + 1]) / den * dx;
            }
        }
        out.peaks.push_back(pk);
    }
    if (out.peaks.empty()) throw NoPeaks("no peaks above the prominence threshold");
    return out;
}

SatelliteSpacing satellite_spacing(const PeakAnalysis& analysis, int per_side) {
    if (per_side < 2) throw Error("satellite spacing needs at least two per side");
    const std::size_t main = analysis.main_peak_index();
    SatelliteSpacing out;
    std::vector<double> above, below;
    for (std::size_t k = 0; k < analysis.peaks.size(); ++k) {
        if (k < main) below.push_back(analysis.peaks[k].position);
        if (k > main) above.push_back(analysis.peaks[k].position);
    }
    // Nearest satellites first on each side.
    std::reverse(below.begin(), below.end());
    out.count_above = static_cast<int>(above.size());
    out.count_below = static_cast<int>(below.size());
    auto mean_gap = [per_side](const std::vector<double>& pos) {
        const auto k = std::min<std::size_t>(pos.size(), static_cast<std::size_t>(per_side));
        if (k < 2) return 0.0;
        double acc = 0.0;
        for (std::size_t j = 1; j < k; ++j) acc += std::abs(pos[j] - pos[j - 1]);
        return acc / static_cast<double>(k - 1);
    };
    out.mean_gap_above = mean_gap(above);
    out.mean_gap_below = mean_gap(below);
    return out;
}

}  // namespace trps
