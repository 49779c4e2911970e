// rabi_fit.hpp — frequency and envelope decay of a damped oscillation
#pragma once

#include <vector>

namespace usc {

struct RabiFit {
    double omega{0.0};  // angular frequency of the spectral peak
    double decay{0.0};  // envelope rate, amplitude ~ exp(-decay t)
    int extrema{0};     // extrema used for the envelope regression
};

// Frequency from the Hann-windowed spectrum of the mean-removed series
// (refined by golden-section search); decay from a log-linear fit of the
// peak-to-trough swings, one extremum per half period.
// Throws OverdampedSeriesError when fewer than two extrema exist and
// std::invalid_argument when the series spans fewer than 5 periods.
RabiFit fit_rabi_decay(const std::vector<double>& times, const std::vector<double>& values);

}  // namespace usc
