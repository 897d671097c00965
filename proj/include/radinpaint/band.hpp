#pragma once

#include <compare>
#include <vector>

#include "radinpaint/image.hpp"

namespace radinpaint {

struct PixelCoord {
    int row = 0;
    int col = 0;
    auto operator<=>(const PixelCoord&) const = default;
};

struct TrainingSample {
    PixelCoord pos;
    int value = 0;
};

/// Known pixels feeding a regressor: pairwise distinct coordinates with their
/// intensities, in row-major order.
struct TrainingSet {
    std::vector<TrainingSample> samples;
};

/// Chebyshev half-width of influence of an R-by-R average filter: floor(R/2).
/// radius must be odd and >= 3.
int band_radius(int radius);

/// The known pixels within Chebyshev distance floor(radius/2) of at least one
/// damaged pixel (of at least one focus pixel when focus is given), i.e. the
/// nonzero support of blurring the damage indicator, restricted to known
/// pixels. Result is row-major sorted. focus coordinates must be damaged.
std::vector<PixelCoord> compute_band(const DamageMask& mask, int radius,
                                     const std::vector<PixelCoord>* focus = nullptr);

/// Pairs each band pixel with its intensity. Throws std::runtime_error when
/// the band is empty; the caller decides the fallback.
TrainingSet select_training(const GrayImage& img, const DamageMask& mask, int radius,
                            const std::vector<PixelCoord>* focus = nullptr);

}  // namespace radinpaint
