#pragma once

#include "radinpaint/image.hpp"

namespace radinpaint {

/// R-by-R average filter with valid-window normalization: each output is the
/// mean over the window intersected with the grid, divided by the in-bounds
/// cell count rather than R^2. radius must be odd and within
/// [3, 2*min(width,height)-1]. Runs in O(W*H) via a summed-area table.
RealGrid box_filter(const RealGrid& grid, int radius);

}  // namespace radinpaint
