#pragma once

#include "radinpaint/image.hpp"

namespace radinpaint {

// Mean squared error over the full image. The per-pixel squares are summed in
// 64-bit integers, so the only rounding is the final division.
double mse(const GrayImage& original, const GrayImage& test);

// 10 * log10((2^n - 1)^2 / MSE) in dB; +infinity when the images are
// identical (serialized as "inf" downstream).
double psnr(const GrayImage& original, const GrayImage& test);

}  // namespace radinpaint
