#include "radinpaint/metrics.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace radinpaint {

namespace {

void check_comparable(const GrayImage& original, const GrayImage& test) {
    validate(original);
    validate(test);
    if (original.width != test.width || original.height != test.height)
        throw std::invalid_argument("metrics: shapes differ, " + std::to_string(original.width) +
                                    "x" + std::to_string(original.height) + " vs " +
                                    std::to_string(test.width) + "x" +
                                    std::to_string(test.height));
    if (original.bit_depth != test.bit_depth)
        throw std::invalid_argument("metrics: bit depths differ, " +
                                    std::to_string(original.bit_depth) + " vs " +
                                    std::to_string(test.bit_depth));
}

}  // namespace

double mse(const GrayImage& original, const GrayImage& test) {
    check_comparable(original, test);
    // Worst case (2^16-1)^2 per pixel times 2^28 pixels still fits well
    // within unsigned 64 bits.
    uint64_t sum = 0;
    for (std::size_t i = 0; i < original.pixels.size(); ++i) {
        const int64_t d = int64_t(original.pixels[i]) - int64_t(test.pixels[i]);
        sum += uint64_t(d * d);
    }
    return double(sum) / double(original.pixel_count());
}

double psnr(const GrayImage& original, const GrayImage& test) {
    const double e = mse(original, test);
    if (e == 0.0) return std::numeric_limits<double>::infinity();
    const double peak = double(original.max_value());
    return 10.0 * std::log10(peak * peak / e);
}

}  // namespace radinpaint
