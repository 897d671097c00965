#pragma once

#include <cstdint>
#include <vector>

namespace radinpaint {

/// Row-major grayscale image, top-left origin. Intensities are integers in
/// [0, 2^bit_depth - 1]; bit_depth is 8 for the usual test images and may go
/// up to 16 for deep PGM input.
struct GrayImage {
    int width = 0;
    int height = 0;
    int bit_depth = 8;
    std::vector<uint16_t> pixels;

    static GrayImage filled(int width, int height, uint16_t value, int bit_depth = 8);

    int max_value() const { return (1 << bit_depth) - 1; }
    std::size_t pixel_count() const { return std::size_t(width) * std::size_t(height); }
    uint16_t at(int row, int col) const { return pixels[std::size_t(row) * width + col]; }
    uint16_t& at(int row, int col) { return pixels[std::size_t(row) * width + col]; }

    bool operator==(const GrayImage&) const = default;
};

/// Per-pixel known/damaged flags. true = known, false = damaged.
struct DamageMask {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> flags;

    static DamageMask filled(int width, int height, bool known);

    std::size_t pixel_count() const { return std::size_t(width) * std::size_t(height); }
    bool known(int row, int col) const { return flags[std::size_t(row) * width + col] != 0; }
    void set_known(int row, int col, bool k) { flags[std::size_t(row) * width + col] = k ? 1 : 0; }
    std::size_t damaged_count() const;
    std::size_t known_count() const { return pixel_count() - damaged_count(); }

    bool operator==(const DamageMask&) const = default;
};

/// Row-major grid of reals; intermediate result of the average filter.
struct RealGrid {
    int width = 0;
    int height = 0;
    std::vector<double> values;

    static RealGrid zeros(int width, int height);

    double at(int row, int col) const { return values[std::size_t(row) * width + col]; }
    double& at(int row, int col) { return values[std::size_t(row) * width + col]; }
};

/// Throws std::invalid_argument when a structural invariant is broken
/// (empty dimensions, pixel buffer size mismatch, out-of-range values).
void validate(const GrayImage& img);
void validate(const DamageMask& mask);

GrayImage transpose(const GrayImage& img);
DamageMask transpose(const DamageMask& mask);

/// Mask convention for mask image files: black (0) marks damaged pixels,
/// anything else is known.
DamageMask mask_from_image(const GrayImage& img);

/// Zeroes damaged pixels; known pixels pass through. Throws on shape mismatch.
GrayImage apply_mask(const GrayImage& img, const DamageMask& mask);

/// Clamp to [0, max_value] then round half away from zero. The one rounding
/// convention used everywhere a real prediction becomes a pixel.
uint16_t quantize_intensity(double value, int max_value);

}  // namespace radinpaint
