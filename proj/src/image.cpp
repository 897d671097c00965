#include "radinpaint/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace radinpaint {

GrayImage GrayImage::filled(int width, int height, uint16_t value, int bit_depth) {
    GrayImage img;
    img.width = width;
    img.height = height;
    img.bit_depth = bit_depth;
    img.pixels.assign(std::size_t(width) * std::size_t(height), value);
    validate(img);
    return img;
}

DamageMask DamageMask::filled(int width, int height, bool known) {
    DamageMask mask;
    mask.width = width;
    mask.height = height;
    mask.flags.assign(std::size_t(width) * std::size_t(height), known ? 1 : 0);
    return mask;
}

std::size_t DamageMask::damaged_count() const {
    return std::size_t(std::count(flags.begin(), flags.end(), uint8_t(0)));
}

RealGrid RealGrid::zeros(int width, int height) {
    RealGrid g;
    g.width = width;
    g.height = height;
    g.values.assign(std::size_t(width) * std::size_t(height), 0.0);
    return g;
}

void validate(const GrayImage& img) {
    if (img.width < 1 || img.height < 1)
        throw std::invalid_argument("image: dimensions must be positive, got " +
                                    std::to_string(img.width) + "x" + std::to_string(img.height));
    if (img.bit_depth < 1 || img.bit_depth > 16)
        throw std::invalid_argument("image: bit depth must be in [1,16], got " +
                                    std::to_string(img.bit_depth));
    if (img.pixels.size() != img.pixel_count())
        throw std::invalid_argument("image: pixel buffer has " + std::to_string(img.pixels.size()) +
                                    " entries, expected " + std::to_string(img.pixel_count()));
    const int maxv = img.max_value();
    for (uint16_t v : img.pixels)
        if (v > maxv)
            throw std::invalid_argument("image: pixel value " + std::to_string(v) +
                                        " exceeds max " + std::to_string(maxv));
}

void validate(const DamageMask& mask) {
    if (mask.width < 1 || mask.height < 1)
        throw std::invalid_argument("mask: dimensions must be positive, got " +
                                    std::to_string(mask.width) + "x" + std::to_string(mask.height));
    if (mask.flags.size() != mask.pixel_count())
        throw std::invalid_argument("mask: flag buffer has " + std::to_string(mask.flags.size()) +
                                    " entries, expected " + std::to_string(mask.pixel_count()));
}

GrayImage transpose(const GrayImage& img) {
    GrayImage out;
    out.width = img.height;
    out.height = img.width;
    out.bit_depth = img.bit_depth;
    out.pixels.resize(img.pixels.size());
    for (int r = 0; r < img.height; ++r)
        for (int c = 0; c < img.width; ++c)
            out.at(c, r) = img.at(r, c);
    return out;
}

DamageMask transpose(const DamageMask& mask) {
    DamageMask out;
    out.width = mask.height;
    out.height = mask.width;
    out.flags.resize(mask.flags.size());
    for (int r = 0; r < mask.height; ++r)
        for (int c = 0; c < mask.width; ++c)
            out.set_known(c, r, mask.known(r, c));
    return out;
}

DamageMask mask_from_image(const GrayImage& img) {
    validate(img);
    DamageMask mask;
    mask.width = img.width;
    mask.height = img.height;
    mask.flags.resize(img.pixel_count());
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
        mask.flags[i] = img.pixels[i] != 0 ? 1 : 0;
    return mask;
}

GrayImage apply_mask(const GrayImage& img, const DamageMask& mask) {
    if (img.width != mask.width || img.height != mask.height)
        throw std::invalid_argument("apply_mask: image is " + std::to_string(img.width) + "x" +
                                    std::to_string(img.height) + " but mask is " +
                                    std::to_string(mask.width) + "x" + std::to_string(mask.height));
    GrayImage out = img;
    for (std::size_t i = 0; i < out.pixels.size(); ++i)
        if (mask.flags[i] == 0) out.pixels[i] = 0;
    return out;
}

uint16_t quantize_intensity(double value, int max_value) {
    const double clamped = std::clamp(value, 0.0, double(max_value));
    return uint16_t(std::llround(clamped));
}

}  // namespace radinpaint
