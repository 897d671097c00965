#include "radinpaint/band.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace radinpaint {

int band_radius(int radius) {
    if (radius < 3 || radius % 2 == 0)
        throw std::invalid_argument("band: radius must be an odd integer >= 3, got " +
                                    std::to_string(radius));
    return radius / 2;
}

std::vector<PixelCoord> compute_band(const DamageMask& mask, int radius,
                                     const std::vector<PixelCoord>* focus) {
    const int half = band_radius(radius);
    validate(mask);
    const int w = mask.width, h = mask.height;

    std::vector<PixelCoord> centers;
    if (focus) {
        for (const PixelCoord& p : *focus) {
            if (p.row < 0 || p.row >= h || p.col < 0 || p.col >= w)
                throw std::invalid_argument("band: focus pixel out of bounds");
            if (mask.known(p.row, p.col))
                throw std::invalid_argument("band: focus pixel (" + std::to_string(p.row) + "," +
                                            std::to_string(p.col) + ") is not damaged");
        }
        centers = *focus;
    } else {
        for (int r = 0; r < h; ++r)
            for (int c = 0; c < w; ++c)
                if (!mask.known(r, c)) centers.push_back({r, c});
    }

    std::vector<PixelCoord> band;
    const std::size_t window = std::size_t(2 * half + 1) * (2 * half + 1);
    if (centers.size() * window <= mask.pixel_count()) {
        // Few centers: stamp windows, then sort and deduplicate.
        for (const PixelCoord& p : centers) {
            const int r1 = std::max(0, p.row - half), r2 = std::min(h - 1, p.row + half);
            const int c1 = std::max(0, p.col - half), c2 = std::min(w - 1, p.col + half);
            for (int r = r1; r <= r2; ++r)
                for (int c = c1; c <= c2; ++c)
                    if (mask.known(r, c)) band.push_back({r, c});
        }
        std::sort(band.begin(), band.end());
        band.erase(std::unique(band.begin(), band.end()), band.end());
    } else {
        // Dense damage: stamp into a flag grid and collect row-major.
        std::vector<uint8_t> hit(mask.pixel_count(), 0);
        for (const PixelCoord& p : centers) {
            const int r1 = std::max(0, p.row - half), r2 = std::min(h - 1, p.row + half);
            const int c1 = std::max(0, p.col - half), c2 = std::min(w - 1, p.col + half);
            for (int r = r1; r <= r2; ++r)
                std::fill(hit.begin() + std::size_t(r) * w + c1,
                          hit.begin() + std::size_t(r) * w + c2 + 1, uint8_t(1));
        }
        for (int r = 0; r < h; ++r)
            for (int c = 0; c < w; ++c)
                if (hit[std::size_t(r) * w + c] && mask.known(r, c)) band.push_back({r, c});
    }
    return band;
}

TrainingSet select_training(const GrayImage& img, const DamageMask& mask, int radius,
                            const std::vector<PixelCoord>* focus) {
    if (img.width != mask.width || img.height != mask.height)
        throw std::invalid_argument("band: image is " + std::to_string(img.width) + "x" +
                                    std::to_string(img.height) + " but mask is " +
                                    std::to_string(mask.width) + "x" + std::to_string(mask.height));
    const std::vector<PixelCoord> band = compute_band(mask, radius, focus);
    if (band.empty())
        throw std::runtime_error("band: empty training set (no known pixel within radius " +
                                 std::to_string(radius) + " of the damage)");
    TrainingSet ts;
    ts.samples.reserve(band.size());
    for (const PixelCoord& p : band) ts.samples.push_back({p, img.at(p.row, p.col)});
    return ts;
}

}  // namespace radinpaint
