#include "radinpaint/box_filter.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace radinpaint {

RealGrid box_filter(const RealGrid& grid, int radius) {
    const int w = grid.width, h = grid.height;
    if (w < 1 || h < 1 || grid.values.size() != std::size_t(w) * h)
        throw std::invalid_argument("box_filter: malformed grid");
    const int max_radius = 2 * std::min(w, h) - 1;
    if (radius < 3 || radius % 2 == 0 || radius > max_radius)
        throw std::invalid_argument("box_filter: radius must be odd and in [3," +
                                    std::to_string(max_radius) + "], got " +
                                    std::to_string(radius));

    // Summed-area table with a zero pad row/column; sat[r][c] holds the sum of
    // grid[0..r-1][0..c-1].
    const std::size_t sw = std::size_t(w) + 1;
    std::vector<double> sat(sw * (std::size_t(h) + 1), 0.0);

#pragma omp parallel for schedule(static)
    for (int r = 0; r < h; ++r) {
        double run = 0.0;
        for (int c = 0; c < w; ++c) {
            run += grid.values[std::size_t(r) * w + c];
            sat[(std::size_t(r) + 1) * sw + c + 1] = run;
        }
    }
#pragma omp parallel for schedule(static)
    for (int c = 1; c <= w; ++c)
        for (int r = 2; r <= h; ++r) sat[std::size_t(r) * sw + c] += sat[(std::size_t(r) - 1) * sw + c];

    const int half = radius / 2;
    RealGrid out = RealGrid::zeros(w, h);

#pragma omp parallel for schedule(static)
    for (int r = 0; r < h; ++r) {
        const int r1 = std::max(0, r - half), r2 = std::min(h - 1, r + half);
        for (int c = 0; c < w; ++c) {
            const int c1 = std::max(0, c - half), c2 = std::min(w - 1, c + half);
            const double sum = sat[std::size_t(r2 + 1) * sw + c2 + 1] -
                               sat[std::size_t(r1) * sw + c2 + 1] -
                               sat[std::size_t(r2 + 1) * sw + c1] + sat[std::size_t(r1) * sw + c1];
            out.values[std::size_t(r) * w + c] = sum / double((r2 - r1 + 1) * (c2 - c1 + 1));
        }
    }
    return out;
}

}  // namespace radinpaint
