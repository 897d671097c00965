#include <doctest.h>

#include <random>
#include <stdexcept>

#include "radinpaint/box_filter.hpp"
#include "reference.hpp"

using namespace radinpaint;

namespace {

RealGrid random_grid(std::mt19937_64& rng, int width, int height, bool indicator) {
    RealGrid g = RealGrid::zeros(width, height);
    for (double& v : g.values)
        v = indicator ? double(rng() % 2) : double(rng() % 256);
    return g;
}

}  // namespace

TEST_SUITE("box_filter") {
    TEST_CASE("radius validation") {
        const RealGrid g = RealGrid::zeros(8, 6);
        CHECK_THROWS_AS(box_filter(g, 4), std::invalid_argument);
        CHECK_THROWS_AS(box_filter(g, 1), std::invalid_argument);
        CHECK_THROWS_AS(box_filter(g, -3), std::invalid_argument);
        CHECK_THROWS_AS(box_filter(g, 13), std::invalid_argument);  // 2*min(8,6)-1 = 11
        CHECK_NOTHROW(box_filter(g, 11));
    }

    TEST_CASE("constant grid stays constant") {
        RealGrid g = RealGrid::zeros(7, 5);
        for (double& v : g.values) v = 42.0;
        const RealGrid out = box_filter(g, 3);
        for (double v : out.values) CHECK(v == 42.0);
    }

    TEST_CASE("3x3 corner normalization uses in-bounds counts") {
        RealGrid g = RealGrid::zeros(3, 3);
        for (int i = 0; i < 9; ++i) g.values[std::size_t(i)] = double(i + 1);
        const RealGrid out = box_filter(g, 3);
        CHECK(out.at(0, 0) == doctest::Approx((1 + 2 + 4 + 5) / 4.0).epsilon(1e-12));
        CHECK(out.at(0, 1) == doctest::Approx((1 + 2 + 3 + 4 + 5 + 6) / 6.0).epsilon(1e-12));
        CHECK(out.at(1, 1) == doctest::Approx(5.0).epsilon(1e-12));
    }

    TEST_CASE("matches the direct reference on random grids") {
        std::mt19937_64 rng(23);
        for (int trial = 0; trial < 20; ++trial) {
            const int w = 2 + int(rng() % 20), h = 2 + int(rng() % 20);
            const RealGrid g = random_grid(rng, w, h, false);
            const int rmax = 2 * std::min(w, h) - 1;
            for (int radius = 3; radius <= std::min(rmax, 13); radius += 2) {
                const RealGrid mine = box_filter(g, radius);
                const RealGrid theirs = ref::box_filter_naive(g, radius);
                for (std::size_t i = 0; i < mine.values.size(); ++i)
                    CHECK(mine.values[i] == doctest::Approx(theirs.values[i]).epsilon(1e-12));
            }
        }
    }

    TEST_CASE("indicator grids are computed exactly") {
        // Integer sums stay exact in the summed-area table, so a 0/1 input
        // must reproduce the reference bit for bit, zeros included.
        std::mt19937_64 rng(29);
        for (int trial = 0; trial < 10; ++trial) {
            const RealGrid g = random_grid(rng, 11, 9, true);
            for (int radius : {3, 5, 7}) {
                const RealGrid mine = box_filter(g, radius);
                const RealGrid theirs = ref::box_filter_naive(g, radius);
                for (std::size_t i = 0; i < mine.values.size(); ++i) {
                    CHECK(mine.values[i] == theirs.values[i]);
                    CHECK((mine.values[i] == 0.0) == (theirs.values[i] == 0.0));
                }
            }
        }
    }
}
