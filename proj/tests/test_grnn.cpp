#include <doctest.h>

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>

#include "radinpaint/grnn.hpp"
#include "reference.hpp"
#include "test_support.hpp"

using namespace radinpaint;

namespace {

TrainingSet make_set(std::initializer_list<TrainingSample> samples) {
    TrainingSet ts;
    ts.samples = samples;
    return ts;
}

}  // namespace

TEST_SUITE("grnn") {
    TEST_CASE("training validates its inputs") {
        const TrainingSet ts = make_set({{{0, 0}, 10}});
        CHECK_THROWS_AS(grnn_train(ts, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(grnn_train(ts, -2.0), std::invalid_argument);
        CHECK_THROWS_AS(grnn_train(ts, std::numeric_limits<double>::quiet_NaN()),
                        std::invalid_argument);
        CHECK_THROWS_AS(grnn_train(TrainingSet{}, 2.0), std::invalid_argument);
    }

    TEST_CASE("two-sample fixture") {
        // Samples (0,0)->100 and (4,0)->200 with sigma 2, queried at (1,0):
        // squared distances 1 and 9, so the weighted mean is
        // (100 e^{-1/8} + 200 e^{-9/8}) / (e^{-1/8} + e^{-9/8}).
        const GrnnModel model =
            grnn_train(make_set({{{0, 0}, 100}, {{4, 0}, 200}}), 2.0);
        CHECK(grnn_predict(model, {1, 0}) ==
              doctest::Approx(126.8941421369995120749).epsilon(1e-14));
    }

    TEST_CASE("constant targets are reproduced exactly") {
        const GrnnModel model = grnn_train(
            make_set({{{0, 0}, 77}, {{9, 3}, 77}, {{2, 8}, 77}, {{5, 5}, 77}}), 3.0);
        CHECK(grnn_predict(model, {4, 4}) == 77.0);
        CHECK(grnn_predict(model, {100, -50}) == 77.0);
    }

    TEST_CASE("prediction interpolates a sample point as sigma shrinks") {
        const TrainingSet ts = make_set({{{0, 0}, 10}, {{3, 0}, 250}});
        const GrnnModel tight = grnn_train(ts, 0.3);
        CHECK(grnn_predict(tight, {0, 0}) == doctest::Approx(10.0).epsilon(1e-6));
        CHECK(grnn_predict(tight, {3, 0}) == doctest::Approx(250.0).epsilon(1e-6));
    }

    TEST_CASE("result stays inside the target range") {
        std::mt19937_64 rng(53);
        const GrnnModel model = grnn_train(
            make_set({{{0, 0}, 3}, {{1, 7}, 255}, {{6, 2}, 120}, {{8, 8}, 30}}), 50.0);
        for (int trial = 0; trial < 50; ++trial) {
            const PixelCoord q{int(rng() % 64), int(rng() % 64)};
            const double v = grnn_predict(model, q);
            CHECK(v >= 3.0);
            CHECK(v <= 255.0);
        }
    }

    TEST_CASE("permuting the samples changes nothing material") {
        std::mt19937_64 rng(59);
        TrainingSet ts;
        for (int i = 0; i < 30; ++i)
            ts.samples.push_back({{int(rng() % 32), int(rng() % 32)}, int(rng() % 256)});
        TrainingSet shuffled = ts;
        std::shuffle(shuffled.samples.begin(), shuffled.samples.end(), rng);
        const GrnnModel a = grnn_train(ts, 2.5);
        const GrnnModel b = grnn_train(shuffled, 2.5);
        for (int trial = 0; trial < 10; ++trial) {
            const PixelCoord q{int(rng() % 32), int(rng() % 32)};
            CHECK(grnn_predict(a, q) == doctest::Approx(grnn_predict(b, q)).epsilon(1e-12));
        }
    }

    TEST_CASE("matches the long-double reference") {
        std::mt19937_64 rng(61);
        for (int trial = 0; trial < 30; ++trial) {
            std::vector<PixelCoord> positions;
            std::vector<double> targets;
            TrainingSet ts;
            const int n = 1 + int(rng() % 50);
            for (int i = 0; i < n; ++i) {
                const PixelCoord p{int(rng() % 64), int(rng() % 64)};
                const int v = int(rng() % 256);
                positions.push_back(p);
                targets.push_back(double(v));
                ts.samples.push_back({p, v});
            }
            const double sigma = 1.5 + double(rng() % 6500) / 1000.0;
            const GrnnModel model = grnn_train(ts, sigma);
            for (int q = 0; q < 10; ++q) {
                const PixelCoord query{int(rng() % 64), int(rng() % 64)};
                const double mine = grnn_predict(model, query);
                const double theirs = ref::grnn_direct(positions, targets, sigma, query);
                CHECK(mine == doctest::Approx(theirs).epsilon(1e-11));
            }
        }
    }

    TEST_CASE("batch prediction equals the scalar loop") {
        std::mt19937_64 rng(67);
        TrainingSet ts;
        for (int i = 0; i < 40; ++i)
            ts.samples.push_back({{int(rng() % 16), int(rng() % 16)}, int(rng() % 256)});
        const GrnnModel model = grnn_train(ts, 2.0);
        std::vector<PixelCoord> queries;
        for (int i = 0; i < 100; ++i) queries.push_back({int(rng() % 16), int(rng() % 16)});
        const std::vector<double> batch = grnn_predict_batch(model, queries);
        REQUIRE(batch.size() == queries.size());
        for (std::size_t i = 0; i < queries.size(); ++i)
            CHECK(batch[i] == grnn_predict(model, queries[i]));
    }
}
