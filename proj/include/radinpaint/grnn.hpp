#pragma once

#include <vector>

#include "radinpaint/band.hpp"

namespace radinpaint {

// General regression network over pixel coordinates. Training is storage; all
// work happens at prediction time as a Gaussian-weighted average of the stored
// intensities,
//
//   f(q) = sum_i w_i y_i / sum_i w_i,   w_i = exp(-D_i^2 / (2 sigma^2)),
//
// where D_i^2 is the squared Euclidean distance between q and sample i in
// pixel units. The smallest D_i^2 is subtracted from every exponent before
// evaluation; this rescales numerator and denominator by the same factor, so
// the quotient is unchanged while the largest weight becomes exactly 1 and the
// sum can never underflow to 0/0. The result is clamped to the range of the
// stored targets, making the predictor interpolating by construction.
struct GrnnModel {
    std::vector<PixelCoord> positions;
    std::vector<double> targets;
    double sigma = 2.0;
};

GrnnModel grnn_train(const TrainingSet& training, double sigma);

double grnn_predict(const GrnnModel& model, PixelCoord query);

// Independent queries, evaluated in parallel. Each output slot is written by
// exactly one iteration and the per-query arithmetic is serial, so the result
// is identical at any thread count.
std::vector<double> grnn_predict_batch(const GrnnModel& model,
                                       const std::vector<PixelCoord>& queries);

}  // namespace radinpaint
