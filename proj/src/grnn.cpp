#include "radinpaint/grnn.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

namespace radinpaint {

GrnnModel grnn_train(const TrainingSet& training, double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw std::invalid_argument("grnn: sigma must be a finite positive value, got " +
                                    std::to_string(sigma));
    if (training.samples.empty()) throw std::invalid_argument("grnn: empty training set");
    GrnnModel model;
    model.sigma = sigma;
    model.positions.reserve(training.samples.size());
    model.targets.reserve(training.samples.size());
    for (const TrainingSample& s : training.samples) {
        model.positions.push_back(s.pos);
        model.targets.push_back(double(s.value));
    }
    return model;
}

double grnn_predict(const GrnnModel& model, PixelCoord query) {
    const std::size_t n = model.positions.size();
    if (n == 0) throw std::invalid_argument("grnn: model has no samples");

    double min_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const double dr = double(query.row - model.positions[i].row);
        const double dc = double(query.col - model.positions[i].col);
        const double d2 = dr * dr + dc * dc;
        if (d2 < min_d2) min_d2 = d2;
    }

    const double inv_two_sigma2 = 1.0 / (2.0 * model.sigma * model.sigma);
    double num = 0.0, den = 0.0;
    double lo = model.targets[0], hi = model.targets[0];
    for (std::size_t i = 0; i < n; ++i) {
        const double dr = double(query.row - model.positions[i].row);
        const double dc = double(query.col - model.positions[i].col);
        const double d2 = dr * dr + dc * dc;
        const double w = std::exp(-(d2 - min_d2) * inv_two_sigma2);
        num += w * model.targets[i];
        den += w;
        lo = std::min(lo, model.targets[i]);
        hi = std::max(hi, model.targets[i]);
    }
    return std::clamp(num / den, lo, hi);
}

std::vector<double> grnn_predict_batch(const GrnnModel& model,
                                       const std::vector<PixelCoord>& queries) {
    std::vector<double> out(queries.size());
    const std::ptrdiff_t n = std::ptrdiff_t(queries.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[std::size_t(i)] = grnn_predict(model, queries[std::size_t(i)]);
    return out;
}

}  // namespace radinpaint
