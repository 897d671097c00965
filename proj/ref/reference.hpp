#pragma once

// Serial reference implementations for the tests and benchmarks. Each one
// recomputes its result by the most literal route available (direct window
// sums, all-pairs distance scans, a third-party LU factorization) so that
// agreement with the library is evidence, not tautology.

#include <vector>

#include "radinpaint/band.hpp"
#include "radinpaint/image.hpp"
#include "radinpaint/lssvm.hpp"

namespace radinpaint::ref {

// Direct O(W*H*R^2) window mean with in-bounds normalization.
RealGrid box_filter_naive(const RealGrid& grid, int radius);

// All-pairs Chebyshev scan: a known pixel is in the band iff some center lies
// within floor(radius/2) in both axes.
std::vector<PixelCoord> band_all_pairs(const DamageMask& mask, int radius,
                                       const std::vector<PixelCoord>* focus = nullptr);

// Unshifted long-double evaluation of the Gaussian-weighted mean.
double grnn_direct(const std::vector<PixelCoord>& positions, const std::vector<double>& targets,
                   double sigma, PixelCoord query);

struct KktSolution {
    std::vector<double> alphas;
    double bias = 0.0;
};

// Dense KKT solve through Eigen's full-pivot LU; kernel values are computed
// here from scratch. Inputs must already be distinct.
KktSolution kkt_solve(const std::vector<std::vector<double>>& inputs,
                      const std::vector<double>& targets, const Kernel& kernel, double gamma);

double kkt_predict(const KktSolution& sol, const std::vector<std::vector<double>>& inputs,
                   const Kernel& kernel, const std::vector<double>& q);

// 8-connected components by union-find, sorted size ascending with row-major
// first-member tie-break; each component's coords are row-major sorted.
std::vector<std::vector<PixelCoord>> regions_union_find(const DamageMask& mask);

}  // namespace radinpaint::ref
