#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "radinpaint/band.hpp"
#include "radinpaint/image.hpp"

namespace radinpaint {

// RBF kinds evaluate exp(-|u-v|^2 / sigma^2) over 1-D or 2-D inputs, so their
// range is (0,1]. Additive2d sums one RBF per axis,
// exp(-dx^2/sx^2) + exp(-dy^2/sy^2), with range (0,2].
enum class KernelKind { Rbf1d, Rbf2d, Additive2d };

struct Kernel {
    KernelKind kind = KernelKind::Rbf1d;
    double bandwidth_x = 5.0;
    double bandwidth_y = 5.0;  // Additive2d only; the RBF kinds use bandwidth_x alone
};

int kernel_dim(KernelKind kind);
double kernel_eval(const Kernel& k, std::span<const double> u, std::span<const double> v);

struct LssvmModel {
    int dim = 1;
    std::vector<double> inputs;  // size() * dim, sample-major
    std::vector<double> alphas;
    double bias = 0.0;
    Kernel kernel;
    double gamma = 100.0;

    std::size_t size() const { return alphas.size(); }
    std::span<const double> input(std::size_t i) const {
        return {inputs.data() + i * std::size_t(dim), std::size_t(dim)};
    }
};

// Solves the dual KKT system
//
//   [ 0   1^T          ] [b]     [0]
//   [ 1   Omega + I/g  ] [alpha] [y],    Omega_ij = K(x_i, x_j),
//
// by Gaussian elimination with partial pivoting. Duplicate input vectors are
// merged up front (targets averaged) so repeated coordinates cannot make the
// system exactly singular; a pivot below 1e-12 of the matrix scale still
// aborts with an error suggesting a larger gamma or deduplicated inputs.
LssvmModel lssvm_train(std::span<const double> inputs, int dim, std::span<const double> targets,
                       const Kernel& kernel, double gamma);

// f(q) = sum_i alpha_i K(q, x_i) + b.
double lssvm_predict(const LssvmModel& model, std::span<const double> q);

// One whole-image directional pass. values holds the pre-rounding prediction
// at every damaged pixel whose row (column) could be trained; pixels in rows
// with no known sample stay unresolved. Row models are independent and are
// trained in parallel; every slot is written by exactly one row.
struct DirectionalFill {
    RealGrid values;
    std::vector<uint8_t> resolved;

    bool is_resolved(int row, int col) const {
        return resolved[std::size_t(row) * values.width + col] != 0;
    }
};

DirectionalFill rd_fill(const GrayImage& img, const DamageMask& mask, const Kernel& kernel,
                        double gamma);
DirectionalFill cd_fill(const GrayImage& img, const DamageMask& mask, const Kernel& kernel,
                        double gamma);

struct ModeResult {
    GrayImage image;
    std::vector<PixelCoord> unresolved;  // row-major; empty when every pixel was filled
};

// Per-row models, column index in, intensity out.
ModeResult rd_inpaint(const GrayImage& img, const DamageMask& mask, const Kernel& kernel,
                      double gamma);
// rd transposed: cd(img) = transpose(rd(transpose(img))) by construction.
ModeResult cd_inpaint(const GrayImage& img, const DamageMask& mask, const Kernel& kernel,
                      double gamma);
// Mean of the rd and cd pre-rounding reals, rounded once; falls back to the
// single resolved direction where only one produced a value.
ModeResult rc_inpaint(const GrayImage& img, const DamageMask& mask, const Kernel& kernel,
                      double gamma);
// One model over 2-D (row, col) inputs covering the whole image. When the
// known-pixel count exceeds train_cap, training keeps the pixels closest to
// the damage (Chebyshev distance, row-major tie-break).
ModeResult two_kernel_inpaint(const GrayImage& img, const DamageMask& mask, const Kernel& kernel,
                              double gamma, std::size_t train_cap = 4000);

namespace detail {
// Dense in-place Gaussian elimination with partial pivoting; a is row-major
// n x n and is destroyed. Throws std::runtime_error when the best available
// pivot falls below 1e-12 of the largest initial |a_ij|.
void solve_linear_system(std::vector<double>& a, std::vector<double>& rhs, std::size_t n);
}  // namespace detail

}  // namespace radinpaint
