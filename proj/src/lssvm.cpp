#include "radinpaint/lssvm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

namespace radinpaint {

namespace {

void check_kernel(const Kernel& k) {
    if (!(k.bandwidth_x > 0.0) || !std::isfinite(k.bandwidth_x))
        throw std::invalid_argument("lssvm: kernel bandwidth must be finite and positive");
    if (k.kind == KernelKind::Additive2d &&
        (!(k.bandwidth_y > 0.0) || !std::isfinite(k.bandwidth_y)))
        throw std::invalid_argument("lssvm: kernel bandwidth must be finite and positive");
}

void check_pair(const GrayImage& img, const DamageMask& mask) {
    validate(img);
    validate(mask);
    if (img.width != mask.width || img.height != mask.height)
        throw std::invalid_argument("lssvm: image is " + std::to_string(img.width) + "x" +
                                    std::to_string(img.height) + " but mask is " +
                                    std::to_string(mask.width) + "x" +
                                    std::to_string(mask.height));
}

}  // namespace

int kernel_dim(KernelKind kind) { return kind == KernelKind::Rbf1d ? 1 : 2; }

double kernel_eval(const Kernel& k, std::span<const double> u, std::span<const double> v) {
    check_kernel(k);
    const std::size_t dim = std::size_t(kernel_dim(k.kind));
    if (u.size() != dim || v.size() != dim)
        throw std::invalid_argument("lssvm: kernel expects " + std::to_string(dim) +
                                    "-d inputs, got " + std::to_string(u.size()) + " and " +
                                    std::to_string(v.size()));
    switch (k.kind) {
        case KernelKind::Rbf1d: {
            const double d = u[0] - v[0];
            return std::exp(-(d * d) / (k.bandwidth_x * k.bandwidth_x));
        }
        case KernelKind::Rbf2d: {
            const double dx = u[0] - v[0], dy = u[1] - v[1];
            return std::exp(-(dx * dx + dy * dy) / (k.bandwidth_x * k.bandwidth_x));
        }
        case KernelKind::Additive2d: {
            const double dx = u[0] - v[0], dy = u[1] - v[1];
            return std::exp(-(dx * dx) / (k.bandwidth_x * k.bandwidth_x)) +
                   std::exp(-(dy * dy) / (k.bandwidth_y * k.bandwidth_y));
        }
    }
    throw std::logic_error("lssvm: unknown kernel kind");
}

namespace detail {

void solve_linear_system(std::vector<double>& a, std::vector<double>& rhs, std::size_t n) {
    if (a.size() != n * n || rhs.size() != n)
        throw std::invalid_argument("lssvm: solver shape mismatch");
    double scale = 0.0;
    for (double v : a) scale = std::max(scale, std::abs(v));
    const double tol = 1e-12 * (scale > 0.0 ? scale : 1.0);

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(a[k * n + k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double cand = std::abs(a[i * n + k]);
            if (cand > best) {
                best = cand;
                p = i;
            }
        }
        if (best < tol)
            throw std::runtime_error(
                "lssvm: KKT system is numerically singular at column " + std::to_string(k) +
                "; try a larger gamma or deduplicated inputs");
        if (p != k) {
            std::swap_ranges(a.begin() + std::ptrdiff_t(k * n), a.begin() + std::ptrdiff_t((k + 1) * n),
                             a.begin() + std::ptrdiff_t(p * n));
            std::swap(rhs[k], rhs[p]);
        }
        const double pivot = a[k * n + k];
        const double* krow = a.data() + k * n;
        const std::ptrdiff_t lo = std::ptrdiff_t(k) + 1, hi = std::ptrdiff_t(n);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = lo; i < hi; ++i) {
            double* irow = a.data() + std::size_t(i) * n;
            const double f = irow[k] / pivot;
            if (f != 0.0) {
                for (std::size_t j = k + 1; j < n; ++j) irow[j] -= f * krow[j];
                rhs[std::size_t(i)] -= f * rhs[k];
            }
            irow[k] = 0.0;
        }
    }

    for (std::size_t k = n; k-- > 0;) {
        double s = rhs[k];
        const double* krow = a.data() + k * n;
        for (std::size_t j = k + 1; j < n; ++j) s -= krow[j] * rhs[j];
        rhs[k] = s / krow[k];
    }
}

}  // namespace detail

LssvmModel lssvm_train(std::span<const double> inputs, int dim, std::span<const double> targets,
                       const Kernel& kernel, double gamma) {
    check_kernel(kernel);
    if (dim != kernel_dim(kernel.kind))
        throw std::invalid_argument("lssvm: input dimension " + std::to_string(dim) +
                                    " does not match the kernel");
    if (targets.empty()) throw std::invalid_argument("lssvm: empty training set");
    if (inputs.size() != targets.size() * std::size_t(dim))
        throw std::invalid_argument("lssvm: inputs/targets size mismatch");
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw std::invalid_argument("lssvm: gamma must be finite and positive, got " +
                                    std::to_string(gamma));

    // Merge duplicate inputs (first-occurrence order, targets averaged).
    std::map<std::vector<double>, std::size_t> seen;
    std::vector<double> xs;
    std::vector<double> sums;
    std::vector<std::size_t> counts;
    for (std::size_t s = 0; s < targets.size(); ++s) {
        std::vector<double> v(inputs.begin() + std::ptrdiff_t(s) * dim,
                              inputs.begin() + std::ptrdiff_t(s + 1) * dim);
        auto [it, inserted] = seen.try_emplace(std::move(v), sums.size());
        if (inserted) {
            xs.insert(xs.end(), it->first.begin(), it->first.end());
            sums.push_back(targets[s]);
            counts.push_back(1);
        } else {
            sums[it->second] += targets[s];
            ++counts[it->second];
        }
    }
    const std::size_t n = sums.size();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = sums[i] / double(counts[i]);

    const std::size_t m = n + 1;
    std::vector<double> a(m * m, 0.0);
    for (std::size_t j = 1; j < m; ++j) {
        a[j] = 1.0;
        a[j * m] = 1.0;
    }
    const std::ptrdiff_t ni = std::ptrdiff_t(n);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < ni; ++i) {
        const std::span<const double> xi{xs.data() + std::size_t(i) * dim, std::size_t(dim)};
        for (std::size_t j = std::size_t(i); j < n; ++j) {
            const std::span<const double> xj{xs.data() + j * dim, std::size_t(dim)};
            const double kv = kernel_eval(kernel, xi, xj);
            a[(std::size_t(i) + 1) * m + (j + 1)] = kv;
            a[(j + 1) * m + (std::size_t(i) + 1)] = kv;
        }
    }
    const double inv_gamma = 1.0 / gamma;
    for (std::size_t i = 0; i < n; ++i) a[(i + 1) * m + (i + 1)] += inv_gamma;

    std::vector<double> rhs(m, 0.0);
    std::copy(y.begin(), y.end(), rhs.begin() + 1);
    detail::solve_linear_system(a, rhs, m);

    LssvmModel model;
    model.dim = dim;
    model.inputs = std::move(xs);
    model.bias = rhs[0];
    model.alphas.assign(rhs.begin() + 1, rhs.end());
    model.kernel = kernel;
    model.gamma = gamma;
    return model;
}

double lssvm_predict(const LssvmModel& model, std::span<const double> q) {
    if (q.size() != std::size_t(model.dim))
        throw std::invalid_argument("lssvm: query dimension " + std::to_string(q.size()) +
                                    " does not match the model's " + std::to_string(model.dim));
    double s = model.bias;
    for (std::size_t i = 0; i < model.size(); ++i)
        s += model.alphas[i] * kernel_eval(model.kernel, q, model.input(i));
    return s;
}

DirectionalFill rd_fill(const GrayImage& img, const DamageMask& mask, const Kernel& kernel,
                        double gamma) {
    check_pair(img, mask);
    if (kernel.kind != KernelKind::Rbf1d)
        throw std::invalid_argument("rd/cd: kernel must be RBF-1D");
    const int w = img.width, h = img.height;
    DirectionalFill out{RealGrid::zeros(w, h), std::vector<uint8_t>(std::size_t(w) * h, 0)};

    int err_row = std::numeric_limits<int>::max();
    std::string err_what;
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < h; ++r) {
        std::vector<double> cols, vals;
        std::vector<int> damaged;
        for (int c = 0; c < w; ++c) {
            if (mask.known(r, c)) {
                cols.push_back(double(c));
                vals.push_back(double(img.at(r, c)));
            } else {
                damaged.push_back(c);
            }
        }
        if (damaged.empty() || cols.empty()) continue;
        try {
            const LssvmModel model = lssvm_train(cols, 1, vals, kernel, gamma);
            for (int c : damaged) {
                const double q = double(c);
                out.values.at(r, c) = lssvm_predict(model, {&q, 1});
                out.resolved[std::size_t(r) * w + c] = 1;
            }
        } catch (const std::exception& e) {
#pragma omp critical
            if (r < err_row) {
                err_row = r;
                err_what = e.what();
            }
        }
    }
    if (err_row != std::numeric_limits<int>::max())
        throw std::runtime_error("rd: row " + std::to_string(err_row) + ": " + err_what);
    return out;
}

DirectionalFill cd_fill(const GrayImage& img, const DamageMask& mask, const Kernel& kernel,
                        double gamma) {
    const DirectionalFill t = rd_fill(transpose(img), transpose(mask), kernel, gamma);
    const int w = img.width, h = img.height;
    DirectionalFill out{RealGrid::zeros(w, h), std::vector<uint8_t>(std::size_t(w) * h, 0)};
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            out.values.at(r, c) = t.values.at(c, r);
            out.resolved[std::size_t(r) * w + c] = t.resolved[std::size_t(c) * h + r];
        }
    return out;
}

namespace {

ModeResult assemble(const GrayImage& img, const DamageMask& mask,
                    const DirectionalFill* rdv, const DirectionalFill* cdv) {
    ModeResult res{img, {}};
    const int max_value = img.max_value();
    for (int r = 0; r < img.height; ++r)
        for (int c = 0; c < img.width; ++c) {
            if (mask.known(r, c)) continue;
            const bool has_rd = rdv && rdv->is_resolved(r, c);
            const bool has_cd = cdv && cdv->is_resolved(r, c);
            if (has_rd && has_cd)
                res.image.at(r, c) = quantize_intensity(
                    (rdv->values.at(r, c) + cdv->values.at(r, c)) / 2.0, max_value);
            else if (has_rd)
                res.image.at(r, c) = quantize_intensity(rdv->values.at(r, c), max_value);
            else if (has_cd)
                res.image.at(r, c) = quantize_intensity(cdv->values.at(r, c), max_value);
            else
                res.unresolved.push_back({r, c});
        }
    return res;
}

}  // namespace

ModeResult rd_inpaint(const GrayImage& img, const DamageMask& mask, const Kernel& kernel,
                      double gamma) {
    const DirectionalFill f = rd_fill(img, mask, kernel, gamma);
    return assemble(img, mask, &f, nullptr);
}

ModeResult cd_inpaint(const GrayImage& img, const DamageMask& mask, const Kernel& kernel,
                      double gamma) {
    const DirectionalFill f = cd_fill(img, mask, kernel, gamma);
    return assemble(img, mask, nullptr, &f);
}

ModeResult rc_inpaint(const GrayImage& img, const DamageMask& mask, const Kernel& kernel,
                      double gamma) {
    const DirectionalFill r = rd_fill(img, mask, kernel, gamma);
    const DirectionalFill c = cd_fill(img, mask, kernel, gamma);
    return assemble(img, mask, &r, &c);
}

ModeResult two_kernel_inpaint(const GrayImage& img, const DamageMask& mask, const Kernel& kernel,
                              double gamma, std::size_t train_cap) {
    check_pair(img, mask);
    if (kernel.kind == KernelKind::Rbf1d)
        throw std::invalid_argument("2k: kernel must be Additive-2D or RBF-2D");
    if (train_cap == 0) throw std::invalid_argument("2k: train cap must be positive");
    const int w = img.width, h = img.height;

    std::vector<PixelCoord> damaged;
    std::vector<std::size_t> known_idx;
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            if (mask.known(r, c))
                known_idx.push_back(std::size_t(r) * w + c);
            else
                damaged.push_back({r, c});
        }
    if (damaged.empty()) return {img, {}};
    if (known_idx.empty()) throw std::runtime_error("2k: no known pixels to train on");

    if (known_idx.size() > train_cap) {
        // Chebyshev distance to the damaged set via multi-source flood over
        // the 8-neighborhood; keep the closest pixels, row-major tie-break.
        std::vector<int> dist(std::size_t(w) * h, -1);
        std::deque<std::size_t> queue;
        for (const PixelCoord& p : damaged) {
            dist[std::size_t(p.row) * w + p.col] = 0;
            queue.push_back(std::size_t(p.row) * w + p.col);
        }
        while (!queue.empty()) {
            const std::size_t idx = queue.front();
            queue.pop_front();
            const int r = int(idx / std::size_t(w)), c = int(idx % std::size_t(w));
            for (int dr = -1; dr <= 1; ++dr)
                for (int dc = -1; dc <= 1; ++dc) {
                    const int nr = r + dr, nc = c + dc;
                    if (nr < 0 || nr >= h || nc < 0 || nc >= w) continue;
                    const std::size_t nidx = std::size_t(nr) * w + nc;
                    if (dist[nidx] < 0) {
                        dist[nidx] = dist[idx] + 1;
                        queue.push_back(nidx);
                    }
                }
        }
        std::stable_sort(known_idx.begin(), known_idx.end(),
                         [&dist](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
        known_idx.resize(train_cap);
        std::sort(known_idx.begin(), known_idx.end());
    }

    std::vector<double> inputs;
    std::vector<double> targets;
    inputs.reserve(known_idx.size() * 2);
    targets.reserve(known_idx.size());
    for (std::size_t idx : known_idx) {
        inputs.push_back(double(idx / std::size_t(w)));
        inputs.push_back(double(idx % std::size_t(w)));
        targets.push_back(double(img.pixels[idx]));
    }
    const LssvmModel model = lssvm_train(inputs, 2, targets, kernel, gamma);

    ModeResult res{img, {}};
    const int max_value = img.max_value();
    const std::ptrdiff_t nd = std::ptrdiff_t(damaged.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < nd; ++i) {
        const PixelCoord p = damaged[std::size_t(i)];
        const double q[2] = {double(p.row), double(p.col)};
        res.image.at(p.row, p.col) = quantize_intensity(lssvm_predict(model, q), max_value);
    }
    return res;
}

}  // namespace radinpaint
