#include "reference.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace radinpaint::ref {

RealGrid box_filter_naive(const RealGrid& grid, int radius) {
    const int half = radius / 2;
    RealGrid out = RealGrid::zeros(grid.width, grid.height);
    for (int r = 0; r < grid.height; ++r)
        for (int c = 0; c < grid.width; ++c) {
            double sum = 0.0;
            int count = 0;
            for (int dr = -half; dr <= half; ++dr)
                for (int dc = -half; dc <= half; ++dc) {
                    const int nr = r + dr, nc = c + dc;
                    if (nr < 0 || nr >= grid.height || nc < 0 || nc >= grid.width) continue;
                    sum += grid.at(nr, nc);
                    ++count;
                }
            out.at(r, c) = sum / double(count);
        }
    return out;
}

std::vector<PixelCoord> band_all_pairs(const DamageMask& mask, int radius,
                                       const std::vector<PixelCoord>* focus) {
    const int half = radius / 2;
    std::vector<PixelCoord> centers;
    if (focus) {
        centers = *focus;
    } else {
        for (int r = 0; r < mask.height; ++r)
            for (int c = 0; c < mask.width; ++c)
                if (!mask.known(r, c)) centers.push_back({r, c});
    }
    std::vector<PixelCoord> band;
    for (int r = 0; r < mask.height; ++r)
        for (int c = 0; c < mask.width; ++c) {
            if (!mask.known(r, c)) continue;
            for (const PixelCoord& p : centers) {
                if (std::abs(p.row - r) <= half && std::abs(p.col - c) <= half) {
                    band.push_back({r, c});
                    break;
                }
            }
        }
    return band;
}

double grnn_direct(const std::vector<PixelCoord>& positions, const std::vector<double>& targets,
                   double sigma, PixelCoord query) {
    long double num = 0.0L, den = 0.0L;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        const long double dr = query.row - positions[i].row;
        const long double dc = query.col - positions[i].col;
        const long double w = expl(-(dr * dr + dc * dc) / (2.0L * (long double)(sigma) * sigma));
        num += w * (long double)(targets[i]);
        den += w;
    }
    return double(num / den);
}

namespace {

double ref_kernel(const Kernel& k, const std::vector<double>& u, const std::vector<double>& v) {
    if (k.kind == KernelKind::Rbf1d) {
        const double d = u[0] - v[0];
        return std::exp(-d * d / (k.bandwidth_x * k.bandwidth_x));
    }
    if (k.kind == KernelKind::Rbf2d) {
        const double dx = u[0] - v[0], dy = u[1] - v[1];
        return std::exp(-(dx * dx + dy * dy) / (k.bandwidth_x * k.bandwidth_x));
    }
    const double dx = u[0] - v[0], dy = u[1] - v[1];
    return std::exp(-dx * dx / (k.bandwidth_x * k.bandwidth_x)) +
           std::exp(-dy * dy / (k.bandwidth_y * k.bandwidth_y));
}

}  // namespace

KktSolution kkt_solve(const std::vector<std::vector<double>>& inputs,
                      const std::vector<double>& targets, const Kernel& kernel, double gamma) {
    const Eigen::Index n = Eigen::Index(inputs.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n + 1, n + 1);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
    for (Eigen::Index i = 0; i < n; ++i) {
        a(0, i + 1) = 1.0;
        a(i + 1, 0) = 1.0;
        rhs(i + 1) = targets[std::size_t(i)];
        for (Eigen::Index j = 0; j < n; ++j)
            a(i + 1, j + 1) = ref_kernel(kernel, inputs[std::size_t(i)], inputs[std::size_t(j)]);
        a(i + 1, i + 1) += 1.0 / gamma;
    }
    const Eigen::VectorXd x = a.fullPivLu().solve(rhs);
    KktSolution sol;
    sol.bias = x(0);
    sol.alphas.assign(x.data() + 1, x.data() + n + 1);
    return sol;
}

double kkt_predict(const KktSolution& sol, const std::vector<std::vector<double>>& inputs,
                   const Kernel& kernel, const std::vector<double>& q) {
    double s = sol.bias;
    for (std::size_t i = 0; i < inputs.size(); ++i)
        s += sol.alphas[i] * ref_kernel(kernel, q, inputs[i]);
    return s;
}

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;

    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<std::vector<PixelCoord>> regions_union_find(const DamageMask& mask) {
    const int w = mask.width, h = mask.height;
    UnionFind uf(mask.pixel_count());
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            if (mask.known(r, c)) continue;
            for (int dr = -1; dr <= 1; ++dr)
                for (int dc = -1; dc <= 1; ++dc) {
                    const int nr = r + dr, nc = c + dc;
                    if (nr < 0 || nr >= h || nc < 0 || nc >= w) continue;
                    if (!mask.known(nr, nc))
                        uf.unite(std::size_t(r) * w + c, std::size_t(nr) * w + nc);
                }
        }
    std::vector<std::vector<PixelCoord>> by_root(mask.pixel_count());
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            if (!mask.known(r, c)) by_root[uf.find(std::size_t(r) * w + c)].push_back({r, c});
    std::vector<std::vector<PixelCoord>> regions;
    for (std::vector<PixelCoord>& coords : by_root)
        if (!coords.empty()) regions.push_back(std::move(coords));
    for (std::vector<PixelCoord>& coords : regions) std::sort(coords.begin(), coords.end());
    std::sort(regions.begin(), regions.end(),
              [](const std::vector<PixelCoord>& a, const std::vector<PixelCoord>& b) {
                  if (a.size() != b.size()) return a.size() < b.size();
                  return a.front() < b.front();
              });
    return regions;
}

}  // namespace radinpaint::ref
