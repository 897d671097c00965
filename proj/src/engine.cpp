#include "radinpaint/engine.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <stdexcept>
#include <string>

#include "radinpaint/grnn.hpp"

namespace radinpaint {

std::vector<DamageRegion> find_regions(const DamageMask& mask) {
    validate(mask);
    const int w = mask.width, h = mask.height;
    std::vector<uint8_t> visited(mask.pixel_count(), 0);
    std::vector<DamageRegion> regions;

    std::deque<PixelCoord> queue;
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            if (mask.known(r, c) || visited[std::size_t(r) * w + c]) continue;
            DamageRegion region;
            visited[std::size_t(r) * w + c] = 1;
            queue.push_back({r, c});
            while (!queue.empty()) {
                const PixelCoord p = queue.front();
                queue.pop_front();
                region.coords.push_back(p);
                for (int dr = -1; dr <= 1; ++dr)
                    for (int dc = -1; dc <= 1; ++dc) {
                        const int nr = p.row + dr, nc = p.col + dc;
                        if (nr < 0 || nr >= h || nc < 0 || nc >= w) continue;
                        if (mask.known(nr, nc) || visited[std::size_t(nr) * w + nc]) continue;
                        visited[std::size_t(nr) * w + nc] = 1;
                        queue.push_back({nr, nc});
                    }
            }
            std::sort(region.coords.begin(), region.coords.end());
            regions.push_back(std::move(region));
        }

    std::sort(regions.begin(), regions.end(), [](const DamageRegion& a, const DamageRegion& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.coords.front() < b.coords.front();
    });
    return regions;
}

namespace {

void fill_grnn(GrayImage& state, DamageMask& state_mask, const DamageMask& original_mask,
               const std::vector<DamageRegion>& regions, const GrnnConfig& grnn,
               const RegressorConfig& cfg, InpaintReport& report) {
    const int max_radius = 2 * std::max(state.width, state.height) - 1;
    const int max_value = state.max_value();
    for (const DamageRegion& region : regions) {
        const DamageMask& train_mask = cfg.progressive ? state_mask : original_mask;
        int radius = cfg.radius;
        std::vector<PixelCoord> band = compute_band(train_mask, radius, &region.coords);
        while (band.empty() && radius + 2 <= max_radius) {
            radius += 2;
            band = compute_band(train_mask, radius, &region.coords);
        }
        if (band.empty())
            throw std::runtime_error("engine: no known pixel within any radius of the region at (" +
                                     std::to_string(region.coords.front().row) + "," +
                                     std::to_string(region.coords.front().col) + ")");

        TrainingSet ts = select_training(state, train_mask, radius, &region.coords);
        const GrnnModel model = grnn_train(ts, grnn.sigma);
        const std::vector<double> values = grnn_predict_batch(model, region.coords);
        for (std::size_t i = 0; i < region.coords.size(); ++i) {
            const PixelCoord p = region.coords[i];
            state.at(p.row, p.col) = quantize_intensity(values[i], max_value);
            if (cfg.progressive) state_mask.set_known(p.row, p.col, true);
        }
        report.regions.push_back({region.size(), band.size(), ts.samples.size()});
    }
    report.output = std::move(state);
}

void fill_lssvm(GrayImage& state, const DamageMask& mask,
                const std::vector<DamageRegion>& regions, const LssvmConfig& ls,
                InpaintReport& report) {
    ModeResult mr;
    switch (ls.mode) {
        case LssvmMode::Rd: mr = rd_inpaint(state, mask, ls.kernel, ls.gamma); break;
        case LssvmMode::Cd: mr = cd_inpaint(state, mask, ls.kernel, ls.gamma); break;
        case LssvmMode::Rc: mr = rc_inpaint(state, mask, ls.kernel, ls.gamma); break;
        case LssvmMode::TwoKernel:
            mr = two_kernel_inpaint(state, mask, ls.kernel, ls.gamma, ls.train_cap);
            break;
    }
    if (!mr.unresolved.empty()) {
        std::vector<PixelCoord> leftover_pixels = std::move(mr.unresolved);
        DamageMask leftover = DamageMask::filled(mask.width, mask.height, true);
        for (const PixelCoord& p : leftover_pixels) leftover.set_known(p.row, p.col, false);
        const Kernel additive{KernelKind::Additive2d, ls.kernel.bandwidth_x,
                              ls.kernel.bandwidth_x};
        ModeResult pass = two_kernel_inpaint(mr.image, leftover, additive, ls.gamma, ls.train_cap);
        mr.image = std::move(pass.image);
        report.fallback = std::move(leftover_pixels);
    }
    for (const DamageRegion& region : regions) report.regions.push_back({region.size(), 0, 0});
    report.output = std::move(mr.image);
}

}  // namespace

InpaintReport inpaint(const GrayImage& img, const DamageMask& mask, const RegressorConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    validate(img);
    validate(mask);
    if (img.width != mask.width || img.height != mask.height)
        throw std::invalid_argument("engine: image is " + std::to_string(img.width) + "x" +
                                    std::to_string(img.height) + " but mask is " +
                                    std::to_string(mask.width) + "x" +
                                    std::to_string(mask.height));
    band_radius(cfg.radius);

    InpaintReport report;
    const std::size_t damaged = mask.damaged_count();
    if (damaged == mask.pixel_count())
        throw std::runtime_error("engine: image is entirely damaged, nothing to train on");

    GrayImage state = img;
    if (damaged == 0) {
        report.output = std::move(state);
    } else {
        const std::vector<DamageRegion> regions = find_regions(mask);
        if (const GrnnConfig* grnn = std::get_if<GrnnConfig>(&cfg.method)) {
            DamageMask state_mask = mask;
            fill_grnn(state, state_mask, mask, regions, *grnn, cfg, report);
        } else {
            fill_lssvm(state, mask, regions, std::get<LssvmConfig>(cfg.method), report);
        }
    }

    const auto end = std::chrono::steady_clock::now();
    report.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(end - start).count();
    return report;
}

}  // namespace radinpaint
