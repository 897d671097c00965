#include "radinpaint/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

#include "radinpaint/metrics.hpp"

namespace radinpaint {

namespace {

[[noreturn]] void spec_error(const std::string& msg) {
    throw std::invalid_argument("mask spec: " + msg);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
    T out{};
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        spec_error("bad value '" + std::string(value) + "' for " + std::string(key));
    return out;
}

void appendf(std::string& out, const char* fmt, ...) {
    char buf[256];
    va_list args;
    va_start(args, fmt);
    vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    out += buf;
}

std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char ch : s) switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += ch;
        }
    return out;
}

}  // namespace

void validate(const MaskSpec& spec) {
    if (spec.count < 1) spec_error("count must be positive");
    if (spec.block_w < 1 || spec.block_h < 1) spec_error("block dimensions must be positive");
    if (spec.thickness < 1) spec_error("thickness must be positive");
    if (!std::isfinite(spec.fraction) || !(spec.fraction > 0.0) || spec.fraction > 0.5)
        spec_error("fraction must be in (0, 0.5]");
}

MaskSpec parse_mask_spec(std::string_view text) {
    MaskSpec spec;
    bool kind_seen = false;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find_first_of(",\n", pos);
        if (end == std::string_view::npos) end = text.size();
        const std::string_view token = trim(text.substr(pos, end - pos));
        pos = end + 1;
        if (token.empty()) continue;
        const std::size_t eq = token.find('=');
        if (eq == std::string_view::npos)
            spec_error("expected key=value, got '" + std::string(token) + "'");
        const std::string_view key = trim(token.substr(0, eq));
        const std::string_view value = trim(token.substr(eq + 1));
        if (key == "kind") {
            kind_seen = true;
            if (value == "blocks")
                spec.kind = MaskKind::SelectiveBlocks;
            else if (value == "scatter")
                spec.kind = MaskKind::RandomScatter;
            else if (value == "lines")
                spec.kind = MaskKind::Lines;
            else
                spec_error("unknown kind '" + std::string(value) +
                           "' (expected blocks, scatter, or lines)");
        } else if (key == "seed") {
            spec.seed = parse_number<uint64_t>(key, value);
        } else if (key == "count") {
            spec.count = parse_number<int>(key, value);
        } else if (key == "block_w") {
            spec.block_w = parse_number<int>(key, value);
        } else if (key == "block_h") {
            spec.block_h = parse_number<int>(key, value);
        } else if (key == "fraction") {
            spec.fraction = parse_number<double>(key, value);
        } else if (key == "thickness") {
            spec.thickness = parse_number<int>(key, value);
        } else {
            spec_error("unknown key '" + std::string(key) + "'");
        }
    }
    if (!kind_seen) spec_error("missing kind");
    validate(spec);
    return spec;
}

std::string mask_spec_id(const MaskSpec& spec) {
    char buf[96];
    switch (spec.kind) {
        case MaskKind::SelectiveBlocks:
            snprintf(buf, sizeof buf, "blocks-n%d-%dx%d-s%llu", spec.count, spec.block_w,
                     spec.block_h, static_cast<unsigned long long>(spec.seed));
            break;
        case MaskKind::RandomScatter:
            snprintf(buf, sizeof buf, "scatter-f%g-s%llu", spec.fraction,
                     static_cast<unsigned long long>(spec.seed));
            break;
        case MaskKind::Lines:
            snprintf(buf, sizeof buf, "lines-n%d-t%d-s%llu", spec.count, spec.thickness,
                     static_cast<unsigned long long>(spec.seed));
            break;
    }
    return buf;
}

DamageMask generate_mask(const MaskSpec& spec, int width, int height) {
    validate(spec);
    if (width < 1 || height < 1)
        throw std::invalid_argument("mask: dimensions must be positive, got " +
                                    std::to_string(width) + "x" + std::to_string(height));
    const std::size_t total = std::size_t(width) * std::size_t(height);
    DamageMask mask = DamageMask::filled(width, height, true);
    std::mt19937_64 rng(spec.seed);

    switch (spec.kind) {
        case MaskKind::SelectiveBlocks: {
            if (spec.block_w > width || spec.block_h > height)
                throw std::runtime_error("mask: a " + std::to_string(spec.block_w) + "x" +
                                         std::to_string(spec.block_h) + " block does not fit in " +
                                         std::to_string(width) + "x" + std::to_string(height));
            if (2 * std::size_t(spec.count) * std::size_t(spec.block_w) * std::size_t(spec.block_h) >
                total)
                throw std::runtime_error("mask: blocks would damage more than half the image");
            for (int b = 0; b < spec.count; ++b) {
                bool placed = false;
                for (int attempt = 0; attempt < 1000 && !placed; ++attempt) {
                    const int top = int(rng() % uint64_t(height - spec.block_h + 1));
                    const int left = int(rng() % uint64_t(width - spec.block_w + 1));
                    bool clear = true;
                    for (int r = top; clear && r < top + spec.block_h; ++r)
                        for (int c = left; c < left + spec.block_w; ++c)
                            if (!mask.known(r, c)) {
                                clear = false;
                                break;
                            }
                    if (!clear) continue;
                    for (int r = top; r < top + spec.block_h; ++r)
                        for (int c = left; c < left + spec.block_w; ++c)
                            mask.set_known(r, c, false);
                    placed = true;
                }
                if (!placed)
                    throw std::runtime_error("mask: could not place block " + std::to_string(b + 1) +
                                             " of " + std::to_string(spec.count) +
                                             " without overlap after 1000 attempts");
            }
            break;
        }
        case MaskKind::RandomScatter: {
            const std::size_t k = std::size_t(spec.fraction * double(total));
            std::vector<std::size_t> idx(total);
            std::iota(idx.begin(), idx.end(), std::size_t(0));
            for (std::size_t i = 0; i < k; ++i) {
                const std::size_t j = i + std::size_t(rng() % uint64_t(total - i));
                std::swap(idx[i], idx[j]);
                mask.flags[idx[i]] = 0;
            }
            break;
        }
        case MaskKind::Lines: {
            const bool fits_h = spec.thickness <= height;  // full-width strip
            const bool fits_v = spec.thickness <= width;   // full-height strip
            if (!fits_h && !fits_v)
                throw std::runtime_error("mask: line thickness " + std::to_string(spec.thickness) +
                                         " fits neither dimension of " + std::to_string(width) +
                                         "x" + std::to_string(height));
            for (int l = 0; l < spec.count; ++l) {
                bool horizontal = (rng() % 2) == 0;
                if (horizontal && !fits_h) horizontal = false;
                if (!horizontal && !fits_v) horizontal = true;
                if (horizontal) {
                    const int top = int(rng() % uint64_t(height - spec.thickness + 1));
                    for (int r = top; r < top + spec.thickness; ++r)
                        for (int c = 0; c < width; ++c) mask.set_known(r, c, false);
                } else {
                    const int left = int(rng() % uint64_t(width - spec.thickness + 1));
                    for (int r = 0; r < height; ++r)
                        for (int c = left; c < left + spec.thickness; ++c)
                            mask.set_known(r, c, false);
                }
            }
            if (2 * mask.damaged_count() > total)
                throw std::runtime_error("mask: lines damage more than half the image");
            break;
        }
    }
    return mask;
}

std::string_view method_name(Method m) {
    switch (m) {
        case Method::Grnn: return "GRNN";
        case Method::Rd: return "RD";
        case Method::Cd: return "CD";
        case Method::Rc: return "RC";
        case Method::Lssvm2k: return "LSSVM-2K";
    }
    throw std::logic_error("unknown method");
}

Method parse_method(std::string_view name) {
    if (name == "grnn") return Method::Grnn;
    if (name == "rd") return Method::Rd;
    if (name == "cd") return Method::Cd;
    if (name == "rc") return Method::Rc;
    if (name == "lssvm2k") return Method::Lssvm2k;
    throw std::invalid_argument("unknown method '" + std::string(name) +
                                "' (expected grnn, rd, cd, rc, or lssvm2k)");
}

std::vector<SweepRecord> radius_sweep(const GrayImage& img, const DamageMask& mask,
                                      const SweepParams& params) {
    validate(img);
    validate(mask);
    if (img.width != mask.width || img.height != mask.height)
        throw std::invalid_argument("sweep: image is " + std::to_string(img.width) + "x" +
                                    std::to_string(img.height) + " but mask is " +
                                    std::to_string(mask.width) + "x" +
                                    std::to_string(mask.height));
    if (params.methods.empty()) throw std::invalid_argument("sweep: no methods given");

    std::vector<Method> methods;
    for (Method m : params.methods)
        if (std::find(methods.begin(), methods.end(), m) == methods.end()) methods.push_back(m);
    if (std::find(methods.begin(), methods.end(), Method::Grnn) != methods.end()) {
        if (params.radii.empty())
            throw std::invalid_argument("sweep: grnn needs at least one radius");
        for (int r : params.radii) band_radius(r);
    }

    const GrayImage damaged = apply_mask(img, mask);
    std::vector<SweepRecord> records;

    auto run_cell = [&](Method m, int radius) {
        RegressorConfig cfg;
        cfg.progressive = params.progressive;
        if (m == Method::Grnn) {
            cfg.method = GrnnConfig{params.sigma};
            cfg.radius = radius;
        } else {
            LssvmConfig ls;
            ls.gamma = params.gamma;
            ls.train_cap = params.train_cap;
            switch (m) {
                case Method::Rd: ls.mode = LssvmMode::Rd; break;
                case Method::Cd: ls.mode = LssvmMode::Cd; break;
                case Method::Rc: ls.mode = LssvmMode::Rc; break;
                default: ls.mode = LssvmMode::TwoKernel; break;
            }
            ls.kernel = m == Method::Lssvm2k
                            ? Kernel{params.kernel2d, params.bandwidth, params.bandwidth}
                            : Kernel{KernelKind::Rbf1d, params.bandwidth, params.bandwidth};
            cfg.method = ls;
        }
        try {
            const InpaintReport report = inpaint(damaged, mask, cfg);
            SweepRecord rec;
            rec.image_id = params.image_id;
            rec.mask_id = params.mask_id;
            rec.method = std::string(method_name(m));
            rec.radius = m == Method::Grnn ? radius : 0;
            rec.mse = mse(img, report.output);
            rec.psnr_db = psnr(img, report.output);
            rec.wall_ms = params.stable_output ? 0 : report.wall_ms;
            records.push_back(std::move(rec));
        } catch (const std::exception& e) {
            std::string cell = "method=" + std::string(method_name(m));
            if (m == Method::Grnn) cell += " radius=" + std::to_string(radius);
            throw std::runtime_error("sweep: " + cell + ": " + e.what());
        }
    };

    for (Method m : methods) {
        if (m == Method::Grnn)
            for (int r : params.radii) run_cell(m, r);
        else
            run_cell(m, 0);
    }
    return records;
}

std::string emit_csv(const std::vector<SweepRecord>& records) {
    if (records.empty()) throw std::invalid_argument("csv: no records");
    std::string out = "image,mask,method,radius,psnr_db,mse,wall_ms\n";
    for (const SweepRecord& rec : records) {
        out += rec.image_id;
        out += ',';
        out += rec.mask_id;
        out += ',';
        out += rec.method;
        out += ',';
        out += std::to_string(rec.radius);
        out += ',';
        if (std::isinf(rec.psnr_db))
            out += "inf";
        else
            appendf(out, "%.4f", rec.psnr_db);
        out += ',';
        appendf(out, "%.4f", rec.mse);
        out += ',';
        out += std::to_string(rec.wall_ms);
        out += '\n';
    }
    return out;
}

std::string emit_bar_svg(const std::vector<SweepRecord>& records) {
    if (records.empty()) throw std::invalid_argument("svg: no records");
    const std::string& image_id = records.front().image_id;
    for (const SweepRecord& rec : records) {
        if (rec.image_id != image_id)
            throw std::invalid_argument("svg: mixed image ids ('" + image_id + "' vs '" +
                                        rec.image_id + "')");
        if (rec.method != "GRNN")
            throw std::invalid_argument("svg: only GRNN records can be plotted, got '" +
                                        rec.method + "'");
    }

    std::vector<int> radii;
    std::vector<std::string> masks;
    std::map<std::pair<int, std::size_t>, double> cell;
    for (const SweepRecord& rec : records) {
        if (std::find(radii.begin(), radii.end(), rec.radius) == radii.end())
            radii.push_back(rec.radius);
        const auto mit = std::find(masks.begin(), masks.end(), rec.mask_id);
        const std::size_t mi = std::size_t(mit - masks.begin());
        if (mit == masks.end()) masks.push_back(rec.mask_id);
        cell[{rec.radius, mi}] = rec.psnr_db;
    }
    std::sort(radii.begin(), radii.end());

    double ymax = 0.0;
    for (const SweepRecord& rec : records)
        if (std::isfinite(rec.psnr_db)) ymax = std::max(ymax, rec.psnr_db);
    ymax = ymax > 0.0 ? ymax * 1.05 : 50.0;

    static const char* kColors[4] = {"blue", "orange", "gray", "yellow"};
    const double bar_w = 22.0, bar_gap = 4.0, group_gap = 18.0;
    const double margin_l = 56.0, margin_r = 16.0, margin_t = 40.0, margin_b = 60.0;
    const double plot_h = 280.0;
    const double group_w = double(masks.size()) * (bar_w + bar_gap) - bar_gap + group_gap;
    const double plot_w = double(radii.size()) * group_w;
    const double width = margin_l + plot_w + margin_r;
    const double height = margin_t + plot_h + margin_b;
    const double base_y = margin_t + plot_h;

    std::string svg;
    appendf(svg,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
            "viewBox=\"0 0 %.0f %.0f\" font-family=\"sans-serif\" font-size=\"12\">\n",
            width, height, width, height);
    appendf(svg, "<rect x=\"0\" y=\"0\" width=\"%.0f\" height=\"%.0f\" fill=\"white\"/>\n", width,
            height);
    appendf(svg, "<text x=\"%.2f\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">%s</text>\n",
            margin_l + plot_w / 2.0, xml_escape(image_id).c_str());

    for (int t = 0; t <= 5; ++t) {
        const double v = ymax * double(t) / 5.0;
        const double y = base_y - plot_h * double(t) / 5.0;
        appendf(svg,
                "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#ddd\"/>\n",
                margin_l, y, margin_l + plot_w, y);
        appendf(svg,
                "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"end\" dominant-baseline=\"middle\">"
                "%.1f</text>\n",
                margin_l - 6.0, y, v);
    }
    appendf(svg,
            "<text x=\"14\" y=\"%.2f\" text-anchor=\"middle\" transform=\"rotate(-90 14 %.2f)\">"
            "PSNR (dB)</text>\n",
            margin_t + plot_h / 2.0, margin_t + plot_h / 2.0);

    for (std::size_t gi = 0; gi < radii.size(); ++gi) {
        const double gx = margin_l + double(gi) * group_w + group_gap / 2.0;
        for (std::size_t mi = 0; mi < masks.size(); ++mi) {
            const auto it = cell.find({radii[gi], mi});
            if (it == cell.end()) continue;
            const double v = it->second;
            const double h = std::isfinite(v) ? plot_h * std::min(v, ymax) / ymax : plot_h;
            const double x = gx + double(mi) * (bar_w + bar_gap);
            appendf(svg, "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" "
                         "fill=\"%s\"/>\n",
                    x, base_y - h, bar_w, h, kColors[mi % 4]);
        }
        appendf(svg,
                "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\">%d</text>\n",
                gx + (double(masks.size()) * (bar_w + bar_gap) - bar_gap) / 2.0, base_y + 18.0,
                radii[gi]);
    }
    appendf(svg, "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>\n",
            margin_l, base_y, margin_l + plot_w, base_y);
    appendf(svg,
            "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\">radius</text>\n",
            margin_l + plot_w / 2.0, base_y + 38.0);

    for (std::size_t mi = 0; mi < masks.size(); ++mi) {
        const double lx = margin_l + 8.0 + double(mi) * 120.0;
        appendf(svg, "<rect x=\"%.2f\" y=\"26\" width=\"10\" height=\"10\" fill=\"%s\"/>\n", lx,
                kColors[mi % 4]);
        appendf(svg, "<text x=\"%.2f\" y=\"35\">%s</text>\n", lx + 14.0,
                xml_escape(masks[mi]).c_str());
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace radinpaint
