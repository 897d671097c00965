#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "radinpaint/engine.hpp"
#include "radinpaint/image.hpp"

namespace radinpaint {

enum class MaskKind { SelectiveBlocks, RandomScatter, Lines };

// Seeded mask description; generation is a pure function of (spec, dims).
struct MaskSpec {
    MaskKind kind = MaskKind::RandomScatter;
    uint64_t seed = 0;
    int count = 1;         // SelectiveBlocks, Lines
    int block_w = 4;       // SelectiveBlocks
    int block_h = 4;
    double fraction = 0.05;  // RandomScatter, in (0, 0.5]
    int thickness = 1;       // Lines
};

void validate(const MaskSpec& spec);

// key=value pairs split on commas or newlines, e.g.
// "kind=scatter,fraction=0.05,seed=42". Keys: kind (blocks|scatter|lines),
// seed, count, block_w, block_h, fraction, thickness.
MaskSpec parse_mask_spec(std::string_view text);

// Compact deterministic identifier used as the CSV mask column.
std::string mask_spec_id(const MaskSpec& spec);

// SelectiveBlocks places `count` non-overlapping rectangles (bounded retries),
// RandomScatter damages floor(fraction*W*H) distinct pixels, Lines lays
// `count` full-width or full-height strips. Never damages more than half the
// image; unsatisfiable placement raises a generation error.
DamageMask generate_mask(const MaskSpec& spec, int width, int height);

enum class Method { Grnn, Rd, Cd, Rc, Lssvm2k };

std::string_view method_name(Method m);      // GRNN, RD, CD, RC, LSSVM-2K
Method parse_method(std::string_view name);  // grnn, rd, cd, rc, lssvm2k

struct SweepRecord {
    std::string image_id;
    std::string mask_id;
    std::string method;
    int radius = 0;  // 0 on the radius-independent LS-SVM rows
    double psnr_db = 0.0;
    double mse = 0.0;
    int64_t wall_ms = 0;
};

struct SweepParams {
    std::vector<Method> methods = {Method::Grnn};
    std::vector<int> radii = {3, 5, 7, 9, 11, 13};  // GRNN rows only
    double sigma = 2.0;
    double gamma = 100.0;
    double bandwidth = 5.0;
    KernelKind kernel2d = KernelKind::Additive2d;
    std::size_t train_cap = 4000;
    bool progressive = true;
    // Zero the wall_ms column so the emitted CSV is byte-stable across runs.
    bool stable_output = false;
    std::string image_id = "image";
    std::string mask_id = "mask";
};

// One record per (method, radius) cell in deterministic order: methods as
// given (duplicates dropped), GRNN once per radius, the LS-SVM modes once
// each. Damaged pixels are zeroed before inpainting; PSNR/MSE are measured
// against the pristine original. Engine errors are rethrown with the failing
// cell named.
std::vector<SweepRecord> radius_sweep(const GrayImage& img, const DamageMask& mask,
                                      const SweepParams& params);

// Header image,mask,method,radius,psnr_db,mse,wall_ms; psnr/mse to 4 decimal
// places, "inf" for infinite PSNR; byte-deterministic.
std::string emit_csv(const std::vector<SweepRecord>& records);

// Grouped bar chart: one group per radius, one bar per mask (colors blue,
// orange, gray, yellow in first-appearance order), linear dB scale from zero.
// Requires a single image_id and GRNN records only. Bars with infinite PSNR
// are drawn to the top of the scale.
std::string emit_bar_svg(const std::vector<SweepRecord>& records);

}  // namespace radinpaint
