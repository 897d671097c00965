#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "radinpaint/band.hpp"
#include "radinpaint/image.hpp"
#include "radinpaint/lssvm.hpp"

namespace radinpaint {

// One 8-connected component of the damaged set; coords are row-major sorted.
struct DamageRegion {
    std::vector<PixelCoord> coords;

    std::size_t size() const { return coords.size(); }
};

// Components sorted by size ascending, ties by smallest row-major member.
std::vector<DamageRegion> find_regions(const DamageMask& mask);

enum class LssvmMode { Rd, Cd, Rc, TwoKernel };

struct GrnnConfig {
    double sigma = 2.0;
};

struct LssvmConfig {
    LssvmMode mode = LssvmMode::TwoKernel;
    Kernel kernel;
    double gamma = 100.0;
    std::size_t train_cap = 4000;
};

struct RegressorConfig {
    std::variant<GrnnConfig, LssvmConfig> method = GrnnConfig{};
    int radius = 5;            // band radius for the GRNN path; odd, >= 3
    bool progressive = true;   // filled pixels join the training pool of later regions
};

struct RegionStat {
    std::size_t size = 0;
    std::size_t band = 0;     // known pixels inside the radial band
    std::size_t samples = 0;  // training samples actually used
};

struct InpaintReport {
    GrayImage output;
    std::vector<RegionStat> regions;
    // Pixels the primary mode could not resolve (fully damaged rows/columns in
    // the directional modes); they are filled by a follow-up 2-kernel pass and
    // recorded here. Empty whenever the primary mode covered everything.
    std::vector<PixelCoord> fallback;
    std::int64_t wall_ms = 0;
};

// GRNN path: regions smallest-first, per-region radial band (radius escalates
// by 2 while the band is empty), predict, fill. LS-SVM path: delegate to the
// whole-image mode procedure, then clean up unresolved pixels with a 2-kernel
// pass over the current state. Known pixels are bit-identical in the output.
InpaintReport inpaint(const GrayImage& img, const DamageMask& mask, const RegressorConfig& cfg);

}  // namespace radinpaint
