#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "radinpaint/image.hpp"

namespace radinpaint {

enum class ImageFormat { PgmP5, Png };

/// Decodes a PGM (P2 ASCII or P5 binary, maxval <= 65535) or an 8-bit
/// grayscale PNG. bit_depth is ceil(log2(maxval+1)) for PGM and 8 for PNG.
/// Throws std::runtime_error naming the offending field on malformed input.
GrayImage load_image(std::span<const uint8_t> bytes);

/// Encodes to PGM P5 (header exactly "P5\n<w> <h>\n<maxval>\n", samples
/// big-endian when maxval > 255) or to an 8-bit grayscale PNG. Both outputs
/// are byte-deterministic for a given image.
std::vector<uint8_t> save_image(const GrayImage& img, ImageFormat format);

GrayImage load_image_file(const std::filesystem::path& path);

/// Format picked from the extension (.png writes PNG, anything else PGM P5).
/// Writes to a temporary sibling and renames, so a failure leaves no partial
/// output behind.
void save_image_file(const GrayImage& img, const std::filesystem::path& path);

/// Same temp-then-rename discipline for arbitrary byte payloads (CSV, SVG).
void write_file_atomic(const std::filesystem::path& path, std::span<const uint8_t> bytes);

}  // namespace radinpaint
