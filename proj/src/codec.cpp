#include "radinpaint/codec.hpp"

#include <zlib.h>

#include <cctype>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

namespace radinpaint {

namespace {

constexpr uint8_t kPngSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
constexpr std::size_t kMaxDimension = 1u << 20;
constexpr std::size_t kMaxPixels = 1u << 28;

[[noreturn]] void fail(const std::string& what) { throw std::runtime_error(what); }

// ---- PGM ----

struct Cursor {
    std::span<const uint8_t> data;
    std::size_t pos = 0;

    bool eof() const { return pos >= data.size(); }
    uint8_t peek() const { return data[pos]; }
    uint8_t next() { return data[pos++]; }
};

// Skips whitespace and '#'-to-end-of-line comments between header tokens.
void skip_pgm_space(Cursor& cur) {
    while (!cur.eof()) {
        const uint8_t c = cur.peek();
        if (std::isspace(c)) {
            cur.next();
        } else if (c == '#') {
            while (!cur.eof() && cur.next() != '\n') {
            }
        } else {
            return;
        }
    }
}

long parse_pgm_int(Cursor& cur, const char* field) {
    skip_pgm_space(cur);
    if (cur.eof() || !std::isdigit(cur.peek()))
        fail(std::string("pgm: expected integer for ") + field);
    long value = 0;
    while (!cur.eof() && std::isdigit(cur.peek())) {
        value = value * 10 + (cur.next() - '0');
        if (value > 1'000'000'000) fail(std::string("pgm: ") + field + " out of range");
    }
    return value;
}

int bit_depth_for_maxval(long maxval) {
    int depth = 1;
    while ((1L << depth) - 1 < maxval) ++depth;
    return depth;
}

GrayImage load_pgm(std::span<const uint8_t> bytes) {
    Cursor cur{bytes};
    const bool ascii = bytes[1] == '2';
    cur.pos = 2;

    const long w = parse_pgm_int(cur, "width");
    const long h = parse_pgm_int(cur, "height");
    const long maxval = parse_pgm_int(cur, "maxval");
    if (w < 1 || h < 1 || std::size_t(w) > kMaxDimension || std::size_t(h) > kMaxDimension ||
        std::size_t(w) * std::size_t(h) > kMaxPixels)
        fail("pgm: unreasonable dimensions " + std::to_string(w) + "x" + std::to_string(h));
    if (maxval < 1 || maxval > 65535)
        fail("pgm: maxval must be in [1,65535], got " + std::to_string(maxval));

    GrayImage img;
    img.width = int(w);
    img.height = int(h);
    img.bit_depth = bit_depth_for_maxval(maxval);
    img.pixels.reserve(std::size_t(w) * std::size_t(h));

    const std::size_t count = std::size_t(w) * std::size_t(h);
    if (ascii) {
        for (std::size_t i = 0; i < count; ++i) {
            const long v = parse_pgm_int(cur, "pixel");
            if (v > maxval) fail("pgm: pixel value " + std::to_string(v) + " exceeds maxval");
            img.pixels.push_back(uint16_t(v));
        }
    } else {
        // Exactly one whitespace byte separates maxval from the raster.
        if (cur.eof() || !std::isspace(cur.peek())) fail("pgm: missing raster separator");
        cur.next();
        const int bytes_per_sample = maxval > 255 ? 2 : 1;
        if (cur.data.size() - cur.pos < count * bytes_per_sample)
            fail("pgm: truncated raster (have " + std::to_string(cur.data.size() - cur.pos) +
                 " bytes, need " + std::to_string(count * bytes_per_sample) + ")");
        for (std::size_t i = 0; i < count; ++i) {
            uint16_t v = cur.next();
            if (bytes_per_sample == 2) v = uint16_t((v << 8) | cur.next());
            if (v > maxval) fail("pgm: pixel value " + std::to_string(v) + " exceeds maxval");
            img.pixels.push_back(v);
        }
    }
    validate(img);
    return img;
}

void append_pgm(std::vector<uint8_t>& out, const std::string& text) {
    out.insert(out.end(), text.begin(), text.end());
}

std::vector<uint8_t> save_pgm_p5(const GrayImage& img) {
    std::vector<uint8_t> out;
    const int maxval = img.max_value();
    append_pgm(out, "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n" +
                        std::to_string(maxval) + "\n");
    if (maxval > 255) {
        for (uint16_t v : img.pixels) {
            out.push_back(uint8_t(v >> 8));
            out.push_back(uint8_t(v & 0xff));
        }
    } else {
        for (uint16_t v : img.pixels) out.push_back(uint8_t(v));
    }
    return out;
}

// ---- PNG ----

uint32_t read_be32(const uint8_t* p) {
    return (uint32_t(p[0]) << 24) | (uint32_t(p[1]) << 16) | (uint32_t(p[2]) << 8) | uint32_t(p[3]);
}

void append_be32(std::vector<uint8_t>& out, uint32_t v) {
    out.push_back(uint8_t(v >> 24));
    out.push_back(uint8_t(v >> 16));
    out.push_back(uint8_t(v >> 8));
    out.push_back(uint8_t(v));
}

void append_chunk(std::vector<uint8_t>& out, const char tag[4], std::span<const uint8_t> payload) {
    append_be32(out, uint32_t(payload.size()));
    const std::size_t crc_start = out.size();
    out.insert(out.end(), tag, tag + 4);
    out.insert(out.end(), payload.begin(), payload.end());
    const uint32_t crc =
        uint32_t(crc32(0, out.data() + crc_start, uInt(out.size() - crc_start)));
    append_be32(out, crc);
}

int paeth_predictor(int a, int b, int c) {
    const int p = a + b - c;
    const int pa = std::abs(p - a), pb = std::abs(p - b), pc = std::abs(p - c);
    if (pa <= pb && pa <= pc) return a;
    if (pb <= pc) return b;
    return c;
}

GrayImage load_png(std::span<const uint8_t> bytes) {
    if (bytes.size() < 8 + 12 + 13) fail("png: truncated file");

    std::size_t pos = 8;
    bool seen_ihdr = false, seen_iend = false;
    uint32_t width = 0, height = 0;
    std::vector<uint8_t> idat;

    while (pos + 12 <= bytes.size() && !seen_iend) {
        const uint32_t len = read_be32(&bytes[pos]);
        if (pos + 12 + std::size_t(len) > bytes.size()) fail("png: truncated chunk");
        const uint8_t* tag = &bytes[pos + 4];
        const uint8_t* payload = &bytes[pos + 8];
        const uint32_t stored_crc = read_be32(&bytes[pos + 8 + len]);
        const uint32_t actual_crc = uint32_t(crc32(0, tag, uInt(4 + len)));
        if (stored_crc != actual_crc) fail("png: chunk crc mismatch");

        const auto is = [&](const char* t) { return std::memcmp(tag, t, 4) == 0; };
        if (!seen_ihdr) {
            if (!is("IHDR")) fail("png: first chunk is not IHDR");
            if (len != 13) fail("png: IHDR length");
            width = read_be32(payload);
            height = read_be32(payload + 4);
            if (payload[8] != 8) fail("png: unsupported bit depth " + std::to_string(payload[8]));
            if (payload[9] != 0)
                fail("png: unsupported color type " + std::to_string(payload[9]) +
                     " (grayscale required)");
            if (payload[10] != 0) fail("png: unsupported compression method");
            if (payload[11] != 0) fail("png: unsupported filter method");
            if (payload[12] != 0) fail("png: unsupported interlace method");
            if (width < 1 || height < 1 || width > kMaxDimension || height > kMaxDimension ||
                std::size_t(width) * height > kMaxPixels)
                fail("png: unreasonable dimensions");
            seen_ihdr = true;
        } else if (is("IDAT")) {
            idat.insert(idat.end(), payload, payload + len);
        } else if (is("IEND")) {
            seen_iend = true;
        }
        // Ancillary chunks are skipped.
        pos += 12 + len;
    }
    if (!seen_ihdr) fail("png: missing IHDR");
    if (!seen_iend) fail("png: missing IEND");
    if (idat.empty()) fail("png: missing IDAT");

    const std::size_t stride = std::size_t(width) + 1;
    std::vector<uint8_t> raw(stride * height);
    uLongf raw_len = uLongf(raw.size());
    const int zrc = uncompress(raw.data(), &raw_len, idat.data(), uLong(idat.size()));
    if (zrc != Z_OK || raw_len != raw.size()) fail("png: IDAT inflate failed");

    GrayImage img;
    img.width = int(width);
    img.height = int(height);
    img.bit_depth = 8;
    img.pixels.resize(std::size_t(width) * height);

    std::vector<uint8_t> prev(width, 0), line(width, 0);
    for (uint32_t r = 0; r < height; ++r) {
        const uint8_t* src = &raw[r * stride];
        const uint8_t filter = src[0];
        for (uint32_t c = 0; c < width; ++c) {
            const int x = src[1 + c];
            const int a = c > 0 ? line[c - 1] : 0;
            const int b = prev[c];
            const int cc = c > 0 ? prev[c - 1] : 0;
            int v;
            switch (filter) {
                case 0: v = x; break;
                case 1: v = x + a; break;
                case 2: v = x + b; break;
                case 3: v = x + (a + b) / 2; break;
                case 4: v = x + paeth_predictor(a, b, cc); break;
                default: fail("png: invalid filter type " + std::to_string(filter));
            }
            line[c] = uint8_t(v & 0xff);
            img.pixels[std::size_t(r) * width + c] = line[c];
        }
        std::swap(prev, line);
    }
    return img;
}

std::vector<uint8_t> save_png(const GrayImage& img) {
    if (img.bit_depth > 8)
        fail("png: only 8-bit write is supported, image has bit depth " +
             std::to_string(img.bit_depth));

    std::vector<uint8_t> raw;
    raw.reserve((std::size_t(img.width) + 1) * img.height);
    for (int r = 0; r < img.height; ++r) {
        raw.push_back(0);  // filter type None on every scanline
        for (int c = 0; c < img.width; ++c) raw.push_back(uint8_t(img.at(r, c)));
    }

    std::vector<uint8_t> compressed(compressBound(uLong(raw.size())));
    uLongf comp_len = uLongf(compressed.size());
    if (compress2(compressed.data(), &comp_len, raw.data(), uLong(raw.size()), 6) != Z_OK)
        fail("png: deflate failed");
    compressed.resize(comp_len);

    std::vector<uint8_t> ihdr;
    append_be32(ihdr, uint32_t(img.width));
    append_be32(ihdr, uint32_t(img.height));
    ihdr.insert(ihdr.end(), {8, 0, 0, 0, 0});

    std::vector<uint8_t> out(kPngSignature, kPngSignature + 8);
    append_chunk(out, "IHDR", ihdr);
    append_chunk(out, "IDAT", compressed);
    append_chunk(out, "IEND", {});
    return out;
}

}  // namespace

GrayImage load_image(std::span<const uint8_t> bytes) {
    if (bytes.size() >= 8 && std::memcmp(bytes.data(), kPngSignature, 8) == 0)
        return load_png(bytes);
    if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '2' || bytes[1] == '5'))
        return load_pgm(bytes);
    fail("image: unrecognized magic (expected PNG signature, P2 or P5)");
}

std::vector<uint8_t> save_image(const GrayImage& img, ImageFormat format) {
    validate(img);
    return format == ImageFormat::PgmP5 ? save_pgm_p5(img) : save_png(img);
}

GrayImage load_image_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot open " + path.string());
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                               std::istreambuf_iterator<char>());
    return load_image(bytes);
}

void save_image_file(const GrayImage& img, const std::filesystem::path& path) {
    const ImageFormat fmt =
        path.extension() == ".png" ? ImageFormat::Png : ImageFormat::PgmP5;
    write_file_atomic(path, save_image(img, fmt));
}

void write_file_atomic(const std::filesystem::path& path, std::span<const uint8_t> bytes) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail("cannot open " + tmp.string() + " for writing");
        out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
        if (!out) {
            out.close();
            std::filesystem::remove(tmp);
            fail("write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        fail("rename to " + path.string() + " failed: " + ec.message());
    }
}

}  // namespace radinpaint
