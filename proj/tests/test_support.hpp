#pragma once

#include <sys/wait.h>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "radinpaint/image.hpp"

namespace testsupport {

// Scratch directory removed on scope exit.
struct TempDir {
    std::filesystem::path path;

    TempDir() {
        static std::atomic<int> counter{0};
        path = std::filesystem::temp_directory_path() /
               ("radinpaint_test_" + std::to_string(counter++) + "_" +
                std::to_string(std::random_device{}()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Runs the installed CLI binary with the given argument string.
inline CliResult run_cli(const std::string& args) {
    TempDir dir;
    const std::string out_path = dir.file("stdout"), err_path = dir.file("stderr");
    const std::string cmd =
        std::string(RADINPAINT_CLI) + " " + args + " >" + out_path + " 2>" + err_path;
    const int status = std::system(cmd.c_str());
    CliResult result;
    result.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    result.out = read_file(out_path);
    result.err = read_file(err_path);
    return result;
}

inline radinpaint::GrayImage make_ramp(int width, int height) {
    radinpaint::GrayImage img = radinpaint::GrayImage::filled(width, height, 0);
    for (int r = 0; r < height; ++r)
        for (int c = 0; c < width; ++c) img.at(r, c) = uint16_t(std::min(c, 255));
    return img;
}

inline radinpaint::GrayImage random_image(std::mt19937_64& rng, int width, int height) {
    radinpaint::GrayImage img = radinpaint::GrayImage::filled(width, height, 0);
    for (uint16_t& p : img.pixels) p = uint16_t(rng() % 256);
    return img;
}

// Bernoulli damage; re-rolls until at least one pixel stays known.
inline radinpaint::DamageMask random_mask(std::mt19937_64& rng, int width, int height,
                                          double damage_prob) {
    radinpaint::DamageMask mask = radinpaint::DamageMask::filled(width, height, true);
    do {
        for (uint8_t& f : mask.flags)
            f = (double(rng() % 1000000) / 1e6 < damage_prob) ? 0 : 1;
    } while (mask.known_count() == 0);
    return mask;
}

// Minimal XML well-formedness check: balanced, properly nested element tags.
inline bool xml_well_formed(const std::string& text) {
    std::vector<std::string> stack;
    std::size_t pos = 0;
    bool seen_element = false;
    while (pos < text.size()) {
        const std::size_t open = text.find('<', pos);
        if (open == std::string::npos) break;
        const std::size_t close = text.find('>', open);
        if (close == std::string::npos) return false;
        std::string tag = text.substr(open + 1, close - open - 1);
        pos = close + 1;
        if (tag.empty()) return false;
        if (tag.front() == '?' || tag.front() == '!') continue;
        const bool closing = tag.front() == '/';
        const bool self_closed = tag.back() == '/';
        if (closing) tag = tag.substr(1);
        if (self_closed) tag.pop_back();
        const std::string name = tag.substr(0, tag.find_first_of(" \t\n"));
        if (name.empty()) return false;
        seen_element = true;
        if (closing) {
            if (stack.empty() || stack.back() != name) return false;
            stack.pop_back();
        } else if (!self_closed) {
            stack.push_back(name);
        }
    }
    return seen_element && stack.empty();
}

}  // namespace testsupport
