#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "radinpaint/experiment.hpp"
#include "radinpaint/metrics.hpp"
#include "test_support.hpp"

using namespace radinpaint;

namespace {

// Pulls attr="..." values off every <rect> line carrying the given width,
// which separates plot bars (width 22.00) from legend swatches (width 10).
std::vector<double> rect_attr(const std::string& svg, const std::string& width,
                              const std::string& attr) {
    std::vector<double> out;
    std::size_t pos = 0;
    while ((pos = svg.find("<rect ", pos)) != std::string::npos) {
        const std::size_t end = svg.find("/>", pos);
        const std::string line = svg.substr(pos, end - pos);
        pos = end;
        if (line.find("width=\"" + width + "\"") == std::string::npos) continue;
        const std::string needle = attr + "=\"";
        const std::size_t a = line.find(needle);
        if (a == std::string::npos) continue;
        out.push_back(std::stod(line.substr(a + needle.size())));
    }
    return out;
}

SweepRecord rec(std::string image, std::string mask, std::string method, int radius, double db,
                double err = 1.0, int64_t ms = 0) {
    return {std::move(image), std::move(mask), std::move(method), radius, db, err, ms};
}

}  // namespace

TEST_SUITE("experiment") {
    TEST_CASE("mask spec parsing round trip") {
        const MaskSpec s = parse_mask_spec("kind=scatter, fraction=0.05, seed=42");
        CHECK(s.kind == MaskKind::RandomScatter);
        CHECK(s.fraction == 0.05);
        CHECK(s.seed == 42);
        CHECK(mask_spec_id(s) == "scatter-f0.05-s42");

        const MaskSpec b = parse_mask_spec("kind=blocks\ncount=3\nblock_w=5\nblock_h=2\nseed=9");
        CHECK(b.kind == MaskKind::SelectiveBlocks);
        CHECK(b.count == 3);
        CHECK(b.block_w == 5);
        CHECK(b.block_h == 2);
        CHECK(mask_spec_id(b) == "blocks-n3-5x2-s9");

        const MaskSpec l = parse_mask_spec("kind=lines,count=2,thickness=3,seed=1");
        CHECK(mask_spec_id(l) == "lines-n2-t3-s1");
    }

    TEST_CASE("mask spec rejects malformed text") {
        CHECK_THROWS_WITH_AS(parse_mask_spec("fraction=0.05"), doctest::Contains("missing kind"),
                             std::invalid_argument);
        CHECK_THROWS_WITH_AS(parse_mask_spec("kind=waves"), doctest::Contains("unknown kind"),
                             std::invalid_argument);
        CHECK_THROWS_WITH_AS(parse_mask_spec("kind=scatter,zappa=1"),
                             doctest::Contains("unknown key"), std::invalid_argument);
        CHECK_THROWS_WITH_AS(parse_mask_spec("kind=scatter,fraction"),
                             doctest::Contains("key=value"), std::invalid_argument);
        CHECK_THROWS_WITH_AS(parse_mask_spec("kind=scatter,count=abc"),
                             doctest::Contains("bad value"), std::invalid_argument);
        CHECK_THROWS_WITH_AS(parse_mask_spec("kind=scatter,fraction=0.6"),
                             doctest::Contains("fraction"), std::invalid_argument);
        CHECK_THROWS_AS(parse_mask_spec("kind=scatter,fraction=0"), std::invalid_argument);
        CHECK_THROWS_AS(parse_mask_spec("kind=blocks,count=0"), std::invalid_argument);
        CHECK_THROWS_AS(parse_mask_spec("kind=lines,thickness=-1"), std::invalid_argument);
    }

    TEST_CASE("block masks damage exactly count*area pixels") {
        MaskSpec spec;
        spec.kind = MaskKind::SelectiveBlocks;
        spec.count = 3;
        spec.block_w = 4;
        spec.block_h = 2;
        spec.seed = 11;
        const DamageMask mask = generate_mask(spec, 32, 24);
        CHECK(mask.damaged_count() == 3u * 4u * 2u);
        CHECK(generate_mask(spec, 32, 24) == mask);
    }

    TEST_CASE("scatter masks hit the requested fraction") {
        MaskSpec spec;
        spec.kind = MaskKind::RandomScatter;
        spec.fraction = 0.07;
        spec.seed = 5;
        const DamageMask mask = generate_mask(spec, 20, 15);
        CHECK(mask.damaged_count() == std::size_t(0.07 * 300));
        CHECK(generate_mask(spec, 20, 15) == mask);

        spec.fraction = 0.5;
        CHECK(generate_mask(spec, 8, 8).damaged_count() == 32);
    }

    TEST_CASE("different seeds give different masks") {
        MaskSpec spec;
        spec.kind = MaskKind::RandomScatter;
        spec.fraction = 0.1;
        std::set<std::vector<uint8_t>> seen;
        for (uint64_t seed = 0; seed < 20; ++seed) {
            spec.seed = seed;
            seen.insert(generate_mask(spec, 16, 16).flags);
        }
        CHECK(seen.size() == 20);
    }

    TEST_CASE("line masks are unions of full strips") {
        MaskSpec spec;
        spec.kind = MaskKind::Lines;
        spec.count = 2;
        spec.thickness = 2;
        spec.seed = 3;
        const DamageMask mask = generate_mask(spec, 16, 16);
        CHECK(mask.damaged_count() > 0);
        CHECK(2 * mask.damaged_count() <= 256);

        std::vector<bool> full_row(16, true), full_col(16, true);
        for (int r = 0; r < 16; ++r)
            for (int c = 0; c < 16; ++c) {
                if (mask.known(r, c)) {
                    full_row[std::size_t(r)] = false;
                    full_col[std::size_t(c)] = false;
                }
            }
        for (int r = 0; r < 16; ++r)
            for (int c = 0; c < 16; ++c)
                if (!mask.known(r, c))
                    CHECK((full_row[std::size_t(r)] || full_col[std::size_t(c)]));
    }

    TEST_CASE("impossible masks fail with a generation error") {
        MaskSpec blocks;
        blocks.kind = MaskKind::SelectiveBlocks;
        blocks.count = 3;
        blocks.block_w = 8;
        blocks.block_h = 8;
        CHECK_THROWS_WITH_AS(generate_mask(blocks, 10, 10), doctest::Contains("half"),
                             std::runtime_error);
        blocks.count = 1;
        blocks.block_w = 12;
        CHECK_THROWS_WITH_AS(generate_mask(blocks, 10, 10), doctest::Contains("fit"),
                             std::runtime_error);

        MaskSpec lines;
        lines.kind = MaskKind::Lines;
        lines.thickness = 9;
        CHECK_THROWS_AS(generate_mask(lines, 8, 8), std::runtime_error);
        lines.thickness = 5;
        lines.count = 1;
        CHECK_THROWS_WITH_AS(generate_mask(lines, 8, 8), doctest::Contains("half"),
                             std::runtime_error);

        CHECK_THROWS_AS(generate_mask(MaskSpec{}, 0, 4), std::invalid_argument);
    }

    TEST_CASE("method names round trip") {
        CHECK(method_name(Method::Grnn) == "GRNN");
        CHECK(method_name(Method::Lssvm2k) == "LSSVM-2K");
        CHECK(parse_method("grnn") == Method::Grnn);
        CHECK(parse_method("rd") == Method::Rd);
        CHECK(parse_method("cd") == Method::Cd);
        CHECK(parse_method("rc") == Method::Rc);
        CHECK(parse_method("lssvm2k") == Method::Lssvm2k);
        CHECK_THROWS_WITH_AS(parse_method("GRNN"), doctest::Contains("unknown method"),
                             std::invalid_argument);
    }

    TEST_CASE("a sweep emits one row per cell in deterministic order") {
        std::mt19937_64 rng(137);
        const GrayImage img = testsupport::random_image(rng, 12, 12);
        const DamageMask mask = testsupport::random_mask(rng, 12, 12, 0.08);

        SweepParams params;
        params.methods = {Method::Grnn, Method::Rd, Method::Grnn, Method::Cd, Method::Rc,
                          Method::Lssvm2k};
        params.radii = {5, 3};
        params.stable_output = true;
        params.image_id = "rand12";
        params.mask_id = "m0";
        const auto records = radius_sweep(img, mask, params);
        REQUIRE(records.size() == 6);
        CHECK(records[0].method == "GRNN");
        CHECK(records[0].radius == 5);
        CHECK(records[1].method == "GRNN");
        CHECK(records[1].radius == 3);
        CHECK(records[2].method == "RD");
        CHECK(records[3].method == "CD");
        CHECK(records[4].method == "RC");
        CHECK(records[5].method == "LSSVM-2K");
        for (const SweepRecord& r : records) {
            CHECK(r.image_id == "rand12");
            CHECK(r.mask_id == "m0");
            CHECK(r.wall_ms == 0);
            if (r.method != "GRNN") CHECK(r.radius == 0);
            if (std::isfinite(r.psnr_db)) {
                CHECK(r.mse > 0.0);
                CHECK(r.psnr_db ==
                      doctest::Approx(10.0 * std::log10(255.0 * 255.0 / r.mse)).epsilon(1e-12));
            } else {
                CHECK(r.mse == 0.0);
            }
        }
    }

    TEST_CASE("a sweep over an undamaged mask is all inf") {
        std::mt19937_64 rng(139);
        const GrayImage img = testsupport::random_image(rng, 8, 8);
        SweepParams params;
        params.methods = {Method::Grnn, Method::Rd};
        params.radii = {3};
        const auto records = radius_sweep(img, DamageMask::filled(8, 8, true), params);
        REQUIRE(records.size() == 2);
        for (const SweepRecord& r : records) {
            CHECK(r.psnr_db == std::numeric_limits<double>::infinity());
            CHECK(r.mse == 0.0);
        }
    }

    TEST_CASE("a constant image sweeps to inf for every method") {
        const GrayImage img = GrayImage::filled(10, 10, 77);
        MaskSpec spec;
        spec.kind = MaskKind::RandomScatter;
        spec.fraction = 0.1;
        spec.seed = 2;
        SweepParams params;
        params.methods = {Method::Grnn, Method::Rd, Method::Cd, Method::Rc, Method::Lssvm2k};
        params.radii = {5};
        const auto records = radius_sweep(img, generate_mask(spec, 10, 10), params);
        REQUIRE(records.size() == 5);
        for (const SweepRecord& r : records)
            CHECK(r.psnr_db == std::numeric_limits<double>::infinity());
    }

    TEST_CASE("sweep failures name the cell") {
        const GrayImage img = GrayImage::filled(4, 4, 1);
        SweepParams params;
        params.radii = {3};
        CHECK_THROWS_WITH_AS(radius_sweep(img, DamageMask::filled(4, 4, false), params),
                             doctest::Contains("method=GRNN radius=3"), std::runtime_error);
        CHECK_THROWS_AS(radius_sweep(img, DamageMask::filled(5, 4, true), params),
                        std::invalid_argument);
        params.methods = {};
        CHECK_THROWS_AS(radius_sweep(img, DamageMask::filled(4, 4, true), params),
                        std::invalid_argument);
        params.methods = {Method::Grnn};
        params.radii = {};
        CHECK_THROWS_AS(radius_sweep(img, DamageMask::filled(4, 4, true), params),
                        std::invalid_argument);
        params.radii = {4};
        CHECK_THROWS_AS(radius_sweep(img, DamageMask::filled(4, 4, true), params),
                        std::invalid_argument);
    }

    TEST_CASE("csv formatting is fixed") {
        const std::vector<SweepRecord> records{
            rec("lena", "SB1", "GRNN", 5, 41.166, 4.9613, 812),
            rec("lena", "SB1", "RD", 0, std::numeric_limits<double>::infinity(), 0.0, 3),
        };
        CHECK(emit_csv(records) ==
              "image,mask,method,radius,psnr_db,mse,wall_ms\n"
              "lena,SB1,GRNN,5,41.1660,4.9613,812\n"
              "lena,SB1,RD,0,inf,0.0000,3\n");
        CHECK_THROWS_WITH_AS(emit_csv({}), doctest::Contains("no records"),
                             std::invalid_argument);
    }

    TEST_CASE("the bar chart carries one bar per record") {
        const std::vector<SweepRecord> records{
            rec("pic", "B", "GRNN", 5, 10.0),
            rec("pic", "B", "GRNN", 3, 30.0),
            rec("pic", "A", "GRNN", 3, 40.0),
            rec("pic", "A", "GRNN", 5, 20.0),
        };
        const std::string svg = emit_bar_svg(records);
        CHECK(testsupport::xml_well_formed(svg));
        CHECK(svg.find("PSNR (dB)") != std::string::npos);
        CHECK(svg.find(">radius<") != std::string::npos);
        CHECK(svg.find(">pic<") != std::string::npos);
        CHECK(svg.find("fill=\"blue\"") != std::string::npos);
        CHECK(svg.find("fill=\"orange\"") != std::string::npos);
        CHECK(rect_attr(svg, "22.00", "height").size() == 4);
        // Legend swatches follow first appearance: B then A.
        CHECK(svg.find(">B<") < svg.find(">A<"));
    }

    TEST_CASE("bar heights are linear in psnr") {
        const std::vector<SweepRecord> records{
            rec("pic", "A", "GRNN", 3, 40.0),
            rec("pic", "A", "GRNN", 5, 20.0),
            rec("pic", "B", "GRNN", 3, 30.0),
            rec("pic", "B", "GRNN", 5, 10.0),
        };
        const std::string svg = emit_bar_svg(records);
        const std::vector<double> heights = rect_attr(svg, "22.00", "height");
        const std::vector<double> tops = rect_attr(svg, "22.00", "y");
        REQUIRE(heights.size() == 4);
        REQUIRE(tops.size() == 4);
        // Groups come out radius-ascending, masks in first-appearance order:
        // (3,A)=40, (3,B)=30, (5,A)=20, (5,B)=10 on a 0..42 dB scale.
        const double unit = 280.0 / (40.0 * 1.05);
        const double expect[] = {40.0 * unit, 30.0 * unit, 20.0 * unit, 10.0 * unit};
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(heights[i] == doctest::Approx(expect[i]).epsilon(1e-4));
            CHECK(tops[i] + heights[i] == doctest::Approx(320.0).epsilon(1e-9));
        }
    }

    TEST_CASE("infinite bars reach the top of the scale") {
        const std::string svg =
            emit_bar_svg({rec("pic", "A", "GRNN", 3, std::numeric_limits<double>::infinity())});
        CHECK(svg.find("height=\"280.00\"") != std::string::npos);
        CHECK(testsupport::xml_well_formed(svg));
    }

    TEST_CASE("mask ids are xml-escaped in the legend") {
        const std::string svg = emit_bar_svg({rec("pic", "a&b", "GRNN", 3, 12.0)});
        CHECK(svg.find("a&amp;b") != std::string::npos);
        CHECK(svg.find("a&b") == std::string::npos);
        CHECK(testsupport::xml_well_formed(svg));
    }

    TEST_CASE("the bar chart rejects unsuitable record sets") {
        CHECK_THROWS_WITH_AS(emit_bar_svg({}), doctest::Contains("no records"),
                             std::invalid_argument);
        CHECK_THROWS_WITH_AS(
            emit_bar_svg({rec("a", "m", "GRNN", 3, 10.0), rec("b", "m", "GRNN", 3, 10.0)}),
            doctest::Contains("mixed image ids"), std::invalid_argument);
        CHECK_THROWS_WITH_AS(emit_bar_svg({rec("a", "m", "RD", 0, 10.0)}),
                             doctest::Contains("GRNN"), std::invalid_argument);
    }
}
