#include <doctest.h>

#include <stdexcept>

#include "radinpaint/image.hpp"

using namespace radinpaint;

TEST_SUITE("image") {
    TEST_CASE("validate accepts a well-formed image and rejects broken ones") {
        GrayImage img = GrayImage::filled(3, 2, 7);
        CHECK_NOTHROW(validate(img));

        GrayImage empty;
        CHECK_THROWS_AS(validate(empty), std::invalid_argument);

        GrayImage short_buf = img;
        short_buf.pixels.pop_back();
        CHECK_THROWS_AS(validate(short_buf), std::invalid_argument);

        GrayImage out_of_range = img;
        out_of_range.at(0, 0) = 256;
        CHECK_THROWS_AS(validate(out_of_range), std::invalid_argument);
        out_of_range.bit_depth = 9;
        CHECK_NOTHROW(validate(out_of_range));

        GrayImage bad_depth = img;
        bad_depth.bit_depth = 17;
        CHECK_THROWS_AS(validate(bad_depth), std::invalid_argument);
    }

    TEST_CASE("mask validate") {
        DamageMask mask = DamageMask::filled(4, 3, true);
        CHECK_NOTHROW(validate(mask));
        mask.flags.push_back(1);
        CHECK_THROWS_AS(validate(mask), std::invalid_argument);
        CHECK_THROWS_AS(validate(DamageMask{}), std::invalid_argument);
    }

    TEST_CASE("filled and counters") {
        const DamageMask mask = DamageMask::filled(5, 2, false);
        CHECK(mask.damaged_count() == 10);
        CHECK(mask.known_count() == 0);
        const GrayImage img = GrayImage::filled(5, 2, 31);
        CHECK(img.pixel_count() == 10);
        for (uint16_t p : img.pixels) CHECK(p == 31);
    }

    TEST_CASE("transpose is an involution and swaps coordinates") {
        GrayImage img = GrayImage::filled(3, 2, 0);
        uint16_t v = 0;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 3; ++c) img.at(r, c) = v++;
        const GrayImage t = transpose(img);
        CHECK(t.width == 2);
        CHECK(t.height == 3);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 3; ++c) CHECK(t.at(c, r) == img.at(r, c));
        CHECK(transpose(t) == img);

        DamageMask mask = DamageMask::filled(3, 2, true);
        mask.set_known(1, 2, false);
        const DamageMask mt = transpose(mask);
        CHECK_FALSE(mt.known(2, 1));
        CHECK(transpose(mt) == mask);
    }

    TEST_CASE("mask_from_image treats zero as damaged") {
        GrayImage img = GrayImage::filled(2, 2, 255);
        img.at(0, 1) = 0;
        img.at(1, 0) = 1;
        const DamageMask mask = mask_from_image(img);
        CHECK(mask.known(0, 0));
        CHECK_FALSE(mask.known(0, 1));
        CHECK(mask.known(1, 0));
        CHECK(mask.damaged_count() == 1);
    }

    TEST_CASE("apply_mask zeroes damaged pixels only") {
        GrayImage img = GrayImage::filled(2, 2, 9);
        DamageMask mask = DamageMask::filled(2, 2, true);
        mask.set_known(1, 1, false);
        const GrayImage out = apply_mask(img, mask);
        CHECK(out.at(0, 0) == 9);
        CHECK(out.at(1, 1) == 0);

        const DamageMask wrong = DamageMask::filled(3, 2, true);
        CHECK_THROWS_WITH_AS(apply_mask(img, wrong), doctest::Contains("2x2"),
                             std::invalid_argument);
    }

    TEST_CASE("quantize_intensity clamps then rounds half away from zero") {
        CHECK(quantize_intensity(0.0, 255) == 0);
        CHECK(quantize_intensity(0.5, 255) == 1);
        CHECK(quantize_intensity(1.49, 255) == 1);
        CHECK(quantize_intensity(2.5, 255) == 3);
        CHECK(quantize_intensity(254.5, 255) == 255);
        CHECK(quantize_intensity(-3.7, 255) == 0);
        CHECK(quantize_intensity(300.0, 255) == 255);
        CHECK(quantize_intensity(1023.9, 1023) == 1023);
        CHECK(quantize_intensity(511.5, 1023) == 512);
    }
}
