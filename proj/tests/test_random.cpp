#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "simo/random.hpp"

using simo::SeededStream;

TEST_CASE("philox4x32-10 matches the published known-answer vectors", "[random]") {
    using simo::detail::philox4x32;
    const std::uint32_t ff = 0xFFFFFFFFu;
    CHECK(philox4x32(0, {0, 0, 0, 0}) ==
          std::array<std::uint32_t, 4>{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    CHECK(philox4x32(0xFFFFFFFFFFFFFFFFull, {ff, ff, ff, ff}) ==
          std::array<std::uint32_t, 4>{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
    CHECK(philox4x32(0x299f31d0a4093822ull,
                     {0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}) ==
          std::array<std::uint32_t, 4>{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("identical (seed, id) pairs replay identical sequences", "[random]") {
    SeededStream a(0x1234abcd, 42);
    SeededStream b(0x1234abcd, 42);
    for (int i = 0; i < 1000; ++i) {
        REQUIRE(a.next_u32() == b.next_u32());
    }
    SeededStream c(0x1234abcd, 42);
    SeededStream d(0x1234abcd, 43);
    int diffs = 0;
    for (int i = 0; i < 64; ++i) diffs += c.next_u32() != d.next_u32();
    CHECK(diffs > 32);
}

TEST_CASE("complex gaussian samples have the right moments", "[random]") {
    SeededStream s(7, 0);
    const int n = 1'000'000;
    std::complex<double> mean = 0.0;
    double e2 = 0.0, e4 = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto z = s.next_cn01();
        REQUIRE(std::isfinite(z.real()));
        REQUIRE(std::isfinite(z.imag()));
        mean += z;
        const double p = std::norm(z);
        e2 += p;
        e4 += p * p;
    }
    mean /= n;
    e2 /= n;
    e4 /= n;
    CHECK(std::abs(mean) < 0.01);
    CHECK(e2 == Catch::Approx(1.0).margin(0.01));
    CHECK(e4 == Catch::Approx(2.0).margin(0.05));  // complex Gaussian kurtosis
}

TEST_CASE("distinct streams are uncorrelated", "[random]") {
    SeededStream a(99, 1);
    SeededStream b(99, 2);
    const int n = 200'000;
    double cross = 0.0;
    for (int i = 0; i < n; ++i) {
        cross += (a.next_unit() - 0.5) * (b.next_unit() - 0.5);
    }
    // each factor has variance 1/12, so the standard error is 1/(12 sqrt(n))
    CHECK(std::abs(cross / n) < 3.0 / (12.0 * std::sqrt(static_cast<double>(n))));
}

TEST_CASE("unit samples stay inside the open interval", "[random]") {
    SeededStream s(3, 5);
    for (int i = 0; i < 100'000; ++i) {
        const double u = s.next_unit();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
    }
}

TEST_CASE("exponential samples have unit mean", "[random]") {
    SeededStream s(11, 0);
    double sum = 0.0;
    const int n = 500'000;
    for (int i = 0; i < n; ++i) sum += s.next_exponential();
    CHECK(sum / n == Catch::Approx(1.0).margin(0.01));
}

TEST_CASE("bounded index draws cover the range uniformly", "[random]") {
    SeededStream s(5, 9);
    std::vector<int> counts(5, 0);
    const int n = 100'000;
    for (int i = 0; i < n; ++i) ++counts[s.next_index(5)];
    for (int c : counts) CHECK(std::abs(c - n / 5) < 5 * std::sqrt(n / 5.0));
}
