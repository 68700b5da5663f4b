#include <doctest.h>

#include "liftkin/rng.hpp"

#include <cmath>
#include <vector>

using namespace liftkin;

TEST_CASE("philox 4x32-10 known-answer vectors") {
    // reference vectors for counter/key all-zero (Salmon et al., Random123)
    Philox4x32 g(0, 0);
    CHECK(g.next_u32() == 0x6627e8d5u);
    CHECK(g.next_u32() == 0xe169c58du);
    CHECK(g.next_u32() == 0xbc57ac4cu);
    CHECK(g.next_u32() == 0x9b00dbd8u);
}

TEST_CASE("streams are reproducible and distinct") {
    RngStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
    bool all_equal_c = true, all_equal_d = true;
    for (int i = 0; i < 64; ++i) {
        const auto va = a.next_u64();
        CHECK(va == b.next_u64());
        all_equal_c = all_equal_c && (va == c.next_u64());
        all_equal_d = all_equal_d && (va == d.next_u64());
    }
    CHECK_FALSE(all_equal_c);
    CHECK_FALSE(all_equal_d);
}

TEST_CASE("uniform and normal moments") {
    RngStream rng(1234, 0);
    const int n = 200000;
    double su = 0, suu = 0, sn = 0, snn = 0, snnnn = 0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
        su += u;
        suu += u * u;
        const double z = rng.normal();
        sn += z;
        snn += z * z;
        snnnn += z * z * z * z;
    }
    const double se = 1.0 / std::sqrt(static_cast<double>(n));
    CHECK(std::abs(su / n - 0.5) < 5 * 0.29 * se);
    CHECK(std::abs(suu / n - 1.0 / 3.0) < 5 * 0.3 * se);
    CHECK(std::abs(sn / n) < 5 * se);
    CHECK(std::abs(snn / n - 1.0) < 5 * std::sqrt(2.0) * se);
    CHECK(std::abs(snnnn / n - 3.0) < 5 * std::sqrt(96.0) * se);
}

TEST_CASE("cross-stream correlation is small") {
    const int n = 20000;
    std::vector<double> x(n), y(n);
    RngStream s0(99, 0), s1(99, 1);
    for (int i = 0; i < n; ++i) {
        x[i] = s0.normal();
        y[i] = s1.normal();
    }
    double sxy = 0;
    for (int i = 0; i < n; ++i)
        sxy += x[i] * y[i];
    CHECK(std::abs(sxy / n) < 4.0 / std::sqrt(static_cast<double>(n)));
}
