#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "risthz/rng.hpp"

using risthz::rng::Philox;
using risthz::rng::Stream;

TEST_CASE("philox streams are reproducible and independent") {
    Philox a(42, 0), b(42, 0), c(42, 1), d(43, 0);
    bool all_eq = true, stream_differs = false, seed_differs = false;
    for (int i = 0; i < 1000; ++i) {
        const auto va = a.next_u32();
        all_eq &= (va == b.next_u32());
        stream_differs |= (va != c.next_u32());
        seed_differs |= (va != d.next_u32());
    }
    CHECK(all_eq);
    CHECK(stream_differs);
    CHECK(seed_differs);
}

TEST_CASE("uniform doubles live in [0,1) and look uniform") {
    Stream s(7, 3);
    double mn = 1.0, mx = 0.0, sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = s.uniform();
        mn = std::min(mn, u);
        mx = std::max(mx, u);
        sum += u;
    }
    CHECK(mn >= 0.0);
    CHECK(mx < 1.0);
    CHECK(std::abs(sum / n - 0.5) < 0.005);
}

TEST_CASE("normal moments") {
    Stream s(11, 0);
    const int n = 400000;
    double m1 = 0, m2 = 0, m3 = 0;
    for (int i = 0; i < n; ++i) {
        const double z = s.normal();
        m1 += z;
        m2 += z * z;
        m3 += z * z * z;
    }
    m1 /= n; m2 /= n; m3 /= n;
    CHECK(std::abs(m1) < 0.01);
    CHECK(std::abs(m2 - 1.0) < 0.02);
    CHECK(std::abs(m3) < 0.03);
}

TEST_CASE("gamma moments for several shapes") {
    for (double shape : {0.63, 1.0, 3.0, 7.5}) {
        Stream s(5, static_cast<std::uint64_t>(shape * 100));
        const int n = 300000;
        double m1 = 0, m2 = 0;
        for (int i = 0; i < n; ++i) {
            const double g = s.gamma(shape);
            m1 += g;
            m2 += g * g;
        }
        m1 /= n; m2 /= n;
        const double var = m2 - m1 * m1;
        CHECK(std::abs(m1 - shape) < 0.03 * shape + 0.01);
        CHECK(std::abs(var - shape) < 0.05 * shape + 0.02);
    }
}
