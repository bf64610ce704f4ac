#include "hlmono/quadrature.hpp"

#include <doctest.h>

#include <cmath>

using namespace hlmono;

namespace {

// Integral over the reference triangle (0,0), (1,0), (0,1) of x^a y^b divided by its area 1/2.
double monomial_mean(int a, int b) {
    auto fact = [](int n) {
        double f = 1;
        for (int i = 2; i <= n; ++i) f *= i;
        return f;
    };
    return 2.0 * fact(a) * fact(b) / fact(a + b + 2);
}

double rule_mean(const std::vector<BaryPoint>& rule, int a, int b) {
    double s = 0.0;
    for (const auto& q : rule) s += q.weight * std::pow(q.bary[1], a) * std::pow(q.bary[2], b);
    return s;
}

}  // namespace

TEST_CASE("six point rule integrates degree four exactly") {
    const auto& rule6 = triangle_rule6();
    const std::vector<BaryPoint> rule(rule6.begin(), rule6.end());
    double wsum = 0.0;
    for (const auto& q : rule) {
        wsum += q.weight;
        CHECK(q.bary.sum() == doctest::Approx(1.0));
        CHECK(q.bary.minCoeff() > 0.0);
    }
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-15));
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; a + b <= 4; ++b)
            CHECK(rule_mean(rule, a, b) == doctest::Approx(monomial_mean(a, b)).epsilon(1e-13));
}

TEST_CASE("band fraction is exact for linear data") {
    const std::array<double, 3> f{0.0, 1.0, 0.0};  // f = y-barycentric of vertex 1
    // Area fraction where lambda_1 < t is 1 - (1 - t)^2.
    for (double t : {0.1, 0.5, 0.9}) CHECK(band_fraction(f, -1.0, t) == doctest::Approx(1.0 - (1.0 - t) * (1.0 - t)));
    CHECK(band_fraction(f, -1.0, 2.0) == doctest::Approx(1.0));
    CHECK(band_fraction(f, 2.0, 3.0) == 0.0);
    CHECK(clip_band(f, 2.0, 3.0).empty());
    CHECK(band_fraction(f, 0.25, 0.75) == doctest::Approx(0.75 * 0.75 - 0.25 * 0.25));
}

TEST_CASE("clipped polygon vertices lie in the band") {
    const std::array<double, 3> f{0.2, 1.7, -0.4};
    const auto poly = clip_band(f, 0.0, 1.0);
    REQUIRE(poly.size() >= 3);
    for (const auto& b : poly) {
        CHECK(b.sum() == doctest::Approx(1.0));
        const double v = b[0] * f[0] + b[1] * f[1] + b[2] * f[2];
        CHECK(v >= -1e-12);
        CHECK(v <= 1.0 + 1e-12);
    }
}

TEST_CASE("band quadrature weights add up to the band fraction") {
    const std::array<double, 3> f{0.2, 1.7, -0.4};
    for (auto [lo, hi] : {std::pair{0.0, 1.0}, std::pair{-1.0, 0.5}, std::pair{0.9, 3.0}}) {
        double w = 0.0, first = 0.0;
        for (const auto& q : band_quadrature(f, lo, hi)) {
            w += q.weight;
            first += q.weight * (q.bary[0] * f[0] + q.bary[1] * f[1] + q.bary[2] * f[2]);
            const double v = q.bary[0] * f[0] + q.bary[1] * f[1] + q.bary[2] * f[2];
            CHECK(v > lo - 1e-12);
            CHECK(v < hi + 1e-12);
        }
        CHECK(w == doctest::Approx(band_fraction(f, lo, hi)).epsilon(1e-13));
        // The mean of f over the band lies inside it.
        if (w > 0) {
            CHECK(first / w >= lo);
            CHECK(first / w <= hi);
        }
    }
}
