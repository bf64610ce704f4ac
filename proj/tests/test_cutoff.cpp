#include "hlmono/cutoff.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace hlmono;

namespace {

void check_profile(const CutoffSpec& c) {
    CHECK(c.chi(0.0) == 1.0);
    CHECK(c.chi(1.0) == 1.0);
    CHECK(c.chi(2.0) == doctest::Approx(0.0));
    CHECK(c.chi(5.0) == 0.0);
    const auto k = c.knots();
    REQUIRE(k.size() == 5);
    for (std::size_t i = 1; i < k.size(); ++i) CHECK(k[i] > k[i - 1]);

    // Continuity of chi, chi', chi'' across every knot.
    const double d = 1e-10;
    for (double t : k) {
        CHECK(c.chi(t - d) == doctest::Approx(c.chi(t + d)).epsilon(1e-7));
        CHECK(c.d1(t - d) == doctest::Approx(c.d1(t + d)).epsilon(1e-6).scale(1.0));
        CHECK(c.d2(t - d) == doctest::Approx(c.d2(t + d)).epsilon(1e-4).scale(1.0));
    }
    // Derivatives against central differences away from the knots.
    for (double t = 0.05; t < 2.2; t += 0.0731) {
        const double h = 1e-5;
        CHECK(c.d1(t) == doctest::Approx((c.chi(t + h) - c.chi(t - h)) / (2 * h)).epsilon(1e-6).scale(1.0));
        CHECK(c.d2(t) == doctest::Approx((c.d1(t + h) - c.d1(t - h)) / (2 * h)).epsilon(1e-5).scale(1.0));
    }
    // Plateau slope and monotonicity.
    const double mid = 0.5 * (c.start + c.end);
    CHECK(c.d1(mid) == doctest::Approx(-c.slope));
    for (double t = 0.0; t < 2.5; t += 0.01) CHECK(c.d1(t) <= 1e-15);
}

}  // namespace

TEST_CASE("main cutoff profile") {
    const CutoffSpec c = make_cutoff(CutoffKind::main);
    CHECK(c.start == doctest::Approx(13.0 / 12.0));
    CHECK(c.end == doctest::Approx(23.0 / 12.0));
    CHECK(c.slope == doctest::Approx(1.5));
    CHECK(c.d1(1.5) == doctest::Approx(-1.5));
    check_profile(c);
}

TEST_CASE("epsilon cutoff profile") {
    for (double eps : {0.05, 0.1, 0.2}) {
        const CutoffSpec c = make_cutoff(CutoffKind::epsilon, eps);
        CHECK(c.start == doctest::Approx(1.0));
        CHECK(c.end == doctest::Approx(2.0));
        CHECK(c.d1(1.5) == doctest::Approx(-1.0));
        check_profile(c);
        CHECK_FALSE(c.describe().empty());
    }
}

TEST_CASE("epsilon cutoff rejects infeasible widths") {
    for (double eps : {0.0, -0.1, 0.25, 0.3, std::nan("")})
        CHECK_THROWS_AS(make_cutoff(CutoffKind::epsilon, eps), std::invalid_argument);
}
