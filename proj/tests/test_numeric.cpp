#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "foodex/numeric.hpp"

using namespace foodex;
using doctest::Approx;

TEST_CASE("golden-section maximization") {
  auto f = [](double x) { return -(x - 1.7) * (x - 1.7); };
  CHECK(golden_section_max(f, 0, 5) == Approx(1.7).epsilon(1e-8));
  CHECK_THROWS_AS(golden_section_max(f, 2, 1), std::invalid_argument);

  SUBCASE("boundary maxima are found too") {
    auto rising = [](double x) { return x; };
    CHECK(golden_section_max(rising, 0, 3) == Approx(3.0).epsilon(1e-8));
  }
}

TEST_CASE("bracketed root finding") {
  auto f = [](double x) { return x * x * x - 2; };
  const double root = bisect_root(f, 0, 2);
  CHECK(root == Approx(std::cbrt(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(bisect_root(f, 2, 3), std::invalid_argument);
}

TEST_CASE("sign-change scan") {
  auto f = [](double x) { return std::sin(x); };
  const auto brackets = scan_sign_changes(f, 0.5, 7.0, 200);
  REQUIRE(brackets.size() == 2);  // pi and 2 pi
  CHECK(brackets[0].lo < 3.14159);
  CHECK(brackets[0].hi > 3.14159);
  CHECK(brackets[1].lo < 6.28319);
  CHECK(brackets[1].hi > 6.28319);
}

TEST_CASE("difference stencils") {
  auto f = [](double x) { return std::exp(2 * x); };
  CHECK(central_diff(f, 0.3, 1e-6) == Approx(2 * std::exp(0.6)).epsilon(1e-9));
  CHECK(forward_diff3(f, 0.3, 1e-5) == Approx(2 * std::exp(0.6)).epsilon(1e-7));
  CHECK(second_diff(f, 0.3, 1e-4) == Approx(4 * std::exp(0.6)).epsilon(1e-6));
}

TEST_CASE("12-significant-digit formatting") {
  CHECK(format_sig12(4.0 / 3.0) == "1.33333333333");
  CHECK(format_sig12(0.0) == "0");
  CHECK(format_sig12(-0.0972222222222222) == "-0.0972222222222");
  CHECK(format_sig12(1e-15) == "1e-15");
}
