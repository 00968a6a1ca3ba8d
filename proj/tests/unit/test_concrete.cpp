#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "rieszsep/concrete.hpp"

using namespace rieszsep;

namespace {

const DualGroupDescriptor kZ = DualGroupDescriptor::integers();
const DualGroupDescriptor kS2 = DualGroupDescriptor::sum_order_two();

RieszSpec int_spec(std::initializer_list<long long> letters, double a) {
  RieszSpec spec{kZ, {}, {}, 0};
  for (long long v : letters) {
    spec.letters.push_back(make_letter(kZ, integer_element(kZ, v)));
    spec.coeffs.push_back({a, 0.0});
  }
  return spec;
}

RieszSpec rademacher_spec(unsigned k, double a) {
  RieszSpec spec{kS2, rademacher_letters(kS2, k), {}, 0};
  spec.coeffs.assign(k, {a, 0.0});
  return spec;
}

}  // namespace

TEST_CASE("circle evaluation") {
  CircleGrid grid(64);

  SUBCASE("empty product is the constant 1") {
    auto spec = int_spec({3}, 0.5);
    auto d = eval_circle(spec, {}, grid);
    for (double v : d.values) CHECK(v == 1.0);
  }
  SUBCASE("single factor at t=0") {
    auto spec = int_spec({3}, 0.5);
    auto d = eval_circle(spec, {0}, grid);
    CHECK(d.values[0] == doctest::Approx(2.0));  // 1 + 2*(1/2)*cos(0)
  }
  SUBCASE("nonnegativity for valid coefficients") {
    auto spec = int_spec({3, 9}, 0.5);
    auto d = eval_circle(spec, {0, 1}, grid);
    double mn = *std::min_element(d.values.begin(), d.values.end());
    CHECK(mn >= -1e-9);
  }
  SUBCASE("aliasing bound enforced") {
    auto spec = int_spec({40}, 0.5);
    CHECK_THROWS_AS(eval_circle(spec, {0}, CircleGrid(64)),
                    std::invalid_argument);
    CHECK_THROWS_AS(CircleGrid(100), std::invalid_argument);
  }
}

TEST_CASE("grid coefficients recover the sparse transform") {
  SUBCASE("constant density") {
    CircleGrid grid(32);
    DensityVector d{std::vector<double>(32, 1.0), 1.0 / 32};
    auto coeffs = grid_coefficients(d, grid);
    REQUIRE(coeffs.size() == 1);
    CHECK(coeffs.at(0).real() == doctest::Approx(1.0));
  }
  SUBCASE("single factor: {0 -> 1, +-3 -> 1/2}") {
    CircleGrid grid(64);
    auto spec = int_spec({3}, 0.5);
    auto coeffs = grid_coefficients(eval_circle(spec, {0}, grid), grid);
    REQUIRE(coeffs.size() == 3);
    CHECK(std::abs(coeffs.at(3) - Complex{0.5, 0.0}) < 1e-9);
    CHECK(std::abs(coeffs.at(-3) - Complex{0.5, 0.0}) < 1e-9);
  }
  SUBCASE("two factors match partial_transform on the whole word set") {
    CircleGrid grid(64);
    auto spec = int_spec({3, 9}, 0.5);
    auto t = partial_transform(spec, {0, 1}, 2);
    auto coeffs = grid_coefficients(eval_circle(spec, {0, 1}, grid), grid);
    REQUIRE(coeffs.size() == t.values.size());
    for (const auto& [e, v] : t.values) {
      long long f = static_cast<long long>(e.coords().empty()
                                               ? Int(0)
                                               : e.coords().begin()->second);
      CHECK(std::abs(coeffs.at(f) - v) < 1e-9);
    }
  }
}

TEST_CASE("cantor densities are exact") {
  SUBCASE("k=1 hand enumeration") {
    auto spec = rademacher_spec(1, 0.5);
    auto d1 = eval_cantor(spec, 1, 1);
    REQUIRE(d1.values.size() == 2);
    CHECK(d1.values[0] == doctest::Approx(1.5));
    CHECK(d1.values[1] == doctest::Approx(0.5));
    auto d2 = eval_cantor(spec, 1, 2);
    CHECK(d2.values[0] == doctest::Approx(1.25));
    CHECK(d2.values[1] == doctest::Approx(0.75));
  }
  SUBCASE("zero coefficients give Haar") {
    auto spec = rademacher_spec(4, 0.0);
    auto d = eval_cantor(spec, 4, 1);
    for (double v : d.values) CHECK(v == doctest::Approx(1.0));
  }
  SUBCASE("memory cap and letter checks") {
    auto spec = rademacher_spec(4, 0.3);
    CHECK_THROWS_AS(eval_cantor(spec, 4, 1, 3), std::invalid_argument);
    CHECK_THROWS_AS(eval_cantor(spec, 5, 1), std::invalid_argument);
    auto bad = int_spec({3}, 0.4);
    CHECK_THROWS_AS(eval_cantor(bad, 1, 1), std::invalid_argument);
  }
}

TEST_CASE("tv norm") {
  SUBCASE("probability densities have mass one") {
    auto spec = rademacher_spec(6, 0.4);
    for (unsigned n = 1; n <= 3; ++n)
      CHECK(tv_norm(eval_cantor(spec, 6, n)) == doctest::Approx(1.0));
  }
  SUBCASE("hand-computed distance at k=1") {
    auto spec = rademacher_spec(1, 0.5);
    auto d1 = eval_cantor(spec, 1, 1);
    auto d2 = eval_cantor(spec, 1, 2);
    CHECK(tv_distance(d1, d2) == doctest::Approx(0.25));
  }
  SUBCASE("zero vector") {
    DensityVector z{std::vector<double>(4, 0.0), 0.25};
    CHECK(tv_norm(z) == 0.0);
  }
}

TEST_CASE("singularity profile") {
  SUBCASE("k=1, a=1/2 matches the hand value") {
    auto spec = rademacher_spec(1, 0.5);
    auto rows = singularity_profile(spec, 1, 1, 1, 2);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].tv == doctest::Approx(0.25));
  }
  SUBCASE("zero coefficients: both powers are Haar") {
    auto spec = rademacher_spec(5, 0.0);
    for (const auto& row : singularity_profile(spec, 1, 5, 1, 2))
      CHECK(row.tv == doctest::Approx(0.0));
  }
  SUBCASE("default family: nondecreasing, pinned endpoints") {
    auto spec = default_family_spec(kS2, rademacher_letters(kS2, 12));
    auto rows = singularity_profile(spec, 1, 12, 1, 2);
    for (std::size_t i = 1; i < rows.size(); ++i)
      CHECK(rows[i].tv >= rows[i - 1].tv - 1e-12);
    // Independently computed endpoints (direct atom enumeration).
    CHECK(rows[9].tv == doctest::Approx(0.648029923474).epsilon(1e-9));
    CHECK(rows[11].tv == doctest::Approx(0.682595881905).epsilon(1e-9));
  }
  SUBCASE("equal powers rejected") {
    auto spec = rademacher_spec(2, 0.3);
    CHECK_THROWS_AS(singularity_profile(spec, 1, 2, 2, 2),
                    std::invalid_argument);
  }
}

TEST_CASE("piecewise linear extension") {
  SUBCASE("tent at 0") {
    auto e = pl_extend({{0, {1.0, 0.0}}}, 4);
    CHECK(pl_eval(e, 0.0) == Complex{1.0, 0.0});
    CHECK(pl_eval(e, 0.5).real() == doctest::Approx(0.5));
    CHECK(pl_eval(e, -0.25).real() == doctest::Approx(0.75));
    CHECK(pl_eval(e, 2.0) == Complex{0.0, 0.0});
    CHECK(pl_eval(e, 100.0) == Complex{0.0, 0.0});
  }
  SUBCASE("restriction to the knots is the identity") {
    std::map<long long, Complex> t = {
        {-2, {0.25, 0.0}}, {0, {1.0, 0.0}}, {3, {-0.5, 0.0}}};
    auto e = pl_extend(t, 5);
    for (const auto& [x, v] : t)
      CHECK(pl_eval(e, static_cast<double>(x)) == v);
    CHECK(pl_eval(e, 1.0) == Complex{0.0, 0.0});
  }
  SUBCASE("real even data extends real and even") {
    std::map<long long, Complex> t = {
        {-3, {0.2, 0.0}}, {-1, {0.7, 0.0}}, {0, {1.0, 0.0}},
        {1, {0.7, 0.0}},  {3, {0.2, 0.0}}};
    auto e = pl_extend(t, 4);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> xi(0.0, 4.5);
    for (int i = 0; i < 100; ++i) {
      double x = xi(rng);
      CHECK(pl_eval(e, x).imag() == 0.0);
      CHECK(pl_eval(e, x).real() == doctest::Approx(pl_eval(e, -x).real()));
    }
  }
  SUBCASE("knot outside range rejected") {
    CHECK_THROWS_AS(pl_extend({{7, {1.0, 0.0}}}, 4), std::out_of_range);
  }
}

TEST_CASE("product support intervals") {
  SUBCASE("tents near 0 and near {0,1} overlap in a single interval") {
    auto e1 = pl_extend({{0, {1.0, 0.0}}}, 4);
    auto e2 = pl_extend({{0, {1.0, 0.0}}, {1, {1.0, 0.0}}}, 4);
    auto iv = pl_product_support(e1, e2);
    REQUIRE(iv.size() == 1);
    CHECK(iv[0].first == doctest::Approx(-1.0));
    CHECK(iv[0].second == doctest::Approx(1.0));
  }
  SUBCASE("integer supports at distance >= 2 give empty support") {
    auto e1 = pl_extend({{0, {1.0, 0.0}}}, 4);
    auto e2 = pl_extend({{3, {1.0, 0.0}}}, 4);
    CHECK(pl_product_support(e1, e2).empty());
  }
  SUBCASE("an all-ones partner restricts to the other support") {
    std::map<long long, Complex> ones;
    for (long long x = -4; x <= 4; ++x) ones[x] = {1.0, 0.0};
    auto e1 = pl_extend({{0, {1.0, 0.0}}}, 4);
    auto e2 = pl_extend(ones, 4);
    auto iv = pl_product_support(e1, e2);
    REQUIRE(iv.size() == 1);
    CHECK(iv[0].first == doctest::Approx(-1.0));
    CHECK(iv[0].second == doctest::Approx(1.0));
  }
  SUBCASE("sign change splits at the interior zero") {
    auto e1 = pl_extend({{0, {1.0, 0.0}}, {1, {-1.0, 0.0}}}, 2);
    std::map<long long, Complex> ones;
    for (long long x = -2; x <= 2; ++x) ones[x] = {1.0, 0.0};
    auto e2 = pl_extend(ones, 2);
    auto iv = pl_product_support(e1, e2);
    REQUIRE(iv.size() == 2);
    CHECK(iv[0].second == doctest::Approx(0.5));
    CHECK(iv[1].first == doctest::Approx(0.5));
  }
}
