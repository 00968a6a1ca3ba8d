#include <doctest.h>

#include <cmath>
#include <random>

#include "rieszsep/spectrum.hpp"

using namespace rieszsep;

namespace {

const DualGroupDescriptor kZ = DualGroupDescriptor::integers();

SparseTransform unit_transform() {
  return SparseTransform{kZ, {{identity(kZ), {1.0, 0.0}}}, true, 0};
}

}  // namespace

TEST_CASE("natural spectrum estimates") {
  SUBCASE("point mass transform") {
    auto est = natural_spectrum(unit_transform());
    REQUIRE(est.points.size() == 1);
    CHECK(est.points[0] == Complex{1.0, 0.0});
    CHECK_FALSE(est.includes_zero);
  }
  SUBCASE("default family truncation: positive reals plus zero") {
    auto spec = default_family_spec(kZ, lacunary_letters(kZ, 3, 6));
    auto est = natural_spectrum(truncated_transform(spec, 3));
    CHECK(est.includes_zero);
    for (const auto& p : est.points) {
      CHECK(p.imag() == 0.0);
      CHECK(p.real() > 0.0);
      CHECK(p.real() <= 1.0);
    }
  }
}

TEST_CASE("disc separation inequality") {
  const Complex z0 = default_center();

  SUBCASE("z0 itself: z0^2 = i exactly") {
    auto s = disc_lemma_check(z0, z0);
    CHECK(s.admissible);
    CHECK(s.holds);
    CHECK(s.deviation == doctest::Approx(0.0));
  }
  SUBCASE("a nearby point") {
    Complex x{0.65, 0.75};
    REQUIRE(std::abs(x - z0) < 0.1);
    auto s = disc_lemma_check(x, x);
    CHECK(s.admissible);
    CHECK(s.holds);
    CHECK(s.deviation == doctest::Approx(0.14221462653327885));
  }
  SUBCASE("points outside the ball are inadmissible, not failures") {
    auto s = disc_lemma_check({0.0, 0.0}, z0);
    CHECK_FALSE(s.admissible);
    CHECK_FALSE(s.holds);
  }
  SUBCASE("degenerate radius rejected") {
    CHECK_THROWS_AS(disc_lemma_check(z0, z0, z0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(disc_lemma_check(z0, z0, z0, -0.1), std::invalid_argument);
  }
  SUBCASE("mass sampling never violates the bound") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int checked = 0;
    while (checked < 20000) {
      double rad = 0.1 * std::sqrt(unit(rng));
      double ang = 2.0 * std::numbers::pi * unit(rng);
      Complex x = z0 + std::polar(rad, ang);
      Complex y = z0 + std::polar(0.1 * std::sqrt(unit(rng)),
                                  2.0 * std::numbers::pi * unit(rng));
      if (std::abs(x) > 1.0 || std::abs(y) > 1.0) continue;
      auto s = disc_lemma_check(x, y);
      CHECK(s.admissible);
      CHECK(s.holds);
      // Two-ball triangle bound, the algebraic skeleton of the check.
      CHECK(s.deviation <= std::abs(y - z0) + std::abs(x - z0) + 1e-12);
      ++checked;
    }
  }
}

TEST_CASE("gamma avoidance for real transforms") {
  const Complex z0 = default_center();

  SUBCASE("value matching the real part of z0") {
    SparseTransform t{kZ,
                      {{integer_element(kZ, 1), {1.0 / std::numbers::sqrt2, 0.0}}},
                      true,
                      0};
    CHECK(gamma_avoidance(t, z0) == doctest::Approx(1.0 / std::numbers::sqrt2));
  }
  SUBCASE("unit mass at identity") {
    CHECK(gamma_avoidance(unit_transform(), z0) ==
          doctest::Approx(0.765366864730180));
  }
  SUBCASE("every real transform clears the ball radius") {
    auto spec = default_family_spec(kZ, lacunary_letters(kZ, 3, 8));
    auto t = truncated_transform(spec, 3);
    CHECK(gamma_avoidance(t, z0) >= 1.0 / std::numbers::sqrt2 - 1e-12);
    CHECK(gamma_avoidance(t, z0) > 0.1);
  }
  SUBCASE("non-real values rejected") {
    SparseTransform t{kZ, {{integer_element(kZ, 1), {0.1, 0.2}}}, true, 0};
    CHECK_THROWS_AS(gamma_avoidance(t, z0), std::invalid_argument);
  }
}

TEST_CASE("unit disc claim premise record") {
  auto s2 = DualGroupDescriptor::sum_order_two();

  SUBCASE("default family evidences the premises") {
    auto spec = default_family_spec(s2, rademacher_letters(s2, 12));
    auto rec = unit_disc_claim(spec, 12, 3);
    CHECK(rec.hermitian);
    CHECK(rec.probability);
    REQUIRE(rec.ip_partials.size() == 3);
    CHECK(rec.ip_partials[0] > 0.0);
    CHECK(rec.conclusion.find("conditional") != std::string::npos);
  }
  SUBCASE("zero coefficients: criterion sums vanish") {
    RieszSpec spec{s2, rademacher_letters(s2, 4), {}, 0};
    spec.coeffs.assign(4, {0.0, 0.0});
    auto rec = unit_disc_claim(spec, 4, 2);
    CHECK(rec.hermitian);
    for (double v : rec.ip_partials) CHECK(v == 0.0);
    CHECK(rec.conclusion.find("not evidenced") != std::string::npos);
  }
  SUBCASE("non-real coefficients withhold the claim") {
    RieszSpec spec{kZ, lacunary_letters(kZ, 3, 2), {}, 0};
    spec.coeffs.assign(2, {0.2, 0.1});
    auto rec = unit_disc_claim(spec, 2, 1);
    CHECK_FALSE(rec.hermitian);
    CHECK(rec.conclusion.find("withheld") != std::string::npos);
  }
}

TEST_CASE("naturalness gap via the disc mesh") {
  SUBCASE("the disc mesh against itself") {
    SpectrumEstimate est;
    for (unsigned j = 0; j <= 16; ++j) {
      double rad = j / 16.0;
      unsigned count = j == 0 ? 1 : 256;
      for (unsigned l = 0; l < count; ++l)
        est.points.push_back(std::polar(rad, 2.0 * std::numbers::pi * l / 256));
    }
    CHECK(naturalness_gap(est, 256, 16) == doctest::Approx(0.0).epsilon(0.05));
  }
  SUBCASE("real-segment estimates gap the disc by 1 at z=-1") {
    SpectrumEstimate est;
    est.includes_zero = true;
    for (int i = 0; i <= 20; ++i) est.points.push_back({i / 20.0, 0.0});
    CHECK(naturalness_gap(est) == doctest::Approx(1.0).epsilon(1e-2));
  }
  SUBCASE("a single point at 1 gaps by 2") {
    SpectrumEstimate est{{{1.0, 0.0}}, false};
    CHECK(naturalness_gap(est) == doctest::Approx(2.0).epsilon(1e-6));
  }
}

TEST_CASE("witness pair assembly") {
  auto master = lacunary_letters(kZ, 3, 40);
  WitnessParams params;
  params.disc_samples = 2000;

  SUBCASE("shared prefix of length 2") {
    auto a = BranchSeed::from_pattern("0111", "1");
    auto b = BranchSeed::from_pattern("0100", "0");
    auto rep = witness_pair(kZ, a, b, master, params);
    CHECK(rep.certified);
    CHECK(rep.shared_letters == 2);
    CHECK(rep.product_support_size == rep.shared_word_count);
    CHECK(rep.product_support_size <= rep.product_support_bound);
    CHECK(rep.hermitian);
    CHECK(rep.gamma_min_distance > params.r);
    CHECK(rep.disc_lemma_verified);
    CHECK(rep.failure_reason.empty());
  }

  SUBCASE("disjoint branches: product support is the identity alone") {
    auto a = BranchSeed::from_pattern("0", "0");
    auto b = BranchSeed::from_pattern("1", "1");
    auto rep = witness_pair(kZ, a, b, master, params);
    CHECK(rep.certified);
    CHECK(rep.shared_letters == 0);
    CHECK(rep.product_support_size == 1);
    CHECK(rep.gamma_min_distance == doctest::Approx(0.765366864730180));
  }

  SUBCASE("identical seeds rejected as a precondition error") {
    auto a = BranchSeed::from_pattern("0", "0");
    CHECK_THROWS_AS(witness_pair(kZ, a, a, master, params),
                    std::invalid_argument);
  }

  SUBCASE("radius gate enforced") {
    auto a = BranchSeed::from_pattern("0", "0");
    auto b = BranchSeed::from_pattern("1", "1");
    WitnessParams bad = params;
    bad.r = 0.8;  // >= Im z0
    CHECK_THROWS_AS(witness_pair(kZ, a, b, master, bad), std::invalid_argument);
  }

  SUBCASE("certification is monotone in the truncation level") {
    auto a = BranchSeed::from_pattern("0111", "1");
    auto b = BranchSeed::from_pattern("0100", "0");
    WitnessParams deeper = params;
    deeper.max_len = 5;
    auto rep4 = witness_pair(kZ, a, b, master, params);
    auto rep5 = witness_pair(kZ, a, b, master, deeper);
    CHECK(rep4.certified);
    CHECK(rep5.certified);
  }

  SUBCASE("reports are recomputable bit-for-bit") {
    auto a = BranchSeed::from_pattern("0111", "1");
    auto b = BranchSeed::from_pattern("0100", "0");
    auto r1 = witness_pair(kZ, a, b, master, params);
    auto r2 = witness_pair(kZ, a, b, master, params);
    CHECK(r1.gamma_min_distance == r2.gamma_min_distance);
    CHECK(r1.ip_partial == r2.ip_partial);
    CHECK(r1.product_support_size == r2.product_support_size);
  }
}
