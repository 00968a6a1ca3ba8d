#pragma once

// Natural-spectrum estimates, the two-ball disc separation arithmetic,
// and assembly of per-pair separation-witness certificates. A certificate
// collects exactly the finite facts the separation argument consumes:
// finite product support, real transform range away from z0, and the
// disc inequality; it never claims anything about the Gelfand space
// itself.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rieszsep/adfamily.hpp"
#include "rieszsep/concrete.hpp"
#include "rieszsep/riesz.hpp"

namespace rieszsep {

inline Complex default_center() {
  return {1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2};
}
inline constexpr double kDefaultRadius = 0.1;

struct SpectrumEstimate {
  std::vector<Complex> points;
  bool includes_zero = false;  // set for truncations of infinite supports
};

// Value set of the transform; a truncation of an infinite-support
// transform vanishing at infinity has 0 in the closure of its range.
inline SpectrumEstimate natural_spectrum(const SparseTransform& t) {
  SpectrumEstimate est;
  est.includes_zero = !t.exact;
  est.points.reserve(t.values.size());
  for (const auto& [e, v] : t.values) est.points.push_back(v);
  return est;
}

// One sample of the disc separation inequality: if x and y sit in the
// r-ball around z0 inside the closed unit disc, then |xy - z0^2| < 2r.
struct DiscLemmaSample {
  bool admissible = false;  // preconditions held
  bool holds = false;       // the product inequality held
  double deviation = 0.0;   // |xy - z0^2|
};

inline DiscLemmaSample disc_lemma_check(Complex x, Complex y,
                                        Complex z0 = default_center(),
                                        double r = kDefaultRadius) {
  if (r <= 0.0) throw std::invalid_argument("radius must be positive");
  DiscLemmaSample s;
  const double eps = 1e-12;
  s.admissible = std::abs(x) <= 1.0 + eps && std::abs(y) <= 1.0 + eps &&
                 std::abs(x - z0) < r && std::abs(y - z0) < r;
  s.deviation = std::abs(x * y - z0 * z0);
  s.holds = s.admissible && s.deviation < 2.0 * r;
  return s;
}

// Minimum distance from the (real) transform range to z0. For real
// values and |Im z0| > 0 this is at least Im z0.
inline double gamma_avoidance(const SparseTransform& t,
                              Complex z0 = default_center(),
                              double r = kDefaultRadius) {
  if (r <= 0.0) throw std::invalid_argument("radius must be positive");
  if (t.values.empty())
    throw std::invalid_argument("gamma_avoidance requires non-empty support");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [e, v] : t.values) {
    if (std::abs(v.imag()) > 1e-12)
      throw std::invalid_argument("gamma_avoidance requires a Hermitian transform");
    best = std::min(best, std::abs(v - z0));
  }
  return best;
}

// Premise record for the full-disc spectrum assertion. The conclusion is
// a conditional statement, never a computation of the spectrum.
struct UnitDiscClaim {
  bool hermitian = false;
  bool probability = false;
  std::vector<double> ip_partials;  // index n-1 holds the exponent-n sum
  std::vector<ProfileRow> profile;
  std::string conclusion;
};

inline UnitDiscClaim unit_disc_claim(const RieszSpec& spec, std::size_t n_terms,
                                     unsigned n_max,
                                     unsigned profile_level = 8) {
  UnitDiscClaim rec;
  rec.hermitian = spec.hermitian();
  if (!rec.hermitian) {
    rec.conclusion = "spec not Hermitian; claim withheld";
    return rec;
  }
  // Probability: unit mass at the identity plus nonnegative density at a
  // checkable level (Rademacher specs only get the density check).
  rec.probability = validate_spec(spec).empty();
  if (rec.probability &&
      spec.group.kind() == DualGroupDescriptor::Kind::DirectSumOrderTwo) {
    unsigned k = std::min<std::size_t>(profile_level, spec.letters.size());
    if (k >= 1) {
      DensityVector d = eval_cantor(spec, k, 1);
      double mn = *std::min_element(d.values.begin(), d.values.end());
      rec.probability = mn >= -1e-9 && std::abs(tv_norm(d) - 1.0) < 1e-9;
    }
  }
  for (unsigned n = 1; n <= n_max; ++n)
    rec.ip_partials.push_back(ip_criterion_partial(spec, n_terms, n));
  if (rec.probability &&
      spec.group.kind() == DualGroupDescriptor::Kind::DirectSumOrderTwo) {
    unsigned hi = std::min<std::size_t>(profile_level, spec.letters.size());
    if (hi >= 1) rec.profile = singularity_profile(spec, 1, hi, 1, 2);
  }
  bool divergent_evidence =
      !rec.ip_partials.empty() && rec.ip_partials.front() > 0.0;
  if (!divergent_evidence)
    rec.conclusion =
        "criterion partial sums vanish; full-disc premises not evidenced";
  else if (rec.probability)
    rec.conclusion =
        "sigma = closed unit disc asserted conditional on criterion divergence";
  else
    rec.conclusion = "probability premises not evidenced; claim withheld";
  return rec;
}

// Hausdorff distance between the estimate (plus 0 when flagged) and the
// closed unit disc, over a fixed deterministic mesh of the disc.
inline double naturalness_gap(const SpectrumEstimate& est,
                              unsigned boundary_points = 4096,
                              unsigned rings = 64) {
  std::vector<Complex> pts = est.points;
  if (est.includes_zero) pts.push_back({0.0, 0.0});
  if (pts.empty()) throw std::invalid_argument("empty spectrum estimate");
  double sup = 0.0;
  for (unsigned j = 0; j <= rings; ++j) {
    double rad = static_cast<double>(j) / rings;
    unsigned count = j == 0 ? 1 : boundary_points;
    for (unsigned l = 0; l < count; ++l) {
      Complex z = std::polar(rad, 2.0 * std::numbers::pi * l / count);
      double best = std::abs(z - pts.front());
      for (std::size_t i = 1; i < pts.size(); ++i)
        best = std::min(best, std::abs(z - pts[i]));
      sup = std::max(sup, best);
    }
  }
  // Estimates inside the disc contribute nothing in the other direction.
  return sup;
}

struct WitnessParams {
  unsigned max_len = 4;        // truncation level L
  unsigned depth = 4;          // branch prefixes per AD set
  Complex z0 = default_center();
  double r = kDefaultRadius;
  unsigned disc_samples = 10000;
  std::uint64_t sample_seed = 0x5eed;
};

struct WitnessReport {
  std::string seed_alpha;
  std::string seed_beta;
  unsigned max_len = 0;
  unsigned depth = 0;
  std::size_t letters_alpha = 0;
  std::size_t letters_beta = 0;
  unsigned shared_letters = 0;          // from intersection_bound
  std::size_t product_support_size = 0;
  std::uint64_t product_support_bound = 0;  // word-set bound on shared letters
  std::size_t shared_word_count = 0;        // |Omega_L(shared letters)|
  double gamma_min_distance = 0.0;
  Complex z0{0.0, 0.0};
  double r = 0.0;
  bool disc_lemma_verified = false;
  unsigned disc_samples = 0;
  bool hermitian = false;
  double ip_partial = 0.0;
  bool certified = false;
  std::string failure_reason;  // empty when certified
};

// Full pipeline for one pair: AD sets, indexed letter sets, default
// coefficient family, truncated transforms, convolution, and every gate.
// Any gate failure yields a failed report, never a partial certificate.
inline WitnessReport witness_pair(const DualGroupDescriptor& group,
                                  const BranchSeed& seed_a,
                                  const BranchSeed& seed_b,
                                  const std::vector<Letter>& master,
                                  const WitnessParams& params) {
  if (!(params.r > 0.0) || params.r >= params.z0.imag())
    throw std::invalid_argument("radius gate violated: need 0 < r < Im z0");
  if (seed_a == seed_b)
    throw std::invalid_argument("seeds must be distinguishable");
  if (master.empty()) throw std::invalid_argument("empty master letter list");

  WitnessReport rep;
  rep.seed_alpha = seed_a.to_string();
  rep.seed_beta = seed_b.to_string();
  rep.max_len = params.max_len;
  rep.depth = params.depth;
  rep.z0 = params.z0;
  rep.r = params.r;

  auto fail = [&](std::string reason) {
    rep.certified = false;
    rep.failure_reason = std::move(reason);
    return rep;
  };

  unsigned shared = intersection_bound(seed_a, seed_b);
  rep.shared_letters = shared;
  rep.product_support_bound = word_count_bound(shared, params.max_len);

  IndexedLetters la = letters_for(master, ad_set(seed_a, params.depth));
  IndexedLetters lb = letters_for(master, ad_set(seed_b, params.depth));
  rep.letters_alpha = la.letters.size();
  rep.letters_beta = lb.letters.size();

  // The pair's letters must be jointly dissociate at the working level.
  std::vector<Letter> joint = la.letters;
  std::set<GroupElement> seen;
  for (const auto& l : joint) seen.insert(l.element);
  std::vector<Letter> shared_letters;
  for (const auto& l : lb.letters) {
    if (seen.count(l.element))
      shared_letters.push_back(l);
    else
      joint.push_back(l);
  }
  auto dis = is_dissociate(group, joint, params.max_len);
  if (!dis.verified) return fail("joint letter set not dissociate at level L");
  if (shared_letters.size() != shared)
    return fail("shared letter count disagrees with seed intersection bound");

  RieszSpec spec_a = default_family_spec(group, la.letters, params.max_len);
  RieszSpec spec_b = default_family_spec(group, lb.letters, params.max_len);
  if (!validate_spec(spec_a).empty() || !validate_spec(spec_b).empty())
    return fail("coefficient constraints violated");
  rep.hermitian = spec_a.hermitian() && spec_b.hermitian();
  if (!rep.hermitian) return fail("specs not Hermitian");

  SparseTransform ta = truncated_transform(spec_a, params.max_len);
  SparseTransform tb = truncated_transform(spec_b, params.max_len);
  SparseTransform product = convolve(ta, tb);
  rep.product_support_size = product.values.size();
  rep.shared_word_count =
      shared_letters.empty()
          ? 1
          : enumerate_words(group, shared_letters, params.max_len).size();
  if (rep.product_support_size > rep.product_support_bound)
    return fail("product support exceeds the word-set bound");

  try {
    rep.gamma_min_distance = gamma_avoidance(product, params.z0, params.r);
  } catch (const std::invalid_argument&) {
    return fail("product transform not real-valued");
  }
  if (!(rep.gamma_min_distance > params.r))
    return fail("transform range not separated from the disc center");

  // Seeded mass sampling of the disc inequality around z0.
  rep.disc_samples = params.disc_samples;
  std::mt19937_64 rng(params.sample_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw = [&]() {
    while (true) {
      double rad = params.r * std::sqrt(unit(rng));
      double ang = 2.0 * std::numbers::pi * unit(rng);
      Complex z = params.z0 + std::polar(rad, ang);
      if (std::abs(z) <= 1.0) return z;
    }
  };
  rep.disc_lemma_verified = true;
  for (unsigned i = 0; i < params.disc_samples; ++i) {
    auto s = disc_lemma_check(draw(), draw(), params.z0, params.r);
    if (!s.admissible || !s.holds) {
      rep.disc_lemma_verified = false;
      break;
    }
  }
  if (!rep.disc_lemma_verified) return fail("disc inequality sample failed");

  rep.ip_partial = ip_criterion_partial(spec_a, spec_a.letters.size(), 1);
  rep.certified = true;
  return rep;
}

}  // namespace rieszsep
