#pragma once

// Riesz products as sparse Fourier-Stieltjes coefficient systems: the
// product coefficient formula over a dissociate letter set, exact partial
// products, truncated transforms of the infinite product, convolution as
// pointwise multiplication, convolution powers, and the divergence
// criterion for independent powers.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rieszsep/dissociate.hpp"
#include "rieszsep/dualgroup.hpp"

namespace rieszsep {

using Complex = std::complex<double>;

// A dissociate letter set with a coefficient per letter. Determines the
// Riesz product measure entirely through its coefficient system; the
// measure itself is never materialized.
struct RieszSpec {
  DualGroupDescriptor group;
  std::vector<Letter> letters;
  std::vector<Complex> coeffs;    // parallel to letters
  unsigned verified_level = 0;    // dissociate verification level on record

  bool hermitian() const {
    for (const auto& a : coeffs)
      if (a.imag() != 0.0) return false;
    return true;
  }
};

struct SpecViolation {
  std::size_t letter_index;
  std::string message;
};

// Coefficient constraints: involutive letters need real a in (-1, 1),
// the rest |a| <= 1/2. These force the partial-product densities >= 0.
inline std::vector<SpecViolation> validate_spec(const RieszSpec& spec) {
  std::vector<SpecViolation> out;
  if (spec.letters.size() != spec.coeffs.size()) {
    out.push_back({0, "letter/coefficient count mismatch"});
    return out;
  }
  for (std::size_t i = 0; i < spec.letters.size(); ++i) {
    const Complex& a = spec.coeffs[i];
    if (spec.letters[i].involution) {
      if (a.imag() != 0.0)
        out.push_back({i, "involutive letter requires a real coefficient"});
      else if (!(a.real() > -1.0 && a.real() < 1.0))
        out.push_back({i, "involutive coefficient outside (-1, 1)"});
    } else if (std::abs(a) > 0.5) {
      out.push_back({i, "coefficient modulus exceeds 1/2"});
    }
  }
  return out;
}

inline Complex word_value(const RieszSpec& spec, const FormalWord& w) {
  Complex v{1.0, 0.0};
  for (const auto& [idx, eps] : w.factors) {
    const Complex& a = spec.coeffs[idx];
    v *= eps > 0 ? a : std::conj(a);
  }
  return v;
}

// Coefficient of the Riesz product at omega, resolved through the word
// decomposer. `truncated` marks a zero that is only proven up to the
// enumeration level, as opposed to a complete-enumeration exact zero.
struct CoefficientValue {
  Complex value{0.0, 0.0};
  bool truncated = false;
};

inline CoefficientValue coefficient(const RieszSpec& spec, const WordSet& words,
                                    const GroupElement& omega) {
  auto it = words.entries.find(omega);
  if (it != words.entries.end()) return {word_value(spec, it->second), false};
  bool complete = words.max_length >= spec.letters.size();
  return {Complex{0.0, 0.0}, !complete};
}

inline CoefficientValue coefficient(const RieszSpec& spec,
                                    const GroupElement& omega,
                                    unsigned max_len) {
  WordSet words = enumerate_words(spec.group, spec.letters, max_len);
  return coefficient(spec, words, omega);
}

// Finitely supported transform. `exact` distinguishes complete transforms
// of trigonometric polynomials from truncations of infinite products.
struct SparseTransform {
  DualGroupDescriptor group;
  std::map<GroupElement, Complex> values;  // support = key set, no zeros
  bool exact = true;
  unsigned level = 0;  // truncation level when !exact

  Complex at(const GroupElement& e) const {
    auto it = values.find(e);
    return it == values.end() ? Complex{0.0, 0.0} : it->second;
  }
};

namespace detail {

inline SparseTransform transform_over(const RieszSpec& spec,
                                      const std::vector<Letter>& letters,
                                      unsigned max_len, bool exact) {
  RieszSpec sub{spec.group, letters, {}, spec.verified_level};
  // Map letters back to their coefficients in the parent spec.
  for (const auto& l : letters) {
    bool found = false;
    for (std::size_t i = 0; i < spec.letters.size(); ++i) {
      if (spec.letters[i].element == l.element) {
        sub.coeffs.push_back(spec.coeffs[i]);
        found = true;
        break;
      }
    }
    if (!found) throw std::invalid_argument("letter not in spec");
  }
  SparseTransform t;
  t.group = spec.group;
  t.exact = exact;
  t.level = max_len;
  WordSet words = enumerate_words(spec.group, letters, max_len);
  for (const auto& [e, w] : words.entries) {
    Complex v = word_value(sub, w);
    if (v != Complex{0.0, 0.0}) t.values.emplace(e, v);
  }
  return t;
}

}  // namespace detail

// Exact transform of the partial product P_Phi: support Omega(Phi),
// coefficient per word given by the product formula. Phi given as letter
// indices into the spec.
inline SparseTransform partial_transform(const RieszSpec& spec,
                                         const std::vector<std::uint32_t>& phi,
                                         unsigned max_len) {
  if (phi.size() > max_len)
    throw std::invalid_argument("partial product larger than word bound");
  std::vector<Letter> letters;
  letters.reserve(phi.size());
  for (auto i : phi) {
    if (i >= spec.letters.size()) throw std::out_of_range("letter index");
    letters.push_back(spec.letters[i]);
  }
  unsigned len = letters.empty() ? 1 : static_cast<unsigned>(letters.size());
  return detail::transform_over(spec, letters, len, /*exact=*/true);
}

// Truncation of the full (conceptually infinite) product's transform:
// support Omega_L over all letters of the spec, marked non-exact.
inline SparseTransform truncated_transform(const RieszSpec& spec,
                                           unsigned max_len) {
  return detail::transform_over(spec, spec.letters, max_len, /*exact=*/false);
}

// Coefficient rule of the default family: 1/ln(b+5) by letter index,
// clamped into the validity region. For non-involutive letters the raw
// value exceeds 1/2 at b = 1, 2 and is clamped to exactly 1/2; clamped
// terms fall in neither branch of the independent-powers criterion and
// the tail alone diverges.
inline double default_family_coefficient(unsigned b, bool involutive) {
  if (b < 1) throw std::invalid_argument("letter index must be >= 1");
  double raw = 1.0 / std::log(static_cast<double>(b) + 5.0);
  double clamp = involutive ? 1.0 - 1e-6 : 0.5;
  return raw < clamp ? raw : clamp;
}

inline RieszSpec default_family_spec(const DualGroupDescriptor& group,
                                     std::vector<Letter> letters,
                                     unsigned verified_level = 0) {
  RieszSpec spec{group, std::move(letters), {}, verified_level};
  spec.coeffs.reserve(spec.letters.size());
  for (std::size_t i = 0; i < spec.letters.size(); ++i)
    spec.coeffs.emplace_back(
        default_family_coefficient(static_cast<unsigned>(i) + 1,
                                   spec.letters[i].involution),
        0.0);
  return spec;
}

// Pointwise product on the intersection of supports.
inline SparseTransform convolve(const SparseTransform& t1,
                                const SparseTransform& t2) {
  if (!(t1.group == t2.group))
    throw std::invalid_argument("convolve: group mismatch");
  SparseTransform out;
  out.group = t1.group;
  out.exact = t1.exact && t2.exact;
  out.level = t1.exact ? t2.level : (t2.exact ? t1.level : std::min(t1.level, t2.level));
  for (const auto& [e, v] : t1.values) {
    auto it = t2.values.find(e);
    if (it == t2.values.end()) continue;
    Complex p = v * it->second;
    if (p != Complex{0.0, 0.0}) out.values.emplace(e, p);
  }
  return out;
}

// The n-th convolution power of a Hermitian Riesz product is the Riesz
// product with coefficients a^n; its transform is the pointwise power.
inline RieszSpec transform_power(const RieszSpec& spec, unsigned n) {
  if (n == 0)
    throw std::invalid_argument("power 0 is the unit, not a Riesz product");
  if (!spec.hermitian())
    throw std::invalid_argument("transform_power requires a Hermitian spec");
  RieszSpec out = spec;
  for (auto& a : out.coeffs) a = Complex{std::pow(a.real(), n), 0.0};
  return out;
}

// N-term partial sum of the independent-powers criterion:
// |a| < 1/2 contributes |a|^{2n}, |a| > 1/2 contributes 1 - |a|,
// |a| = 1/2 exactly contributes to neither branch.
inline double ip_criterion_partial(const RieszSpec& spec, std::size_t n_terms,
                                   unsigned n) {
  if (n_terms > spec.coeffs.size())
    throw std::invalid_argument("partial sum exceeds letter count");
  double sum = 0.0;
  for (std::size_t i = 0; i < n_terms; ++i) {
    double m = std::abs(spec.coeffs[i]);
    if (m < 0.5)
      sum += std::pow(m, 2.0 * n);
    else if (m > 0.5)
      sum += 1.0 - m;
  }
  return sum;
}

// Master letter builders used throughout: lacunary powers of a base in Z,
// or the canonical order-two generators (Rademacher characters' indices).
inline std::vector<Letter> lacunary_letters(const DualGroupDescriptor& g,
                                            Int base, std::size_t count) {
  if (g.kind() != DualGroupDescriptor::Kind::IntegerGroup)
    throw std::invalid_argument("lacunary letters require the group Z");
  if (base < 2) throw std::invalid_argument("lacunary base must be >= 2");
  std::vector<Letter> out;
  out.reserve(count);
  Int p = 1;
  for (std::size_t k = 1; k <= count; ++k) {
    p *= base;
    out.push_back(Letter{integer_element(g, p), false});
  }
  return out;
}

inline std::vector<Letter> rademacher_letters(const DualGroupDescriptor& g,
                                              std::size_t count) {
  if (g.kind() != DualGroupDescriptor::Kind::DirectSumOrderTwo)
    throw std::invalid_argument("rademacher letters require sumZ2");
  std::vector<Letter> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k)
    out.push_back(Letter{basis_element(g, k), true});
  return out;
}

}  // namespace rieszsep
