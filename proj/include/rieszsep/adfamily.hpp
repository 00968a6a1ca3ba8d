#pragma once

// Desk-scale fragment of an almost-disjoint family of infinite subsets
// of N, realized as branches of the infinite binary tree. A branch is a
// deterministic bit sequence; its set consists of the codes of its
// prefixes, so two branches share exactly the codes of their common
// prefix and intersection sizes are computable in advance.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rieszsep/dissociate.hpp"
#include "rieszsep/dualgroup.hpp"

namespace rieszsep {

class BranchSeed {
 public:
  // Explicit finite prefix followed by an eventually-periodic tail.
  static BranchSeed from_pattern(std::string prefix, std::string period) {
    if (period.empty())
      throw std::invalid_argument("seed period must be non-empty");
    check_bits(prefix);
    check_bits(period);
    BranchSeed s;
    s.prefix_ = std::move(prefix);
    s.period_ = std::move(period);
    return s;
  }

  static BranchSeed from_prng(std::uint64_t seed) {
    BranchSeed s;
    s.prng_ = true;
    s.prng_seed_ = seed;
    return s;
  }

  // "prefix=0110,period=10" or "prng=12345".
  static BranchSeed parse(std::string_view spec) {
    if (spec.starts_with("prng=")) {
      std::uint64_t v = 0;
      for (char c : spec.substr(5)) {
        if (c < '0' || c > '9')
          throw std::invalid_argument("bad prng seed: " + std::string(spec));
        v = v * 10 + static_cast<std::uint64_t>(c - '0');
      }
      return from_prng(v);
    }
    std::string prefix, period = "0";
    size_t pos = 0;
    bool saw_prefix = false;
    while (pos < spec.size()) {
      size_t next = spec.find(',', pos);
      std::string_view part = spec.substr(
          pos, next == std::string_view::npos ? next : next - pos);
      if (part.starts_with("prefix=")) {
        prefix = std::string(part.substr(7));
        saw_prefix = true;
      } else if (part.starts_with("period=")) {
        period = std::string(part.substr(7));
      } else {
        throw std::invalid_argument("bad seed spec: " + std::string(spec));
      }
      if (next == std::string_view::npos) break;
      pos = next + 1;
    }
    if (!saw_prefix)
      throw std::invalid_argument("bad seed spec: " + std::string(spec));
    return from_pattern(std::move(prefix), std::move(period));
  }

  // i is 1-based; same seed always yields the same sequence.
  int bit(std::uint64_t i) const {
    if (i == 0) throw std::out_of_range("bit positions are 1-based");
    if (prng_) {
      std::uint64_t x = prng_seed_ + i * 0x9e3779b97f4a7c15ULL;
      x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
      x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
      x ^= x >> 31;
      return static_cast<int>(x & 1);
    }
    std::uint64_t k = i - 1;
    if (k < prefix_.size()) return prefix_[k] - '0';
    return period_[(k - prefix_.size()) % period_.size()] - '0';
  }

  std::string to_string() const {
    if (prng_) return "prng=" + std::to_string(prng_seed_);
    return "prefix=" + prefix_ + ",period=" + period_;
  }

  friend bool operator==(const BranchSeed& a, const BranchSeed& b) {
    return a.to_string() == b.to_string();
  }

 private:
  static void check_bits(const std::string& s) {
    for (char c : s)
      if (c != '0' && c != '1')
        throw std::invalid_argument("seed bits must be 0/1");
  }

  std::string prefix_;
  std::string period_ = "0";
  bool prng_ = false;
  std::uint64_t prng_seed_ = 0;
};

// code(s) = 2^{|s|} - 1 + binary_value(s): a bijection from nonempty
// finite bit strings onto the positive naturals, monotone in length.
inline std::uint64_t branch_code(const BranchSeed& seed, unsigned length) {
  if (length == 0 || length > 62)
    throw std::invalid_argument("prefix length out of range");
  std::uint64_t value = 0;
  for (unsigned i = 1; i <= length; ++i)
    value = (value << 1) | static_cast<std::uint64_t>(seed.bit(i));
  return (1ULL << length) - 1 + value;
}

struct ADSet {
  std::vector<std::uint64_t> codes;  // strictly increasing
  BranchSeed seed;
  unsigned n = 0;
};

inline ADSet ad_set(const BranchSeed& seed, unsigned n) {
  if (n < 1) throw std::invalid_argument("ad_set requires n >= 1");
  ADSet s{{}, seed, n};
  s.codes.reserve(n);
  for (unsigned k = 1; k <= n; ++k) s.codes.push_back(branch_code(seed, k));
  return s;
}

// First differing bit position p (1-based) gives intersection size p-1:
// |ad_set(s1,n) ∩ ad_set(s2,m)| = p-1 for all n,m >= p-1.
inline unsigned intersection_bound(const BranchSeed& s1, const BranchSeed& s2,
                                   unsigned horizon = 4096) {
  for (unsigned p = 1; p <= horizon; ++p)
    if (s1.bit(p) != s2.bit(p)) return p - 1;
  throw std::invalid_argument(
      "seeds indistinguishable over the inspected horizon");
}

// Letter set Theta_alpha with its index function: the k-th smallest code
// picks the k-th letter, so b(letter k of the result) = k+1 (1-based).
struct IndexedLetters {
  std::vector<Letter> letters;  // ordered by increasing master code
  std::vector<std::uint64_t> codes;

  // 1-based index function b_alpha over positions in `letters`.
  unsigned index_of(std::size_t position) const {
    return static_cast<unsigned>(position) + 1;
  }
};

inline IndexedLetters letters_for(const std::vector<Letter>& master,
                                  const ADSet& s) {
  IndexedLetters out;
  out.codes = s.codes;
  out.letters.reserve(s.codes.size());
  for (std::uint64_t code : s.codes) {
    if (code == 0 || code > master.size())
      throw std::out_of_range("branch code exceeds master letter count");
    out.letters.push_back(master[code - 1]);
  }
  return out;
}

}  // namespace rieszsep
