#pragma once

// Dissociate-set verification by exhaustive word enumeration, truncated
// word sets Omega(Theta), and the finite-intersection identity for word
// sets of overlapping letter sets.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "rieszsep/dualgroup.hpp"

namespace rieszsep {

struct Letter {
  GroupElement element;
  bool involution = false;

  friend bool operator==(const Letter& a, const Letter& b) {
    return a.element == b.element;
  }
  friend bool operator<(const Letter& a, const Letter& b) {
    return a.element < b.element;
  }
};

inline Letter make_letter(const DualGroupDescriptor& g, GroupElement e) {
  if (e.is_identity())
    throw std::invalid_argument("letters must be non-identity");
  bool inv = is_involution(g, e);
  return Letter{std::move(e), inv};
}

// A product of distinct letters with exponents +-1; the exponent is
// forced to +1 on involutions. Indices strictly increasing, so there is
// exactly one formal word per (letter multiset, sign pattern). The empty
// word denotes the identity.
struct FormalWord {
  std::vector<std::pair<std::uint32_t, int>> factors;  // (letter index, +-1)

  std::size_t length() const { return factors.size(); }

  friend bool operator==(const FormalWord& a, const FormalWord& b) {
    return a.factors == b.factors;
  }
};

inline GroupElement evaluate(const DualGroupDescriptor& g,
                             const std::vector<Letter>& letters,
                             const FormalWord& w) {
  GroupElement out;
  for (const auto& [idx, eps] : w.factors) {
    if (idx >= letters.size()) throw std::out_of_range("letter index");
    const GroupElement& e = letters[idx].element;
    out = combine(g, out, eps > 0 ? e : invert(g, e));
  }
  return out;
}

namespace detail {

inline void check_letters(const DualGroupDescriptor& g,
                          const std::vector<Letter>& letters) {
  std::set<GroupElement> seen;
  for (const auto& l : letters) {
    if (l.element.is_identity())
      throw std::invalid_argument("letter list contains the identity");
    if (!seen.insert(l.element).second)
      throw std::invalid_argument("letter list contains duplicates");
    if (l.involution != is_involution(g, l.element))
      throw std::invalid_argument("stale involution flag on letter");
  }
}

// Visits all formal words of length <= max_len: by increasing length,
// then combinations of indices in lexicographic order, then sign
// patterns with +1 before -1 per position. The empty word comes first.
template <class Visit>
void for_each_word_by_length(const std::vector<Letter>& letters,
                             unsigned max_len, Visit&& visit) {
  const std::uint32_t n = static_cast<std::uint32_t>(letters.size());
  {
    FormalWord empty;
    visit(static_cast<const FormalWord&>(empty));
  }
  const unsigned top = max_len > n ? n : max_len;
  for (unsigned k = 1; k <= top; ++k) {
    std::vector<std::uint32_t> comb(k);
    for (unsigned i = 0; i < k; ++i) comb[i] = i;
    while (true) {
      // All sign patterns for this combination, +1 < -1 lexicographically.
      FormalWord w;
      w.factors.reserve(k);
      for (auto idx : comb) w.factors.emplace_back(idx, +1);
      while (true) {
        visit(static_cast<const FormalWord&>(w));
        // Advance the sign pattern like a binary counter (involutions
        // are fixed at +1).
        int pos = static_cast<int>(k) - 1;
        while (pos >= 0) {
          auto& [idx, eps] = w.factors[pos];
          if (!letters[idx].involution && eps == +1) {
            eps = -1;
            break;
          }
          eps = +1;
          --pos;
        }
        if (pos < 0) break;
      }
      // Next combination.
      int i = static_cast<int>(k) - 1;
      while (i >= 0 && comb[i] == n - k + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (unsigned j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
}

}  // namespace detail

struct DissociateCounterexample {
  FormalWord first;
  FormalWord second;
  GroupElement value;
};

struct DissociateResult {
  bool verified = false;
  std::optional<DissociateCounterexample> counterexample;
};

// Exhaustively checks injectivity of word evaluation up to length L.
// Returns the enumeration-order-first violating pair on failure.
inline DissociateResult is_dissociate(const DualGroupDescriptor& g,
                                      const std::vector<Letter>& letters,
                                      unsigned max_len) {
  if (max_len < 1) throw std::invalid_argument("word length bound must be >= 1");
  detail::check_letters(g, letters);
  std::map<GroupElement, FormalWord> seen;
  DissociateResult res;
  res.verified = true;
  detail::for_each_word_by_length(letters, max_len, [&](const FormalWord& w) {
    if (!res.verified) return;
    GroupElement v = evaluate(g, letters, w);
    auto [it, inserted] = seen.emplace(v, w);
    if (!inserted) {
      res.verified = false;
      res.counterexample = DissociateCounterexample{it->second, w, v};
    }
  });
  return res;
}

class NonDissociateError : public std::runtime_error {
 public:
  explicit NonDissociateError(DissociateCounterexample c)
      : std::runtime_error("letter set is not dissociate at this level"),
        counterexample(std::move(c)) {}
  DissociateCounterexample counterexample;
};

// Omega_L(Theta): all evaluations of words of length <= max_length,
// including the identity (empty word). Keys re-evaluate to themselves.
struct WordSet {
  std::map<GroupElement, FormalWord> entries;
  std::vector<GroupElement> order;  // deterministic enumeration order
  unsigned max_length = 0;

  bool contains(const GroupElement& e) const { return entries.count(e) > 0; }
  std::size_t size() const { return entries.size(); }
};

inline WordSet enumerate_words(const DualGroupDescriptor& g,
                               const std::vector<Letter>& letters,
                               unsigned max_len) {
  if (max_len < 1) throw std::invalid_argument("word length bound must be >= 1");
  detail::check_letters(g, letters);
  WordSet ws;
  ws.max_length = max_len;
  std::optional<DissociateCounterexample> bad;
  detail::for_each_word_by_length(letters, max_len, [&](const FormalWord& w) {
    if (bad) return;
    GroupElement v = evaluate(g, letters, w);
    auto [it, inserted] = ws.entries.emplace(v, w);
    if (!inserted)
      bad = DissociateCounterexample{it->second, w, v};
    else
      ws.order.push_back(v);
  });
  if (bad) throw NonDissociateError(std::move(*bad));
  return ws;
}

struct IntersectionCheck {
  bool equal = false;
  std::optional<GroupElement> witness;  // element violating the identity
  std::vector<GroupElement> common;     // Omega_L(Theta1) ∩ Omega_L(Theta2)
};

// Checks Omega_L(T1) ∩ Omega_L(T2) = Omega_L(T1 ∩ T2) as element sets.
// Precondition: T1 ∪ T2 dissociate at level L (verified here).
inline IntersectionCheck word_intersection_check(
    const DualGroupDescriptor& g, const std::vector<Letter>& theta1,
    const std::vector<Letter>& theta2, unsigned max_len) {
  std::vector<Letter> uni = theta1;
  std::set<GroupElement> seen1;
  for (const auto& l : theta1) seen1.insert(l.element);
  std::vector<Letter> shared;
  for (const auto& l : theta2) {
    if (seen1.count(l.element))
      shared.push_back(l);
    else
      uni.push_back(l);
  }
  auto check = is_dissociate(g, uni, max_len);
  if (!check.verified)
    throw NonDissociateError(std::move(*check.counterexample));

  WordSet w1 = enumerate_words(g, theta1, max_len);
  WordSet w2 = enumerate_words(g, theta2, max_len);
  std::set<GroupElement> inter;
  for (const auto& [e, w] : w1.entries)
    if (w2.contains(e)) inter.insert(e);

  std::set<GroupElement> omega_shared;
  if (shared.empty()) {
    omega_shared.insert(GroupElement{});
  } else {
    WordSet ws = enumerate_words(g, shared, max_len);
    for (const auto& [e, w] : ws.entries) omega_shared.insert(e);
  }

  IntersectionCheck out;
  out.common.assign(inter.begin(), inter.end());
  if (inter == omega_shared) {
    out.equal = true;
    return out;
  }
  out.equal = false;
  for (const auto& e : inter)
    if (!omega_shared.count(e)) {
      out.witness = e;
      return out;
    }
  for (const auto& e : omega_shared)
    if (!inter.count(e)) {
      out.witness = e;
      return out;
    }
  return out;
}

// Upper bound sum_{k<=L} C(n,k) 2^k on |Omega_L|; attained exactly when
// evaluation is injective and no letter is an involution.
inline std::uint64_t word_count_bound(std::size_t n_letters, unsigned max_len) {
  std::uint64_t total = 0;
  const unsigned top =
      max_len > n_letters ? static_cast<unsigned>(n_letters) : max_len;
  for (unsigned k = 0; k <= top; ++k) {
    // C(n,k) * 2^k, kept in 64 bits (desk-scale inputs only).
    std::uint64_t c = 1;
    for (unsigned j = 0; j < k; ++j) c = c * (n_letters - j) / (j + 1);
    total += c << k;
  }
  return total;
}

}  // namespace rieszsep
