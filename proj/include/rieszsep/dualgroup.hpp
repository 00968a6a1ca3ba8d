#pragma once

// Canonical representation and arithmetic for a discrete abelian group,
// written additively on integer coordinates. Supported shapes: Z, Z^d,
// countable direct sums of Z_2 or Z_m, and finite products of those.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rieszsep {

using Int = boost::multiprecision::cpp_int;

class DualGroupDescriptor {
 public:
  enum class Kind {
    IntegerGroup,
    IntegerLattice,
    DirectSumOrderTwo,
    DirectSumOrderM,
    Product,
  };

  static DualGroupDescriptor integers() {
    DualGroupDescriptor g;
    g.kind_ = Kind::IntegerGroup;
    g.finite_mods_ = {0};
    return g;
  }

  static DualGroupDescriptor lattice(unsigned d) {
    if (d < 1) throw std::invalid_argument("lattice dimension must be >= 1");
    DualGroupDescriptor g;
    g.kind_ = Kind::IntegerLattice;
    g.dim_ = d;
    g.finite_mods_.assign(d, 0);
    return g;
  }

  static DualGroupDescriptor sum_order_two() {
    DualGroupDescriptor g;
    g.kind_ = Kind::DirectSumOrderTwo;
    g.infinite_mods_ = {2};
    return g;
  }

  static DualGroupDescriptor sum_order_m(unsigned m) {
    if (m < 2) throw std::invalid_argument("order must be >= 2");
    DualGroupDescriptor g;
    g.kind_ = Kind::DirectSumOrderM;
    g.order_ = m;
    g.infinite_mods_ = {m};
    return g;
  }

  // Finite product; coordinates are flattened. Finite factors (Z, Z^d)
  // occupy the leading indices in declaration order, infinite factors
  // share the remaining indices round-robin.
  static DualGroupDescriptor product(std::vector<DualGroupDescriptor> factors) {
    if (factors.empty()) throw std::invalid_argument("empty product");
    if (factors.size() == 1) return factors.front();
    DualGroupDescriptor g;
    g.kind_ = Kind::Product;
    g.factors_ = std::move(factors);
    for (const auto& f : g.factors_) {
      for (unsigned m : f.finite_mods_) g.finite_mods_.push_back(m);
      for (unsigned m : f.infinite_mods_) g.infinite_mods_.push_back(m);
    }
    return g;
  }

  // Grammar: "Z", "Z^d", "sumZ2", "sumZ(m)", factors joined with 'x'.
  static DualGroupDescriptor parse(std::string_view s) {
    std::vector<DualGroupDescriptor> factors;
    size_t pos = 0;
    while (pos <= s.size()) {
      size_t next = s.find('x', pos);
      std::string_view tok =
          s.substr(pos, next == std::string_view::npos ? next : next - pos);
      factors.push_back(parse_atom(tok));
      if (next == std::string_view::npos) break;
      pos = next + 1;
    }
    return product(std::move(factors));
  }

  Kind kind() const { return kind_; }
  unsigned lattice_dim() const { return dim_; }
  unsigned sum_order() const { return order_; }
  const std::vector<DualGroupDescriptor>& factors() const { return factors_; }

  bool valid_index(std::uint64_t i) const {
    return i < finite_mods_.size() || !infinite_mods_.empty();
  }

  // 0 means a free (Z) coordinate, otherwise the coordinate order m.
  unsigned modulus_at(std::uint64_t i) const {
    if (i < finite_mods_.size()) return finite_mods_[i];
    if (infinite_mods_.empty())
      throw std::out_of_range("coordinate index invalid for this group");
    return infinite_mods_[(i - finite_mods_.size()) % infinite_mods_.size()];
  }

  std::string to_string() const {
    switch (kind_) {
      case Kind::IntegerGroup:
        return "Z";
      case Kind::IntegerLattice:
        return "Z^" + std::to_string(dim_);
      case Kind::DirectSumOrderTwo:
        return "sumZ2";
      case Kind::DirectSumOrderM:
        return "sumZ(" + std::to_string(order_) + ")";
      case Kind::Product: {
        std::string out;
        for (size_t i = 0; i < factors_.size(); ++i) {
          if (i) out += 'x';
          out += factors_[i].to_string();
        }
        return out;
      }
    }
    return {};
  }

  friend bool operator==(const DualGroupDescriptor& a,
                         const DualGroupDescriptor& b) {
    return a.to_string() == b.to_string();
  }

 private:
  static DualGroupDescriptor parse_atom(std::string_view tok) {
    if (tok == "Z") return integers();
    if (tok == "sumZ2") return sum_order_two();
    if (tok.starts_with("Z^")) {
      unsigned d = parse_uint(tok.substr(2), tok);
      return lattice(d);
    }
    if (tok.starts_with("sumZ(") && tok.ends_with(")")) {
      unsigned m = parse_uint(tok.substr(5, tok.size() - 6), tok);
      return sum_order_m(m);
    }
    throw std::invalid_argument("unrecognized group descriptor: " +
                                std::string(tok));
  }

  static unsigned parse_uint(std::string_view digits, std::string_view tok) {
    if (digits.empty()) throw std::invalid_argument("bad group descriptor");
    unsigned v = 0;
    for (char c : digits) {
      if (c < '0' || c > '9')
        throw std::invalid_argument("unrecognized group descriptor: " +
                                    std::string(tok));
      v = v * 10 + static_cast<unsigned>(c - '0');
    }
    return v;
  }

  Kind kind_ = Kind::IntegerGroup;
  unsigned dim_ = 1;
  unsigned order_ = 2;
  std::vector<DualGroupDescriptor> factors_;
  std::vector<unsigned> finite_mods_;    // one entry per leading fixed coordinate
  std::vector<unsigned> infinite_mods_;  // cycled over the remaining indices
};

// Immutable group element in canonical form: a finitely supported
// coordinate map with no explicit zeros and residues reduced into [0, m).
class GroupElement {
 public:
  using Coords = std::map<std::uint64_t, Int>;

  GroupElement() = default;  // the identity

  static GroupElement from_coords(const DualGroupDescriptor& g, Coords raw) {
    GroupElement e;
    for (auto& [idx, v] : raw) {
      if (!g.valid_index(idx))
        throw std::out_of_range("coordinate index invalid for this group");
      Int r = reduce(v, g.modulus_at(idx));
      if (r != 0) e.coords_.emplace(idx, std::move(r));
    }
    return e;
  }

  const Coords& coords() const { return coords_; }
  bool is_identity() const { return coords_.empty(); }

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.coords_ == b.coords_;
  }
  friend bool operator<(const GroupElement& a, const GroupElement& b) {
    return a.coords_ < b.coords_;
  }

  std::string to_string() const {
    if (coords_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [idx, v] : coords_) {
      if (!first) os << ",";
      os << idx << ":" << v;
      first = false;
    }
    return os.str();
  }

  static Int reduce(const Int& v, unsigned m) {
    if (m == 0) return v;
    Int r = v % m;
    if (r < 0) r += m;
    return r;
  }

 private:
  friend GroupElement combine(const DualGroupDescriptor&, const GroupElement&,
                              const GroupElement&);
  friend GroupElement invert(const DualGroupDescriptor&, const GroupElement&);
  Coords coords_;
};

inline GroupElement identity(const DualGroupDescriptor&) { return {}; }

inline GroupElement combine(const DualGroupDescriptor& g, const GroupElement& x,
                            const GroupElement& y) {
  GroupElement out = x;
  for (const auto& [idx, v] : y.coords()) {
    if (!g.valid_index(idx))
      throw std::out_of_range("coordinate index invalid for this group");
    auto it = out.coords_.find(idx);
    if (it == out.coords_.end()) {
      out.coords_.emplace(idx, v);
    } else {
      it->second = GroupElement::reduce(it->second + v, g.modulus_at(idx));
      if (it->second == 0) out.coords_.erase(it);
    }
  }
  return out;
}

inline GroupElement invert(const DualGroupDescriptor& g, const GroupElement& x) {
  GroupElement::Coords neg;
  for (const auto& [idx, v] : x.coords()) neg.emplace(idx, -v);
  return GroupElement::from_coords(g, std::move(neg));
}

// Letters are non-identity by convention; the identity input is rejected.
inline bool is_involution(const DualGroupDescriptor& g, const GroupElement& x) {
  if (x.is_identity())
    throw std::invalid_argument("is_involution: identity is not a letter");
  return combine(g, x, x).is_identity();
}

// Convenience constructors.
inline GroupElement integer_element(const DualGroupDescriptor& g, Int n) {
  return GroupElement::from_coords(g, {{0, std::move(n)}});
}

inline GroupElement basis_element(const DualGroupDescriptor& g,
                                  std::uint64_t index, Int value = 1) {
  return GroupElement::from_coords(g, {{index, std::move(value)}});
}

}  // namespace rieszsep
