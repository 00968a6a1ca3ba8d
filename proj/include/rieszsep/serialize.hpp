#pragma once

// JSON and CSV emission. Field order is fixed (ordered_json), elements
// are serialized through their canonical coordinate form, and witness
// reports carry an FNV-1a content hash over every field except the hash
// itself, so identical inputs produce byte-identical files.

#include <cstdint>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rieszsep/adfamily.hpp"
#include "rieszsep/concrete.hpp"
#include "rieszsep/dissociate.hpp"
#include "rieszsep/dualgroup.hpp"
#include "rieszsep/riesz.hpp"
#include "rieszsep/spectrum.hpp"

namespace rieszsep {

using Json = nlohmann::ordered_json;

inline Json element_json(const GroupElement& e) {
  Json coords = Json::array();
  for (const auto& [idx, v] : e.coords())
    coords.push_back(Json::array({idx, v.str()}));
  return coords;
}

inline Json word_json(const FormalWord& w) {
  Json factors = Json::array();
  for (const auto& [idx, eps] : w.factors)
    factors.push_back(Json::array({idx, eps}));
  return factors;
}

inline Json wordset_json(const WordSet& ws) {
  Json entries = Json::array();
  for (const auto& e : ws.order) {
    Json rec;
    rec["element"] = element_json(e);
    rec["factors"] = word_json(ws.entries.at(e));
    entries.push_back(std::move(rec));
  }
  Json out;
  out["max_length"] = ws.max_length;
  out["entries"] = std::move(entries);
  return out;
}

inline Json transform_json(const SparseTransform& t) {
  Json values = Json::array();
  for (const auto& [e, v] : t.values) {
    Json rec;
    rec["element"] = element_json(e);
    rec["re"] = v.real();
    rec["im"] = v.imag();
    values.push_back(std::move(rec));
  }
  Json out;
  out["group"] = t.group.to_string();
  out["exact"] = t.exact;
  out["level"] = t.level;
  out["values"] = std::move(values);
  return out;
}

inline Json spec_json(const RieszSpec& spec) {
  Json letters = Json::array();
  for (std::size_t i = 0; i < spec.letters.size(); ++i) {
    Json rec;
    rec["element"] = element_json(spec.letters[i].element);
    rec["involution"] = spec.letters[i].involution;
    rec["re"] = spec.coeffs[i].real();
    rec["im"] = spec.coeffs[i].imag();
    letters.push_back(std::move(rec));
  }
  Json out;
  out["group"] = spec.group.to_string();
  out["verified_level"] = spec.verified_level;
  out["letters"] = std::move(letters);
  return out;
}

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline Json witness_json(const WitnessReport& rep) {
  Json out;
  out["seed_alpha"] = rep.seed_alpha;
  out["seed_beta"] = rep.seed_beta;
  out["max_len"] = rep.max_len;
  out["depth"] = rep.depth;
  out["letters_alpha"] = rep.letters_alpha;
  out["letters_beta"] = rep.letters_beta;
  out["shared_letters"] = rep.shared_letters;
  out["product_support_size"] = rep.product_support_size;
  out["product_support_bound"] = rep.product_support_bound;
  out["shared_word_count"] = rep.shared_word_count;
  out["gamma_min_distance"] = rep.gamma_min_distance;
  out["z0_re"] = rep.z0.real();
  out["z0_im"] = rep.z0.imag();
  out["r"] = rep.r;
  out["disc_lemma_verified"] = rep.disc_lemma_verified;
  out["disc_samples"] = rep.disc_samples;
  out["hermitian"] = rep.hermitian;
  out["ip_partial"] = rep.ip_partial;
  out["conclusion"] =
      rep.certified ? "certified" : "failed(" + rep.failure_reason + ")";
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(fnv1a64(out.dump())));
  out["content_hash"] = hash;
  return out;
}

inline std::string profile_csv(const std::vector<ProfileRow>& rows, unsigned n,
                               unsigned m) {
  std::ostringstream os;
  os << "k,n,m,tv_distance\n";
  for (const auto& row : rows) {
    os << row.k << "," << n << "," << m << ",";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", row.tv);
    os << buf << "\n";
  }
  return os.str();
}

}  // namespace rieszsep
