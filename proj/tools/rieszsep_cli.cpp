// Command-line driver for the separation-certificate pipeline: dissociate
// checks, word enumeration, AD-family generation, transform coefficients,
// convolution, singularity profiles, witness certificates, and spectrum
// gap estimates. Deterministic: identical config yields byte-identical
// output files.
//
// Exit codes: 0 success, 1 usage/config error, 2 mathematical gate failure.

#include <CLI11.hpp>

#include <complex>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rieszsep/serialize.hpp"

using namespace rieszsep;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitGateFailure = 2;

struct RunConfig {
  std::string group = "Z";
  std::string master = "lacunary base=3 count=40";
  std::vector<std::string> seeds;
  unsigned max_len = 4;
  unsigned depth = 4;
  unsigned k_min = 1;
  unsigned k_max = 12;
  unsigned k_cap = 24;
  unsigned power_n = 1;
  unsigned power_m = 2;
  unsigned grid_n = 2048;
  double z0_re = 1.0 / std::numbers::sqrt2;
  double z0_im = 1.0 / std::numbers::sqrt2;
  double r = kDefaultRadius;
  unsigned disc_samples = 100000;
  std::uint64_t sample_seed = 0x5eed;
  unsigned jobs = 1;
  std::string out;     // empty: stdout
  std::string format = "json";
};

void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  Json j = Json::parse(in);
  if (j.contains("group")) cfg.group = j["group"].get<std::string>();
  if (j.contains("master")) cfg.master = j["master"].get<std::string>();
  if (j.contains("seeds")) cfg.seeds = j["seeds"].get<std::vector<std::string>>();
  if (j.contains("L")) cfg.max_len = j["L"].get<unsigned>();
  if (j.contains("depth")) cfg.depth = j["depth"].get<unsigned>();
  if (j.contains("k_min")) cfg.k_min = j["k_min"].get<unsigned>();
  if (j.contains("k_max")) cfg.k_max = j["k_max"].get<unsigned>();
  if (j.contains("k_cap")) cfg.k_cap = j["k_cap"].get<unsigned>();
  if (j.contains("n")) cfg.power_n = j["n"].get<unsigned>();
  if (j.contains("m")) cfg.power_m = j["m"].get<unsigned>();
  if (j.contains("grid_n")) cfg.grid_n = j["grid_n"].get<unsigned>();
  if (j.contains("z0")) {
    cfg.z0_re = j["z0"][0].get<double>();
    cfg.z0_im = j["z0"][1].get<double>();
  }
  if (j.contains("r")) cfg.r = j["r"].get<double>();
  if (j.contains("disc_samples"))
    cfg.disc_samples = j["disc_samples"].get<unsigned>();
  if (j.contains("sample_seed"))
    cfg.sample_seed = j["sample_seed"].get<std::uint64_t>();
  if (j.contains("jobs")) cfg.jobs = j["jobs"].get<unsigned>();
  if (j.contains("out")) cfg.out = j["out"].get<std::string>();
  if (j.contains("format")) cfg.format = j["format"].get<std::string>();
}

// Master letter rules: "lacunary base=B count=N", "rademacher count=N",
// "letters v1,v2,...".
std::vector<Letter> build_master(const DualGroupDescriptor& g,
                                 const std::string& rule) {
  std::istringstream is(rule);
  std::string kind;
  is >> kind;
  std::map<std::string, std::string> kv;
  std::string tok;
  while (is >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos)
      kv[""] = tok;
    else
      kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  if (kind == "lacunary") {
    Int base = kv.count("base") ? Int(kv["base"]) : Int(3);
    std::size_t count = kv.count("count") ? std::stoull(kv["count"]) : 40;
    return lacunary_letters(g, base, count);
  }
  if (kind == "rademacher") {
    std::size_t count = kv.count("count") ? std::stoull(kv["count"]) : 24;
    return rademacher_letters(g, count);
  }
  if (kind == "letters") {
    std::string list = kv.count("") ? kv[""] : "";
    // Also accept "letters 1,2,3" glued to the keyword.
    if (list.empty() && !kv.empty()) list = kv.begin()->second;
    std::vector<Letter> out;
    std::istringstream ls(list);
    std::string item;
    while (std::getline(ls, item, ','))
      out.push_back(make_letter(g, integer_element(g, Int(item))));
    if (out.empty()) throw std::invalid_argument("empty letter list");
    return out;
  }
  throw std::invalid_argument("unrecognized master rule: " + rule);
}

std::vector<BranchSeed> parse_seeds(const RunConfig& cfg) {
  std::vector<BranchSeed> out;
  for (const auto& s : cfg.seeds) out.push_back(BranchSeed::parse(s));
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i + 1; j < out.size(); ++j)
      if (out[i] == out[j])
        throw std::invalid_argument("duplicate seeds in config");
  return out;
}

void emit(const RunConfig& cfg, const std::string& body) {
  if (cfg.out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file: " + cfg.out);
  f << body;
}

int cmd_dissociate(const RunConfig& cfg) {
  auto g = DualGroupDescriptor::parse(cfg.group);
  auto letters = build_master(g, cfg.master);
  auto res = is_dissociate(g, letters, cfg.max_len);
  Json j;
  j["group"] = g.to_string();
  j["letters"] = letters.size();
  j["max_length"] = cfg.max_len;
  j["verified"] = res.verified;
  if (!res.verified) {
    Json c;
    c["first"] = word_json(res.counterexample->first);
    c["second"] = word_json(res.counterexample->second);
    c["value"] = element_json(res.counterexample->value);
    j["counterexample"] = std::move(c);
  }
  emit(cfg, j.dump(2) + "\n");
  return res.verified ? kExitOk : kExitGateFailure;
}

int cmd_words(const RunConfig& cfg) {
  auto g = DualGroupDescriptor::parse(cfg.group);
  auto letters = build_master(g, cfg.master);
  auto ws = enumerate_words(g, letters, cfg.max_len);
  emit(cfg, wordset_json(ws).dump(2) + "\n");
  return kExitOk;
}

int cmd_family(const RunConfig& cfg) {
  auto g = DualGroupDescriptor::parse(cfg.group);
  auto master = build_master(g, cfg.master);
  auto seeds = parse_seeds(cfg);
  if (seeds.empty()) throw std::invalid_argument("family requires seeds");
  Json arr = Json::array();
  for (const auto& seed : seeds) {
    auto s = ad_set(seed, cfg.depth);
    auto il = letters_for(master, s);
    Json rec;
    rec["seed"] = seed.to_string();
    rec["codes"] = s.codes;
    Json letters = Json::array();
    for (std::size_t i = 0; i < il.letters.size(); ++i) {
      Json l;
      l["element"] = element_json(il.letters[i].element);
      l["index"] = il.index_of(i);
      letters.push_back(std::move(l));
    }
    rec["letters"] = std::move(letters);
    arr.push_back(std::move(rec));
  }
  emit(cfg, arr.dump(2) + "\n");
  return kExitOk;
}

RieszSpec seed_spec(const DualGroupDescriptor& g,
                    const std::vector<Letter>& master, const RunConfig& cfg,
                    const BranchSeed& seed) {
  auto il = letters_for(master, ad_set(seed, cfg.depth));
  return default_family_spec(g, il.letters, cfg.max_len);
}

int cmd_coeffs(const RunConfig& cfg) {
  auto g = DualGroupDescriptor::parse(cfg.group);
  auto master = build_master(g, cfg.master);
  auto seeds = parse_seeds(cfg);
  RieszSpec spec = seeds.empty()
                       ? default_family_spec(g, master, cfg.max_len)
                       : seed_spec(g, master, cfg, seeds.front());
  auto t = truncated_transform(spec, cfg.max_len);
  Json j;
  j["spec"] = spec_json(spec);
  j["transform"] = transform_json(t);
  emit(cfg, j.dump(2) + "\n");
  return kExitOk;
}

int cmd_convolve(const RunConfig& cfg) {
  auto g = DualGroupDescriptor::parse(cfg.group);
  auto master = build_master(g, cfg.master);
  auto seeds = parse_seeds(cfg);
  if (seeds.size() < 2)
    throw std::invalid_argument("convolve requires two seeds");
  auto t1 = truncated_transform(seed_spec(g, master, cfg, seeds[0]), cfg.max_len);
  auto t2 = truncated_transform(seed_spec(g, master, cfg, seeds[1]), cfg.max_len);
  emit(cfg, transform_json(convolve(t1, t2)).dump(2) + "\n");
  return kExitOk;
}

int cmd_profile(const RunConfig& cfg) {
  if (cfg.k_max > cfg.k_cap)
    throw std::invalid_argument("k_max above configured level cap");
  auto g = DualGroupDescriptor::sum_order_two();
  auto spec = default_family_spec(g, rademacher_letters(g, cfg.k_max));
  auto rows = singularity_profile(spec, cfg.k_min, cfg.k_max, cfg.power_n,
                                  cfg.power_m, cfg.k_cap);
  std::string body = profile_csv(rows, cfg.power_n, cfg.power_m);
  // Criterion partial sums ride along as comment rows.
  for (unsigned k = cfg.k_min; k <= cfg.k_max; ++k) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "# ip_partial,N=%u,%.17g\n", k,
                  ip_criterion_partial(spec, k, cfg.power_n));
    body += buf;
  }
  emit(cfg, body);
  return kExitOk;
}

int cmd_witness(const RunConfig& cfg) {
  auto g = DualGroupDescriptor::parse(cfg.group);
  auto master = build_master(g, cfg.master);
  auto seeds = parse_seeds(cfg);
  if (seeds.size() < 2)
    throw std::invalid_argument("witness requires at least two seeds");

  WitnessParams params;
  params.max_len = cfg.max_len;
  params.depth = cfg.depth;
  params.z0 = {cfg.z0_re, cfg.z0_im};
  params.r = cfg.r;
  params.disc_samples = cfg.disc_samples;
  params.sample_seed = cfg.sample_seed;
  if (!(params.r > 0.0) || params.r >= params.z0.imag())
    throw std::invalid_argument("radius gate violated: need 0 < r < Im z0");

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < seeds.size(); ++i)
    for (std::size_t j = i + 1; j < seeds.size(); ++j) pairs.emplace_back(i, j);

  std::vector<WitnessReport> reports(pairs.size());
  const unsigned jobs = std::max(1u, cfg.jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      std::size_t idx = next.fetch_add(1);
      if (idx >= pairs.size()) return;
      auto [i, j] = pairs[idx];
      reports[idx] = witness_pair(g, seeds[i], seeds[j], master, params);
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::future<void>> futures;
    for (unsigned t = 0; t < jobs; ++t)
      futures.push_back(std::async(std::launch::async, worker));
    for (auto& f : futures) f.get();
  }

  Json arr = Json::array();
  bool all_certified = true;
  for (const auto& rep : reports) {
    all_certified = all_certified && rep.certified;
    arr.push_back(witness_json(rep));
  }
  emit(cfg, arr.dump(2) + "\n");
  return all_certified ? kExitOk : kExitGateFailure;
}

int cmd_gap(const RunConfig& cfg) {
  auto g = DualGroupDescriptor::parse(cfg.group);
  auto master = build_master(g, cfg.master);
  auto seeds = parse_seeds(cfg);
  RieszSpec spec = seeds.empty()
                       ? default_family_spec(g, master, cfg.max_len)
                       : seed_spec(g, master, cfg, seeds.front());
  auto est = natural_spectrum(truncated_transform(spec, cfg.max_len));
  Json j;
  j["points"] = est.points.size();
  j["includes_zero"] = est.includes_zero;
  j["gap"] = naturalness_gap(est);
  emit(cfg, j.dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Riesz-product separation certificates"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  RunConfig cfg;
  std::string config_path;
  std::string seeds_csv;

  app.add_option("--config", config_path, "JSON config file");
  // Flag overrides win over the config file; parse order handles that
  // because the file is loaded in a pre-parse callback.
  app.add_option("--group", cfg.group, "group descriptor string");
  app.add_option("--master", cfg.master, "master letter rule");
  app.add_option("--seeds", seeds_csv, "comma-separated seed specs");
  app.add_option("--L", cfg.max_len, "word length truncation level");
  app.add_option("--depth", cfg.depth, "branch prefixes per AD set");
  app.add_option("--kmin", cfg.k_min, "profile level range start");
  app.add_option("--kmax", cfg.k_max, "profile level range end");
  app.add_option("--n", cfg.power_n, "first convolution power");
  app.add_option("--m", cfg.power_m, "second convolution power");
  app.add_option("--r", cfg.r, "separation ball radius");
  app.add_option("--z0-re", cfg.z0_re, "ball center, real part");
  app.add_option("--z0-im", cfg.z0_im, "ball center, imaginary part");
  app.add_option("--seed", cfg.sample_seed, "sampling RNG seed");
  app.add_option("--disc-samples", cfg.disc_samples, "disc inequality samples");
  app.add_option("--jobs", cfg.jobs, "parallel witness pairs");
  app.add_option("--out", cfg.out, "output path (default stdout)");
  app.add_option("--format", cfg.format, "json or csv");

  app.preparse_callback([&](std::size_t) {
    // Config file first, flags override on top.
    for (int i = 1; i + 1 < argc + 1; ++i) {
      if (std::string(argv[i]) == "--config" && i + 1 < argc) {
        load_config_file(cfg, argv[i + 1]);
        break;
      }
    }
  });

  auto* c_dis = app.add_subcommand("dissociate", "verify a letter set");
  auto* c_words = app.add_subcommand("words", "enumerate the word set");
  auto* c_family = app.add_subcommand("family", "generate AD letter sets");
  auto* c_coeffs = app.add_subcommand("coeffs", "truncated transform");
  auto* c_conv = app.add_subcommand("convolve", "convolve two family members");
  auto* c_profile = app.add_subcommand("profile", "singularity profile CSV");
  auto* c_witness = app.add_subcommand("witness", "pair certificates");
  auto* c_gap = app.add_subcommand("gap", "naturalness gap estimate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (!seeds_csv.empty()) {
    cfg.seeds.clear();
    std::istringstream is(seeds_csv);
    std::string item;
    while (std::getline(is, item, ';')) cfg.seeds.push_back(item);
  }

  try {
    if (c_dis->parsed()) return cmd_dissociate(cfg);
    if (c_words->parsed()) return cmd_words(cfg);
    if (c_family->parsed()) return cmd_family(cfg);
    if (c_coeffs->parsed()) return cmd_coeffs(cfg);
    if (c_conv->parsed()) return cmd_convolve(cfg);
    if (c_profile->parsed()) return cmd_profile(cfg);
    if (c_witness->parsed()) return cmd_witness(cfg);
    if (c_gap->parsed()) return cmd_gap(cfg);
  } catch (const NonDissociateError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGateFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
