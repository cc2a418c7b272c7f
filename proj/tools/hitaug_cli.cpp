#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hitaug/errors.hpp"
#include "hitaug/estimator.hpp"
#include "hitaug/generators.hpp"
#include "hitaug/hitting.hpp"
#include "hitaug/io.hpp"
#include "hitaug/kcenter.hpp"
#include "hitaug/optimizers.hpp"
#include "hitaug/rng.hpp"

using namespace hitaug;
using json = nlohmann::json;

namespace {

constexpr std::uint64_t kGeneratorStream = 0x67656e;

const std::vector<std::string> kAlgorithms{"greedy", "greedy_plus", "asymm", "bmah_route", "pure_random",
                                           "top_hitting"};

struct InstanceSource {
  std::string edges;
  std::string partition;
  std::string generator;  // "path:LEN:BLUE[,BLUE...]", "star:N" or "planted:NR:NB:PIN:POUT"
};

struct RunConfig {
  InstanceSource source;
  std::vector<std::string> algorithms;
  std::vector<double> fractions{0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5};
  double epsilon = 0.1;
  bool uncapped = false;
  bool lazy = false;
  std::string estimator_mode = "experiment";
  double delta = 0.1;
  std::optional<double> lambda;
  std::optional<std::size_t> walk_length;
  std::optional<std::uint64_t> samples;
  std::optional<double> subsample;
  std::size_t repetitions = 10;
  std::optional<std::uint64_t> seed;
  std::string output;
  bool no_timing = false;
};

json to_json(const RunConfig& c) {
  json j;
  j["edges"] = c.source.edges;
  j["partition"] = c.source.partition;
  j["generator"] = c.source.generator;
  j["algorithms"] = c.algorithms;
  j["fractions"] = c.fractions;
  j["epsilon"] = c.epsilon;
  j["uncapped"] = c.uncapped;
  j["lazy"] = c.lazy;
  j["estimator_mode"] = c.estimator_mode;
  j["delta"] = c.delta;
  j["lambda"] = c.lambda ? json(*c.lambda) : json(nullptr);
  j["walk_length"] = c.walk_length ? json(*c.walk_length) : json(nullptr);
  j["samples"] = c.samples ? json(*c.samples) : json(nullptr);
  j["subsample"] = c.subsample ? json(*c.subsample) : json(nullptr);
  j["repetitions"] = c.repetitions;
  j["seed"] = c.seed ? json(*c.seed) : json(nullptr);
  j["output"] = c.output;
  j["no_timing"] = c.no_timing;
  return j;
}

template <class T>
void override_from(const json& j, const char* key, T& field) {
  if (j.contains(key)) field = j.at(key).get<T>();
}

template <class T>
void override_from(const json& j, const char* key, std::optional<T>& field) {
  if (!j.contains(key)) return;
  if (j.at(key).is_null()) {
    field.reset();
  } else {
    field = j.at(key).get<T>();
  }
}

void apply_config_file(const std::string& path, RunConfig& c) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw MalformedInput("config file " + path + ": " + e.what());
  }
  static const std::vector<std::string> known{"edges",   "partition",   "generator",  "algorithms", "fractions",
                                              "epsilon", "uncapped",    "lazy",       "estimator_mode",
                                              "delta",   "lambda",      "walk_length", "samples",   "subsample",
                                              "repetitions", "seed",    "output",     "no_timing"};
  for (const auto& [key, _] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw InvalidParameter("unknown config key '" + key + "'");
  }
  try {
    override_from(j, "edges", c.source.edges);
    override_from(j, "partition", c.source.partition);
    override_from(j, "generator", c.source.generator);
    override_from(j, "algorithms", c.algorithms);
    override_from(j, "fractions", c.fractions);
    override_from(j, "epsilon", c.epsilon);
    override_from(j, "uncapped", c.uncapped);
    override_from(j, "lazy", c.lazy);
    override_from(j, "estimator_mode", c.estimator_mode);
    override_from(j, "delta", c.delta);
    override_from(j, "lambda", c.lambda);
    override_from(j, "walk_length", c.walk_length);
    override_from(j, "samples", c.samples);
    override_from(j, "subsample", c.subsample);
    override_from(j, "repetitions", c.repetitions);
    override_from(j, "seed", c.seed);
    override_from(j, "output", c.output);
    override_from(j, "no_timing", c.no_timing);
  } catch (const json::exception& e) {
    throw MalformedInput("config file " + path + ": " + e.what());
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InvalidParameter("not a number: '" + s + "'");
  }
  if (used != s.size()) throw InvalidParameter("not a number: '" + s + "'");
  return v;
}

std::size_t parse_size(const std::string& s) {
  const double v = parse_double(s);
  if (v < 0 || v != std::floor(v)) throw InvalidParameter("not a non-negative integer: '" + s + "'");
  return static_cast<std::size_t>(v);
}

BipartiteInstance generate(const std::string& spec, std::optional<std::uint64_t> seed) {
  const auto parts = split(spec, ':');
  if (parts.empty()) throw InvalidParameter("empty generator spec");
  if (parts[0] == "path" && parts.size() == 3) {
    std::vector<std::size_t> blue;
    for (const auto& b : split(parts[2], ',')) blue.push_back(parse_size(b));
    return gen_path(parse_size(parts[1]), blue);
  }
  if (parts[0] == "star" && parts.size() == 2) return gen_star_path_clique(parse_size(parts[1]));
  if (parts[0] == "planted" && parts.size() == 5) {
    if (!seed) throw InvalidParameter("--seed is required for the planted generator");
    return gen_planted_two_community(parse_size(parts[1]), parse_size(parts[2]), parse_double(parts[3]),
                                     parse_double(parts[4]), derive_seed(*seed, {kGeneratorStream}));
  }
  throw InvalidParameter("bad generator spec '" + spec +
                         "' (expected path:LEN:BLUE[,BLUE...], star:N or planted:NR:NB:PIN:POUT)");
}

BipartiteInstance load(const InstanceSource& src, std::optional<std::uint64_t> seed) {
  const bool files = !src.edges.empty() || !src.partition.empty();
  if (files == !src.generator.empty())
    throw InvalidParameter("give either --edges and --partition, or --generator");
  if (!files) return generate(src.generator, seed);
  if (src.edges.empty() || src.partition.empty()) throw InvalidParameter("--edges and --partition go together");
  std::vector<std::string> warnings;
  auto g = load_instance_files(src.edges, src.partition, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  return g;
}

EstimatorConfig estimator_for(const RunConfig& c, std::uint64_t seed) {
  EstimatorConfig e;
  if (c.estimator_mode == "experiment") {
    e = EstimatorConfig::experiment(seed);
    e.epsilon = c.epsilon;
    if (c.subsample) e.subsample_fraction = *c.subsample;
  } else if (c.estimator_mode == "guarantee") {
    e.mode = EstimatorMode::Guarantee;
    e.epsilon = c.epsilon;
    e.seed = seed;
    if (c.subsample) e.subsample_fraction = *c.subsample;
  } else {
    throw InvalidParameter("estimator mode must be 'guarantee' or 'experiment'");
  }
  e.delta = c.delta;
  if (c.lambda) e.lambda = *c.lambda;
  e.walk_length = c.walk_length;
  e.samples_per_node = c.samples;
  return e;
}

struct Row {
  std::string algorithm;
  std::size_t k = 0;
  double fraction = 0;
  std::size_t rep = 0;
  std::optional<std::uint64_t> seed;
  double g = NAN, f = NAN;
  std::string edges;
  std::size_t evals = 0;
  double wall_ms = 0;
  std::string error;
};

std::string endpoint_list(const BipartiteInstance& g, const ShortcutSet& F) {
  std::string out;
  for (NodeId e : F.endpoints()) {
    if (!out.empty()) out += ' ';
    out += g.name(e);
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void write_rows(std::ostream& out, const std::vector<Row>& rows) {
  out << "algorithm,k,fraction,rep,seed,g_exact,f_exact,edges,eval_count,wall_ms,error\n";
  out << std::setprecision(12);
  for (const auto& r : rows) {
    out << r.algorithm << ',' << r.k << ',' << r.fraction << ',' << r.rep << ',';
    if (r.seed) out << *r.seed;
    out << ',';
    if (r.error.empty()) out << r.g << ',' << r.f;
    else out << ',';
    out << ',' << csv_field(r.edges) << ',' << r.evals << ',' << r.wall_ms << ',' << csv_field(r.error) << '\n';
  }
}

void finish_row(const BipartiteInstance& g, const ShortcutSet& F, Row& row) {
  const auto p = hitting_to_blue(g, F);
  row.g = p.g;
  row.f = p.f;
  row.edges = endpoint_list(g, F);
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

bool randomized(const std::string& algorithm) {
  return algorithm == "greedy_plus" || algorithm == "pure_random";
}

void validate(const RunConfig& c) {
  if (c.algorithms.empty()) throw InvalidParameter("no algorithms selected");
  for (const auto& a : c.algorithms) {
    if (std::find(kAlgorithms.begin(), kAlgorithms.end(), a) == kAlgorithms.end())
      throw InvalidParameter("unknown algorithm '" + a + "'");
    if (randomized(a) && !c.seed) throw InvalidParameter("--seed is required for " + a);
  }
  if (c.fractions.empty()) throw InvalidParameter("no budget fractions");
  for (double f : c.fractions)
    if (!(f > 0.0 && f <= 1.0)) throw InvalidParameter("budget fractions must lie in (0, 1]");
  if (c.repetitions == 0) throw InvalidParameter("repetitions must be >= 1");
  if (!(c.epsilon > 0.0)) throw InvalidParameter("epsilon must be positive");
}

// Runs one sequential algorithm to the largest budget and reports each
// requested budget as a prefix of that single trace.
void sequential_rows(const BipartiteInstance& g, const RunConfig& c, const std::string& algorithm,
                     const std::vector<std::size_t>& ks, std::vector<Row>& rows) {
  const std::size_t k_max = *std::max_element(ks.begin(), ks.end());
  const std::size_t reps = algorithm == "greedy_plus" ? c.repetitions : 1;
  for (std::size_t rep = 0; rep < reps; ++rep) {
    std::optional<std::uint64_t> seed;
    if (algorithm == "greedy_plus") seed = derive_seed(*c.seed, {static_cast<std::uint64_t>(rep)});
    GreedyOptions o;
    o.epsilon = c.epsilon;
    o.lazy = c.lazy;
    o.cap_at_k = true;
    const auto start = std::chrono::steady_clock::now();
    GreedyResult result;
    std::string error;
    try {
      result = algorithm == "greedy" ? greedy_exact(g, k_max, o) : greedy_plus(g, k_max, o, estimator_for(c, *seed));
    } catch (const Error& e) {
      error = e.what();
    }
    const double ms = elapsed_ms(start);
    for (std::size_t i = 0; i < ks.size(); ++i) {
      Row row{algorithm, ks[i], c.fractions[i], rep, seed};
      row.wall_ms = c.no_timing ? 0.0 : ms;
      row.error = error;
      if (error.empty()) {
        ShortcutSet prefix;
        const std::size_t used = std::min(ks[i], result.trace.steps.size());
        for (std::size_t s = 0; s < used; ++s) {
          prefix.add(result.trace.steps[s].endpoint);
          row.evals += result.trace.steps[s].evaluations;
        }
        try {
          finish_row(g, prefix, row);
        } catch (const Error& e) {
          row.error = e.what();
        }
      }
      rows.push_back(std::move(row));
    }
  }
}

ShortcutSet one_shot(const BipartiteInstance& g, const RunConfig& c, const std::string& algorithm, std::size_t k,
                     std::optional<std::uint64_t> seed, std::size_t& evals) {
  if (algorithm == "greedy" || algorithm == "greedy_plus") {
    GreedyOptions o;
    o.epsilon = c.epsilon;
    o.lazy = c.lazy;
    o.cap_at_k = !c.uncapped;
    const auto r = algorithm == "greedy" ? greedy_exact(g, k, o) : greedy_plus(g, k, o, estimator_for(c, *seed));
    evals = r.trace.total_evaluations();
    return r.shortcuts;
  }
  if (algorithm == "asymm") {
    evals = g.red_count() + 1;  // one linear solve per quasi-metric column
    return asymm(g, k).shortcuts;
  }
  if (algorithm == "bmah_route") {
    EstimatorConfig est = EstimatorConfig::experiment(seed.value_or(0));
    return bmmh_via_bmah(g, k, c.epsilon, BmahRoute::Exact, est);
  }
  if (algorithm == "pure_random") return pure_random(g, k, *seed);
  evals = 1;
  return top_hitting_baseline(g, k);
}

int run_sweep(RunConfig c, const std::string& config_path) {
  if (!config_path.empty()) apply_config_file(config_path, c);
  validate(c);
  const auto g = load(c.source, c.seed);

  std::vector<std::size_t> ks;
  for (double f : c.fractions)
    ks.push_back(std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(f * g.red_count() - 1e-9))));

  std::vector<Row> rows;
  for (const auto& algorithm : c.algorithms) {
    if ((algorithm == "greedy" || algorithm == "greedy_plus") && !c.uncapped) {
      sequential_rows(g, c, algorithm, ks, rows);
      continue;
    }
    const std::size_t reps = randomized(algorithm) ? c.repetitions : 1;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      for (std::size_t rep = 0; rep < reps; ++rep) {
        Row row{algorithm, ks[i], c.fractions[i], rep};
        if (randomized(algorithm)) row.seed = derive_seed(*c.seed, {i, static_cast<std::uint64_t>(rep)});
        const auto start = std::chrono::steady_clock::now();
        try {
          const auto F = one_shot(g, c, algorithm, ks[i], row.seed, row.evals);
          row.wall_ms = c.no_timing ? 0.0 : elapsed_ms(start);
          finish_row(g, F, row);
        } catch (const Error& e) {
          row.error = e.what();
        }
        rows.push_back(std::move(row));
      }
    }
  }

  if (c.output.empty() || c.output == "-") {
    write_rows(std::cout, rows);
  } else {
    std::ofstream out(c.output);
    if (!out) throw MalformedInput("cannot write " + c.output);
    write_rows(out, rows);
    std::ofstream side(c.output + ".json");
    json meta = to_json(c);
    meta["red_count"] = g.red_count();
    meta["blue_count"] = g.blue_count();
    meta["edge_count"] = g.edge_count();
    meta["budgets"] = ks;
    side << meta.dump(2) << "\n";
  }
  return 0;
}

struct Check {
  std::string name;
  bool ok;
  std::string detail;
};

int run_verify(const InstanceSource& src, const std::string& level, std::optional<std::uint64_t> seed) {
  if (level != "fast" && level != "full") throw InvalidParameter("level must be 'fast' or 'full'");
  if (!seed) throw InvalidParameter("--seed is required (the coverage check samples walks)");
  const bool full = level == "full";
  const auto g = load(src, seed);
  std::vector<Check> checks;
  auto run = [&](const std::string& name, auto&& body) {
    try {
      checks.push_back(body());
    } catch (const Error& e) {
      checks.push_back({name, false, e.what()});
    }
    const auto& c = checks.back();
    std::cout << (c.ok ? "PASS " : "FAIL ") << c.name << ": " << c.detail << std::endl;
  };

  run("ratio-bound", [&] {
    const auto p = hitting_to_blue(g, ShortcutSet{});
    std::ostringstream d;
    d << "g=" << p.g << " f=" << p.f << " bound=" << ratio_bound(p.h.size()) * p.g;
    return Check{"ratio-bound", p.g <= p.f && p.f <= ratio_bound(p.h.size()) * p.g, d.str()};
  });

  run("supermodularity", [&] {
    auto cands = candidate_endpoints(g, ShortcutSet{});
    const std::size_t limit = full ? cands.size() : std::min<std::size_t>(cands.size(), 12);
    cands.resize(limit);
    const auto base = hitting_to_blue(g, ShortcutSet{});
    std::vector<HittingProfile> single;
    for (NodeId e : cands) single.push_back(hitting_to_blue(g, ShortcutSet({e})));
    std::size_t count = 0, bad = 0;
    for (std::size_t a = 0; a < cands.size(); ++a) {
      for (std::size_t b = 0; b < cands.size(); ++b) {
        if (a == b && remaining_capacity(g, ShortcutSet({cands[a]}), cands[a]) == 0) continue;
        const auto both = hitting_to_blue(g, ShortcutSet({cands[a], cands[b]}));
        for (std::size_t r = 0; r < base.h.size(); ++r, ++count)
          if (single[b].h[r] - both.h[r] > base.h[r] - single[a].h[r] + 1e-7) ++bad;
      }
    }
    return Check{"supermodularity", bad == 0,
                 std::to_string(count) + " checks over " + std::to_string(cands.size()) + " candidates, " +
                     std::to_string(bad) + " violations"};
  });

  run("triangle-inequality", [&] {
    if (!full && g.red_count() > 200) return Check{"triangle-inequality", true, "skipped (|R| > 200 at fast level)"};
    const auto qm = build_quasi_metric(g);
    const double v = qm.max_triangle_violation();
    std::ostringstream d;
    d << "max violation " << v;
    return Check{"triangle-inequality", v <= 1e-7, d.str()};
  });

  run("estimator-coverage", [&] {
    const std::size_t runs = full ? 200 : 20;
    const double exact = hitting_to_blue(g, ShortcutSet{}).g;
    std::size_t hits = 0;
    std::size_t ell = 0;
    for (std::size_t s = 0; s < runs; ++s) {
      EstimatorConfig c;
      c.epsilon = 0.2;
      c.delta = 0.1;
      c.seed = derive_seed(*seed, {s});
      const auto e = estimate_g(g, ShortcutSet{}, c);
      ell = e.params.walk_length;
      if (std::abs(e.g_hat - exact) <= 0.2 * exact) ++hits;
    }
    std::ostringstream d;
    d << hits << "/" << runs << " estimates within 0.2 g (walk length " << ell << ")";
    return Check{"estimator-coverage", hits * 10 >= runs * 9, d.str()};
  });

  const bool ok = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
  return ok ? 0 : 1;
}

int run_gen(const std::string& family, std::size_t length, const std::vector<std::size_t>& blue, std::size_t n,
            std::size_t n_red, std::size_t n_blue, double p_in, double p_out, std::optional<std::uint64_t> seed,
            const std::string& prefix) {
  BipartiteInstance g = [&] {
    if (family == "path") return gen_path(length, blue);
    if (family == "star") return gen_star_path_clique(n);
    if (family == "planted") {
      if (!seed) throw InvalidParameter("--seed is required for the planted family");
      return gen_planted_two_community(n_red, n_blue, p_in, p_out, *seed);
    }
    throw InvalidParameter("unknown family '" + family + "' (path, star, planted)");
  }();
  std::ofstream edges(prefix + ".edges");
  std::ofstream part(prefix + ".partition");
  if (!edges || !part) throw MalformedInput("cannot write files with prefix " + prefix);
  write_edge_list(edges, g);
  write_partition(part, g);
  std::cout << prefix << ".edges " << prefix << ".partition: " << g.node_count() << " nodes, " << g.edge_count()
            << " edges, |R|=" << g.red_count() << "\n";
  return 0;
}

int run_eval(const InstanceSource& src, const std::string& shortcuts_path, std::optional<std::uint64_t> seed) {
  const auto g = load(src, seed);
  ShortcutSet F;
  if (!shortcuts_path.empty()) {
    std::ifstream in(shortcuts_path);
    if (!in) throw MalformedInput("cannot open " + shortcuts_path);
    F = read_shortcuts(in, g);
  }
  const auto p = hitting_to_blue(g, F);
  json out;
  out["g"] = p.g;
  out["f"] = p.f;
  out["residual"] = p.residual;
  out["red_count"] = g.red_count();
  out["shortcuts"] = F.size();
  json h = json::object();
  for (std::size_t i = 0; i < p.red.size(); ++i) h[g.name(p.red[i])] = p.h[i];
  out["h"] = h;
  std::cout << out.dump(2) << "\n";
  return 0;
}

void add_source_options(CLI::App* cmd, InstanceSource& src) {
  cmd->add_option("--edges", src.edges, "Edge list file ('-' for stdin)");
  cmd->add_option("--partition", src.partition, "Partition file: 'node R|B' per line");
  cmd->add_option("--generator", src.generator, "path:LEN:BLUE[,BLUE...] | star:N | planted:NR:NB:PIN:POUT");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shortcut-edge augmentation for red/blue hitting times"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;
  std::uint64_t seed_value = 0;
  auto* run = app.add_subcommand("run", "Budget sweep over algorithms; CSV rows plus a JSON sidecar");
  add_source_options(run, cfg.source);
  run->add_option("--algorithms", cfg.algorithms, "greedy, greedy_plus, asymm, bmah_route, pure_random, top_hitting")
      ->delimiter(',');
  run->add_option("--fractions", cfg.fractions, "Budgets as fractions of |R|")->delimiter(',');
  run->add_option("--epsilon", cfg.epsilon, "Greedy and estimator epsilon");
  run->add_flag("--uncapped", cfg.uncapped, "Run greedy variants for the full bicriteria budget");
  run->add_flag("--lazy", cfg.lazy, "Lazy candidate evaluation");
  run->add_option("--estimator-mode", cfg.estimator_mode, "guarantee | experiment");
  run->add_option("--delta", cfg.delta, "Estimator failure probability");
  run->add_option("--lambda", cfg.lambda, "Spectral-radius override");
  run->add_option("--walk-length", cfg.walk_length, "Walk truncation override (experiment mode)");
  run->add_option("--samples", cfg.samples, "Walks per start node override (experiment mode)");
  run->add_option("--subsample", cfg.subsample, "Fraction of red start nodes (experiment mode)");
  run->add_option("--repetitions", cfg.repetitions, "Repetitions of randomized algorithms");
  auto* run_seed = run->add_option("--seed", seed_value, "Master seed");
  run->add_option("-o,--output", cfg.output, "CSV path ('-' for stdout); the sidecar is <output>.json");
  run->add_flag("--no-timing", cfg.no_timing, "Write wall_ms as 0 so outputs are byte-identical");
  run->add_option("--config", config_path, "JSON config; its keys override flags");

  InstanceSource vsrc;
  std::string level = "fast";
  auto* verify = app.add_subcommand("verify", "Invariant checks on one instance; nonzero exit on violation");
  add_source_options(verify, vsrc);
  verify->add_option("--level", level, "fast | full");
  auto* verify_seed = verify->add_option("--seed", seed_value, "Seed for the sampling checks");

  std::string family, prefix;
  std::size_t length = 0, n = 0, n_red = 0, n_blue = 0;
  std::vector<std::size_t> blue;
  double p_in = 0, p_out = 0;
  auto* gen = app.add_subcommand("gen", "Write a synthetic instance as <prefix>.edges and <prefix>.partition");
  gen->add_option("family", family, "path | star | planted")->required();
  gen->add_option("--length", length, "Path length");
  gen->add_option("--blue", blue, "Blue path positions")->delimiter(',');
  gen->add_option("--n", n, "Star size (a fourth power >= 16)");
  gen->add_option("--n-red", n_red, "Red group size");
  gen->add_option("--n-blue", n_blue, "Blue group size");
  gen->add_option("--p-in", p_in, "Within-group edge probability");
  gen->add_option("--p-out", p_out, "Cross-group edge probability");
  auto* gen_seed = gen->add_option("--seed", seed_value, "Seed");
  gen->add_option("-o,--out", prefix, "Output prefix")->required();

  InstanceSource esrc;
  std::string shortcuts_path;
  auto* eval = app.add_subcommand("eval", "Exact g, f and per-node hitting times for an instance + shortcuts");
  add_source_options(eval, esrc);
  eval->add_option("--shortcuts", shortcuts_path, "One red node per line; repeats add multiplicity");
  auto* eval_seed = eval->add_option("--seed", seed_value, "Seed for randomized generators");

  CLI11_PARSE(app, argc, argv);

  auto seed_if = [&](CLI::Option* opt) -> std::optional<std::uint64_t> {
    if (opt->count() > 0) return seed_value;
    return std::nullopt;
  };

  try {
    if (*run) {
      cfg.seed = seed_if(run_seed);
      return run_sweep(cfg, config_path);
    }
    if (*verify) return run_verify(vsrc, level, seed_if(verify_seed));
    if (*gen) return run_gen(family, length, blue, n, n_red, n_blue, p_in, p_out, seed_if(gen_seed), prefix);
    if (*eval) return run_eval(esrc, shortcuts_path, seed_if(eval_seed));
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
