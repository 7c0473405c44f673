#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "psqm/bits.hpp"
#include "psqm/bounds.hpp"
#include "psqm/protocols.hpp"
#include "psqm/verify.hpp"

#ifndef PSQM_VERSION
#define PSQM_VERSION "0.0.0"
#endif

namespace psqm::cli {

namespace {

using protocols::Protocol;

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

Json RunConfig::echo() const {
  Json j;
  j["subcommand"] = subcommand;
  j["protocol"] = optional_json(protocol);
  j["k"] = optional_json(k);
  j["l"] = optional_json(l);
  j["n"] = optional_json(n);
  j["inputs"] = optional_json(inputs);
  j["table"] = optional_json(table);
  j["tol"] = number(tol);
  j["seed"] = optional_json(seed);
  j["trials"] = optional_json(trials);
  j["budget"] = budget;
  j["exhaustive"] = exhaustive;
  return j;
}

namespace {

template <typename T>
T require(const std::optional<T>& v, const char* flag) {
  if (!v) {
    throw ConfigError(std::string("missing required option ") + flag);
  }
  return *v;
}

std::unique_ptr<Protocol> make_protocol(const RunConfig& config) {
  const auto name = require(config.protocol, "--protocol");
  try {
    if (name == "sum2") {
      return std::make_unique<protocols::Sum2Protocol>(require(config.k, "--k"));
    }
    if (name == "geq") {
      return std::make_unique<protocols::GeqProtocol>(require(config.k, "--k"), require(config.l, "--l"));
    }
    if (name == "dj") {
      return std::make_unique<protocols::DjProtocol>(require(config.n, "--n"));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("unknown protocol '" + name + "' (expected sum2, geq or dj)");
}

verify::SweepOptions sweep_options(const RunConfig& config) {
  verify::SweepOptions o;
  o.budget = config.budget;
  o.seed = config.seed;
  o.tol = config.tol;
  return o;
}

Json coverage_json(const verify::Coverage& c) {
  return {{"mode", c.exhaustive ? "exhaustive" : "sampled"},
          {"domain_size", c.domain_size},
          {"inputs", c.inputs},
          {"randomness", c.randomness},
          {"seed", optional_json(c.seed)}};
}

Json distribution_json(const Protocol& p, const std::vector<double>& dist) {
  Json j = Json::object();
  for (std::size_t y = 0; y < dist.size(); ++y) {
    j[p.output_label(static_cast<int>(y))] = number(dist[y]);
  }
  return j;
}

Json inputs_json(const std::optional<InputTuple>& x) {
  return x ? Json(format_inputs(*x)) : Json(nullptr);
}

// Sweep errors (missing seed) are configuration problems.
template <typename F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

Report new_report(const RunConfig& config) {
  Report r;
  r.version = PSQM_VERSION;
  r.config = config.echo();
  return r;
}

}  // namespace

Report cmd_run(const RunConfig& config) {
  const auto protocol = make_protocol(config);
  Report report = new_report(config);

  std::vector<InputTuple> inputs;
  Json coverage;
  const bool explicit_inputs = config.inputs.has_value();
  if (explicit_inputs) {
    auto x = guarded([&] { return parse_inputs(*config.inputs); });
    guarded([&] {
      if (static_cast<int>(x.size()) != protocol->party_count()) {
        throw std::invalid_argument("expected one input per party");
      }
      protocol->validate_inputs(x);
      return 0;
    });
    if (!protocol->reference(x)) {
      throw ConfigError("inputs lie outside the promise");
    }
    inputs.push_back(std::move(x));
    coverage = {{"mode", "given"}, {"inputs", 1}, {"randomness", protocol->randomness_count()}};
  } else {
    auto sweep = guarded([&] { return verify::sweep_inputs(*protocol, sweep_options(config)); });
    inputs = std::move(sweep.inputs);
    coverage = coverage_json(sweep.coverage);
  }

  for (const auto& x : inputs) {
    const int y = *protocol->reference(x);
    const auto transcripts = protocol->run_all(x);
    std::vector<double> average(static_cast<std::size_t>(protocol->output_count()), 0.0);
    double min_mass = 1.0;
    Json per_r = Json::array();
    const double w = 1.0 / static_cast<double>(transcripts.size());
    for (const auto& t : transcripts) {
      for (std::size_t o = 0; o < average.size(); ++o) {
        average[o] += w * t.output_distribution[o];
      }
      min_mass = std::min(min_mass, t.output_distribution[static_cast<std::size_t>(y)]);
      if (explicit_inputs) {
        per_r.push_back({{"randomness", t.randomness.to_string()},
                         {"output_distribution", distribution_json(*protocol, t.output_distribution)}});
      }
    }
    Check c{.name = "run", .pass = min_mass >= 1.0 - config.tol};
    c.witnesses = {{"inputs", format_inputs(x)},
                   {"reference", protocol->output_label(y)},
                   {"output_distribution", distribution_json(*protocol, average)},
                   {"min_mass_on_reference", number(min_mass)}};
    if (explicit_inputs) {
      c.witnesses["transcripts"] = std::move(per_r);
    }
    c.coverage = coverage;
    report.checks.push_back(std::move(c));
  }
  report.cost = protocol->communication_cost();
  return report;
}

Report cmd_verify(const RunConfig& config) {
  const auto protocol = make_protocol(config);
  const auto options = sweep_options(config);
  Report report = new_report(config);

  const auto correctness = guarded([&] { return verify::check_correctness(*protocol, options); });
  report.checks.push_back(Check{
      .name = "correctness",
      .pass = correctness.pass,
      .witnesses = {{"min_mass", number(correctness.min_mass)},
                    {"cases", correctness.cases},
                    {"failures", correctness.failures},
                    {"worst_input", inputs_json(correctness.worst_input)},
                    {"worst_randomness", correctness.worst_randomness}},
      .coverage = coverage_json(correctness.coverage)});

  const auto privacy = guarded([&] { return verify::check_privacy(*protocol, options); });
  Json classes = Json::array();
  for (const auto& c : privacy.classes) {
    classes.push_back({{"output", c.label},
                       {"inputs", c.inputs},
                       {"max_distance", number(c.max_distance)},
                       {"worst_input", inputs_json(c.worst_input)},
                       {"purity", number(c.purity)}});
  }
  Json privacy_w = {{"classes", classes}, {"tolerance", number(config.tol)}};
  if (privacy.reject_mass_on_zero_strings) {
    privacy_w["reject_mass_on_zero_strings"] = number(*privacy.reject_mass_on_zero_strings);
    privacy_w["note"] =
        "the reject-class simulator is uniform over ordered distinct message pairs; pairs containing the "
        "all-zero string carry positive mass";
  }
  report.checks.push_back(Check{.name = "privacy",
                                .pass = privacy.pass,
                                .witnesses = std::move(privacy_w),
                                .coverage = coverage_json(privacy.coverage)});
  report.checks.push_back(Check{.name = "simulator_distinguishability",
                                .pass = privacy.distinguishable,
                                .witnesses = {{"max_cross_product", number(privacy.max_cross_product)}},
                                .coverage = coverage_json(privacy.coverage)});

  std::vector<int> parties{0};
  if (protocol->party_count() > 1) {
    parties.push_back(protocol->party_count() - 1);
  }
  for (int party : parties) {
    const auto w = guarded([&] { return verify::check_weight_lemma(*protocol, party, options); });
    Json wit = {{"party", party},
                {"applicable", w.applicable},
                {"max_sum_excluding_own_input", number(w.max_excluding)},
                {"max_sum_including_own_input", number(w.max_including)},
                {"cases", w.cases},
                {"worst_input", inputs_json(w.worst_context)},
                {"worst_r", w.worst_r},
                {"worst_r_prime", w.worst_r_prime}};
    if (!w.note.empty()) {
      wit["note"] = w.note;
    }
    Json cov = coverage_json(w.coverage);
    cov["contexts"] = w.coverage.inputs;
    cov.erase("inputs");
    report.checks.push_back(Check{.name = "weight_lemma_party_" + std::to_string(party + 1),
                                  .pass = w.pass,
                                  .witnesses = std::move(wit),
                                  .coverage = std::move(cov)});
  }

  const auto sweep = guarded([&] { return verify::sweep_inputs(*protocol, options); });
  const auto mu = verify::TupleDistribution::uniform(sweep.inputs);
  const auto purity = verify::check_purity_bounds(*protocol, mu);
  report.checks.push_back(Check{.name = "purity_bounds",
                                .pass = purity.pass,
                                .witnesses = {{"purity", number(purity.purity)},
                                              {"lower", number(purity.lower)},
                                              {"dimension", purity.dimension},
                                              {"distribution", "uniform over covered inputs"}},
                                .coverage = coverage_json(sweep.coverage)});

  const auto claim = verify::check_claim31(*protocol, mu, config.tol);
  Json claim_w = {{"skipped", claim.skipped},
                  {"lhs", number(claim.lhs)},
                  {"rhs", number(claim.rhs)},
                  {"beta", number(claim.beta)},
                  {"cross_terms", number(claim.cross_terms)}};
  if (claim.skipped) {
    claim_w["skip_reason"] = claim.skip_reason;
  }
  report.checks.push_back(Check{.name = "purity_upper_bound",
                                .pass = claim.pass,
                                .witnesses = std::move(claim_w),
                                .coverage = coverage_json(sweep.coverage)});

  const auto cost = verify::communication_cost(*protocol);
  Json sizes = protocol->message_sizes();
  report.checks.push_back(Check{.name = "communication_cost",
                                .pass = true,
                                .witnesses = {{"value", cost.value}, {"unit", cost.unit}, {"per_party", sizes}},
                                .coverage = nullptr});
  report.cost = cost;
  return report;
}

namespace {

bounds::FunctionTable load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open table file " + path);
  }
  try {
    const Json j = Json::parse(in);
    auto rows = j.at("rows").get<std::vector<std::string>>();
    auto cols = j.at("cols").get<std::vector<std::string>>();
    std::vector<std::vector<bounds::Entry>> entries;
    for (const auto& row : j.at("entries")) {
      std::vector<bounds::Entry> out;
      for (const auto& e : row) {
        if (e.is_null()) {
          out.emplace_back(std::nullopt);
        } else if (e.is_number_integer()) {
          out.emplace_back(e.get<int>());
        } else {
          throw ConfigError("table entries must be 0, 1 or null");
        }
      }
      entries.push_back(std::move(out));
    }
    return {std::move(rows), std::move(cols), std::move(entries)};
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("malformed table: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("malformed table: ") + e.what());
  }
}

// Uniform over the defined entries.
bounds::InputDistribution promise_uniform(const bounds::FunctionTable& f) {
  std::size_t defined = 0;
  for (std::size_t i = 0; i < f.row_count(); ++i) {
    for (std::size_t j = 0; j < f.col_count(); ++j) {
      defined += f.at(i, j) ? 1 : 0;
    }
  }
  if (defined == 0) {
    throw ConfigError("table has no defined entries");
  }
  std::vector<double> p(f.row_count() * f.col_count(), 0.0);
  for (std::size_t i = 0; i < f.row_count(); ++i) {
    for (std::size_t j = 0; j < f.col_count(); ++j) {
      if (f.at(i, j)) {
        p[i * f.col_count() + j] = 1.0 / static_cast<double>(defined);
      }
    }
  }
  return {f.row_count(), f.col_count(), std::move(p)};
}

Json labels(const std::vector<std::string>& names, const std::vector<std::size_t>& idx) {
  Json j = Json::array();
  for (auto i : idx) {
    j.push_back(names[i]);
  }
  return j;
}

Json rectangle_json(const bounds::FunctionTable& f, const bounds::Rectangle& r) {
  return {{"rows", labels(f.rows(), r.rows)}, {"cols", labels(f.cols(), r.cols)}};
}

}  // namespace

Report cmd_bound(const RunConfig& config) {
  const auto f = load_table(require(config.table, "--table"));
  if (f.row_count() == 0 || f.col_count() == 0) {
    throw ConfigError("table is empty");
  }
  const auto mu = promise_uniform(f);
  Report report = new_report(config);
  const Json coverage = {{"mode", "exhaustive"},
                         {"rows", f.row_count()},
                         {"cols", f.col_count()},
                         {"distribution", f.is_total() ? "uniform" : "uniform over defined entries"}};

  std::optional<bool> non_degenerate;
  Check nd{.name = "non_degenerate", .coverage = coverage};
  try {
    non_degenerate = bounds::is_non_degenerate(f, mu);
    nd.pass = *non_degenerate;
    nd.witnesses = {{"value", *non_degenerate}};
  } catch (const std::invalid_argument& e) {
    nd.pass = false;
    nd.witnesses = {{"value", nullptr}, {"error", e.what()}};
  }
  report.checks.push_back(std::move(nd));

  std::optional<bounds::AlphaResult> alpha;
  Check ac{.name = "alpha", .pass = true, .coverage = coverage};
  if (f.row_count() <= bounds::kAlphaMaxSide && f.col_count() <= bounds::kAlphaMaxSide) {
    alpha = bounds::alpha(f, mu);
    ac.witnesses = {{"value", number(alpha->value)}, {"witness", nullptr}};
    if (alpha->witness) {
      ac.witnesses["witness"] = {{"R", rectangle_json(f, alpha->witness->first)},
                                 {"R_prime", rectangle_json(f, alpha->witness->second)}};
    }
  } else {
    ac.witnesses = {{"value", nullptr}, {"skipped", "rectangle enumeration is limited to 6x6 tables"}};
  }
  report.checks.push_back(std::move(ac));

  std::optional<double> beta;
  Check bc{.name = "beta", .pass = true, .coverage = coverage};
  try {
    beta = bounds::beta(f, mu);
    bc.witnesses = {{"value", number(*beta)}};
  } catch (const std::invalid_argument& e) {
    bc.pass = false;
    bc.witnesses = {{"value", nullptr}, {"error", e.what()}};
  }
  report.checks.push_back(std::move(bc));

  const double h = bounds::min_entropy(mu);
  report.checks.push_back(
      Check{.name = "min_entropy", .pass = true, .witnesses = {{"value", number(h)}}, .coverage = coverage});

  Check lb{.name = "lower_bound", .coverage = coverage};
  if (non_degenerate.value_or(false) && alpha && beta && *beta > 0.0) {
    const auto bound = bounds::psqm_lower_bound(f, mu);
    lb.pass = true;
    lb.witnesses = {{"value", number(bound.value)}, {"unit", "qubits"}};
  } else {
    lb.pass = false;
    std::string reason = !non_degenerate.value_or(false) ? "F is degenerate or undefined under mu"
                         : !alpha                        ? "alpha not computed"
                                                         : "beta is zero or undefined";
    lb.witnesses = {{"value", nullptr}, {"refused", reason}};
  }
  report.checks.push_back(std::move(lb));

  Check cc{.name = "clique_sizes", .pass = true, .coverage = coverage};
  if (f.row_count() <= bounds::kCliqueMaxSide && f.col_count() <= bounds::kCliqueMaxSide) {
    const auto cl = bounds::exact_smp_clique_sizes(f);
    cc.witnesses = {{"rows", cl.rows},
                    {"cols", cl.cols},
                    {"row_clique", labels(f.rows(), cl.row_clique)},
                    {"col_clique", labels(f.cols(), cl.col_clique)}};
    if (f.is_total()) {
      cc.witnesses["distinct_rows"] = bounds::distinct_row_count(f);
      cc.witnesses["distinct_cols"] = bounds::distinct_col_count(f);
    }
  } else {
    cc.witnesses = {{"rows", nullptr}, {"cols", nullptr}, {"skipped", "clique search is limited to 20x20"}};
  }
  report.checks.push_back(std::move(cc));
  return report;
}

Report cmd_stats(const RunConfig& config) {
  const int n = require(config.n, "--n");
  if (n < 1 || n > bounds::kStatsMaxBits) {
    throw ConfigError("stats supports --n 1 or 2");
  }
  bounds::RandomFunctionStats stats;
  if (config.exhaustive) {
    if (n != 1) {
      throw ConfigError("--exhaustive is only available for --n 1");
    }
    stats = bounds::exhaustive_function_stats(n);
  } else {
    const auto trials = require(config.trials, "--trials");
    if (trials > 0 && !config.seed) {
      throw ConfigError("--seed is required for sampled tables");
    }
    stats = bounds::random_function_stats(n, trials, config.seed.value_or(0));
    if (trials == 0) {
      stats.seed = config.seed;
    }
  }
  Report report = new_report(config);
  auto opt = [](const std::optional<double>& v) { return v ? number(*v) : Json(nullptr); };
  const double side = std::ldexp(1.0, n);
  Check c{.name = "random_function_stats", .pass = true};
  c.witnesses = {{"tables", stats.tables},
                 {"non_degenerate", stats.non_degenerate},
                 {"fraction_non_degenerate", opt(stats.fraction_non_degenerate)},
                 {"max_rectangle_size", optional_json(stats.max_rectangle_size)},
                 {"rectangle_size_reference", number(side * n * n)},
                 {"bound", {{"min", opt(stats.bound.min)},
                            {"median", opt(stats.bound.median)},
                            {"max", opt(stats.bound.max)},
                            {"distribution", "uniform"}}}};
  c.coverage = {{"mode", stats.exhaustive ? "exhaustive" : "sampled"},
                {"tables", stats.tables},
                {"seed", optional_json(stats.seed)}};
  report.checks.push_back(std::move(c));
  return report;
}

namespace {

void add_protocol_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--protocol", cfg.protocol, "sum2, geq or dj");
  sub->add_option("--k", cfg.k, "number of parties");
  sub->add_option("--l", cfg.l, "GEQ blocks (inputs have 2l bits)");
  sub->add_option("--n", cfg.n, "DJ input length (power of two)");
}

void add_common_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--tol", cfg.tol, "numeric tolerance")->capture_default_str();
  sub->add_option("--seed", cfg.seed, "seed for sampled sweeps and random tables");
  sub->add_option("--budget", cfg.budget, "largest input domain enumerated exhaustively")->capture_default_str();
  sub->add_option("--out", cfg.out, "write the report here instead of stdout");
  sub->add_flag("--timing", cfg.timing, "record elapsed_ms (reports then differ run to run)");
}

}  // namespace

int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Simulate and verify private simultaneous quantum message protocols"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "execute a protocol on given or enumerated inputs");
  add_protocol_options(run, cfg);
  run->add_option("--inputs", cfg.inputs, "comma-separated bit strings, one per party");
  add_common_options(run, cfg);

  auto* ver = app.add_subcommand("verify", "check correctness, privacy, purity and cost");
  add_protocol_options(ver, cfg);
  add_common_options(ver, cfg);

  auto* bnd = app.add_subcommand("bound", "lower-bound quantities for a function table");
  bnd->add_option("--table", cfg.table, "function table JSON file")->required();
  add_common_options(bnd, cfg);

  auto* st = app.add_subcommand("stats", "statistics over random function tables");
  st->add_option("--n", cfg.n, "bits per side")->required();
  st->add_option("--trials", cfg.trials, "number of random tables");
  st->add_flag("--exhaustive", cfg.exhaustive, "enumerate every table (n = 1)");
  add_common_options(st, cfg);

  std::vector<const char*> argv;
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream o;
    std::ostringstream e_out;
    const int code = app.exit(e, o, e_out);
    out << o.str();
    err << e_out.str();
    return code == 0 ? kExitPass : kExitConfigError;
  }

  const auto start = std::chrono::steady_clock::now();
  Report report;
  try {
    if (run->parsed()) {
      cfg.subcommand = "run";
      report = cmd_run(cfg);
    } else if (ver->parsed()) {
      cfg.subcommand = "verify";
      report = cmd_verify(cfg);
    } else if (bnd->parsed()) {
      cfg.subcommand = "bound";
      report = cmd_bound(cfg);
    } else {
      cfg.subcommand = "stats";
      report = cmd_stats(cfg);
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  if (cfg.timing) {
    const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
    report.elapsed_ms = number(ms.count()).get<double>();
  }

  const auto text = serialize(report);
  if (cfg.out) {
    std::ofstream file(*cfg.out, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << *cfg.out << "\n";
      return kExitConfigError;
    }
    file << text;
  } else {
    out << text;
  }
  return report.all_pass() ? kExitPass : kExitCheckFailed;
}

}  // namespace psqm::cli
