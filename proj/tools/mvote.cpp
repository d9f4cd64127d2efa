// Command-line front end for the mvote library.

#include <glob.h>
#include <unistd.h>

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "mvote/constructions.hpp"
#include "mvote/distortion.hpp"
#include "mvote/errors.hpp"
#include "mvote/matching.hpp"
#include "mvote/metric.hpp"
#include "mvote/rules.hpp"
#include "mvote/sampling.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace mvote;

namespace {

/// Input or usage problem; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Writes to a temporary sibling and renames it into place.
void write_file_atomic(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw UsageError("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw UsageError("cannot move output into '" + path.string() + "'");
  }
}

Rational parse_alpha(const std::string& text) {
  Rational a;
  try {
    a = parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--alpha: ") + e.what());
  }
  if (a < 0 || a > 1) throw UsageError("--alpha must lie in [0, 1]");
  return a;
}

Election load_election(const std::string& path) {
  try {
    return parse_election(read_file(path));
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(path + ": " + e.what());
  }
}

WeightVector load_weights(const std::string& path) {
  try {
    return parse_weights(read_file(path));
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

RuleReport run_named_rule(const std::string& name, const Election& e, const Rational& alpha) {
  RuleSpec spec;
  try {
    spec = parse_rule(name);
  } catch (const std::invalid_argument& ex) {
    std::string known;
    for (const auto& r : rule_names()) known += " " + r;
    throw UsageError(std::string(ex.what()) + "; known rules:" + known);
  }
  std::optional<WeightVector> p;
  std::optional<WeightVector> q;
  if (spec.kind == RuleSpec::Kind::custom_matching) {
    p = load_weights(spec.p_file);
    q = load_weights(spec.q_file);
  }
  try {
    return run_rule(spec, e, alpha, p, q);
  } catch (const InternalError&) {
    throw;
  } catch (const std::exception& ex) {
    throw UsageError(spec.name() + ": " + ex.what());
  }
}

json lottery_json(const Lottery& L) {
  json j = json::object();
  for (CandidateId c = 0; c < L.num_candidates(); ++c) {
    j[std::to_string(c)] = to_string(L.probability(c));
  }
  return j;
}

std::string lottery_text(const Lottery& L) {
  std::string s;
  for (CandidateId c = 0; c < L.num_candidates(); ++c) {
    s += (c ? " " : "") + to_string(L.probability(c));
  }
  return s;
}

json matrix_json(const std::vector<std::vector<Rational>>& rows) {
  json out = json::array();
  for (const auto& row : rows) {
    json r = json::array();
    for (const auto& x : row) r.push_back(to_string(x));
    out.push_back(std::move(r));
  }
  return out;
}

/// Draws a candidate from L exactly: a uniform integer below the common
/// denominator picks the cumulative bucket.
CandidateId sample_lottery(const Lottery& L, std::uint64_t seed) {
  const Integer den = common_denominator(L.probabilities());
  if (!den.fits_ulong_p()) throw UsageError("lottery denominators too large to sample");
  std::mt19937_64 rng(seed);
  const std::uint64_t draw = uniform_below_inclusive(rng, den.get_ui() - 1);
  Rational acc = 0;
  for (CandidateId c = 0; c < L.num_candidates(); ++c) {
    acc += L.probability(c);
    if (Rational(static_cast<unsigned long>(draw) + 1, den.get_ui()) <= acc) return c;
  }
  return L.num_candidates() - 1;
}

// analyze ------------------------------------------------------------------

struct AnalyzeArgs {
  std::string election;
  std::string rule;
  std::string alpha = "1";
  bool json_out = false;
  bool sample = false;
  std::uint64_t seed = 0;
};

int cmd_analyze(const AnalyzeArgs& a) {
  const Election e = load_election(a.election);
  const RuleReport r = run_named_rule(a.rule, e, parse_alpha(a.alpha));
  std::optional<CandidateId> sampled;
  if (a.sample) sampled = sample_lottery(r.outcome, a.seed);
  if (a.json_out) {
    json j;
    j["rule"] = r.rule;
    j["winner"] = r.winner ? json(*r.winner) : json(nullptr);
    j["lottery"] = lottery_json(r.outcome);
    if (r.matchable) {
      j["matchable"] = r.matchable->members();
      json certs = json::array();
      for (CandidateId c = 0; c < r.certificates.size(); ++c) {
        const auto& cert = r.certificates[c];
        json cj{{"candidate", c}, {"matchable", cert.matchable}};
        cj["matching"] = cert.matching ? matrix_json(*cert.matching) : json(nullptr);
        cj["violating_set"] =
            cert.violating_set ? json(cert.violating_set->members()) : json(nullptr);
        certs.push_back(std::move(cj));
      }
      j["certificates"] = std::move(certs);
    }
    if (sampled) j["sampled"] = *sampled;
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  std::cout << "rule: " << r.rule << '\n';
  if (r.winner) std::cout << "winner: " << *r.winner << '\n';
  std::cout << "lottery: " << lottery_text(r.outcome) << '\n';
  if (r.matchable) {
    std::cout << "matchable:";
    for (CandidateId c : r.matchable->members()) std::cout << ' ' << c;
    std::cout << '\n';
    for (CandidateId c = 0; c < r.certificates.size(); ++c) {
      const auto& cert = r.certificates[c];
      std::cout << "  candidate " << c << ": ";
      if (cert.matchable) {
        std::cout << "matchable\n";
      } else {
        std::cout << "Hall violation S =";
        for (VoterId i : cert.violating_set->members()) std::cout << ' ' << i;
        std::cout << '\n';
      }
    }
  }
  if (sampled) std::cout << "sampled: " << *sampled << '\n';
  return 0;
}

// distortion ---------------------------------------------------------------

struct DistortionArgs {
  std::string election;
  std::optional<std::size_t> candidate;
  std::string rule;
  std::string alpha;
  std::optional<std::size_t> reference;
  bool json_out = false;
  bool no_grouping = false;
};

int cmd_distortion(const DistortionArgs& a) {
  const Election e = load_election(a.election);
  const Rational alpha = parse_alpha(a.alpha);
  Lottery outcome = Lottery::degenerate(1, 0);
  if (a.candidate) {
    if (*a.candidate >= e.num_candidates()) throw UsageError("--candidate out of range");
    outcome = Lottery::degenerate(e.num_candidates(), *a.candidate);
  } else {
    outcome = run_named_rule(a.rule, e, alpha).outcome;
  }
  const VoterGrouping grouping = a.no_grouping ? VoterGrouping::none : VoterGrouping::by_ranking;
  DistortionResult r;
  if (a.reference) {
    if (*a.reference >= e.num_candidates()) throw UsageError("--reference out of range");
    r = worst_case_ratio(e, outcome, *a.reference, alpha, 1, grouping);
  } else {
    r = distortion_of_outcome(e, outcome, alpha, grouping);
  }
  if (a.json_out) {
    std::cout << distortion_json(r) << '\n';
    return 0;
  }
  std::cout << "status: " << to_string(r.status) << '\n';
  if (r.status != DistortionStatus::unbounded) std::cout << "value: " << to_string(r.value) << '\n';
  std::cout << "reference: " << r.reference << '\n';
  for (const auto& part : r.per_reference) {
    std::cout << "  reference " << part.reference << ": " << to_string(part.status);
    if (part.status == DistortionStatus::bounded) std::cout << ' ' << to_string(part.value);
    std::cout << '\n';
  }
  return 0;
}

// construct ----------------------------------------------------------------

struct ConstructArgs {
  std::string name;
  std::string out;
  std::string alpha = "1";
  std::optional<std::size_t> m;
  std::optional<std::size_t> k;
  bool list = false;
};

int cmd_construct(const ConstructArgs& a) {
  if (a.list) {
    std::cout << catalog_json() << '\n';
    return 0;
  }
  if (a.name.empty()) throw UsageError("construct needs a NAME (see --list)");
  bool known = false;
  for (const auto& entry : list_constructions()) known = known || entry.name == a.name;
  if (!known) {
    std::cerr << "unknown construction '" << a.name << "'; available:\n";
    for (const auto& entry : list_constructions()) {
      std::cerr << "  " << entry.name << "  " << entry.summary << '\n';
    }
    return 2;
  }
  if (a.out.empty()) throw UsageError("construct needs --out DIR");
  ConstructionParams params;
  params.alpha = parse_alpha(a.alpha);
  params.m = a.m;
  params.k = a.k;
  NamedInstance inst = [&] {
    try {
      return construct(a.name, params);
    } catch (const std::invalid_argument& e) {
      throw UsageError(a.name + ": " + e.what());
    }
  }();
  std::error_code ec;
  fs::create_directories(a.out, ec);
  if (ec || !fs::is_directory(a.out)) throw UsageError("cannot create '" + a.out + "'");
  const fs::path dir(a.out);
  write_file_atomic(dir / "election.elec", serialize_election(inst.election));
  for (std::size_t w = 0; w < inst.witnesses.size(); ++w) {
    const std::string file = w == 0 ? "witness.graph" : "witness-" + std::to_string(w + 1) + ".graph";
    write_file_atomic(dir / file, serialize_graph(inst.witnesses[w]));
  }
  write_file_atomic(dir / "facts.json", facts_json(inst) + "\n");
  std::cout << "wrote " << a.name << " (n=" << inst.election.num_voters()
            << ", m=" << inst.election.num_candidates() << ") to " << a.out << '\n';
  return 0;
}

// random -------------------------------------------------------------------

struct RandomArgs {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t dim = 2;
  std::uint64_t seed = 0;
  std::string alpha_cap;
  std::string out;
};

int cmd_random(const RandomArgs& a) {
  if (a.n == 0 || a.m == 0) throw UsageError("--n and --m must be at least 1");
  if (a.dim == 0) throw UsageError("--dim must be at least 1");
  std::optional<Rational> cap;
  if (!a.alpha_cap.empty()) cap = parse_alpha(a.alpha_cap);
  std::mt19937_64 rng(a.seed);
  PointInstance inst = [&] {
    try {
      return sample_point_instance(a.n, a.m, a.dim, rng, cap);
    } catch (const std::runtime_error& e) {
      throw UsageError(e.what());
    }
  }();
  if (!consistent_with(inst.metric, inst.election)) {
    throw InternalError("sampled profile is not consistent with its metric");
  }
  std::error_code ec;
  fs::create_directories(a.out, ec);
  if (ec || !fs::is_directory(a.out)) throw UsageError("cannot create '" + a.out + "'");
  const fs::path dir(a.out);
  write_file_atomic(dir / "election.elec", serialize_election(inst.election));
  write_file_atomic(dir / "metric.txt", serialize_metric(inst.metric));
  json j;
  j["n"] = a.n;
  j["m"] = a.m;
  j["dim"] = a.dim;
  j["seed"] = a.seed;
  j["alpha"] = to_string(inst.alpha);
  j["alpha_cap"] = cap ? json(to_string(*cap)) : json(nullptr);
  j["rejected"] = inst.rejected;
  j["points"] = matrix_json(inst.points);
  write_file_atomic(dir / "instance.json", j.dump(2) + "\n");
  std::cout << "minimal alpha: " << to_string(inst.alpha) << '\n';
  return 0;
}

// batch --------------------------------------------------------------------

struct BatchArgs {
  std::string instances;
  std::string rules;
  std::string alpha = "1";
  std::string csv;
  bool timing = false;
};

struct BatchRow {
  std::string instance;
  std::string rule;
  std::string winner;
  std::string lottery;
  std::string status;
  std::string value;
  std::string millis;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

std::vector<std::string> expand_glob(const std::string& pattern) {
  glob_t g{};
  std::vector<std::string> out;
  if (::glob(pattern.c_str(), 0, nullptr, &g) == 0) {
    for (std::size_t i = 0; i < g.gl_pathc; ++i) out.emplace_back(g.gl_pathv[i]);
  }
  globfree(&g);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> split_rules(const std::string& list) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(list);
  while (std::getline(in, cur, ',')) {
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

std::vector<BatchRow> run_instance(const std::string& path, const std::vector<std::string>& rules,
                                   const Rational& alpha, bool timing) {
  std::vector<BatchRow> rows;
  std::optional<Election> e;
  std::string load_error;
  try {
    e = load_election(path);
  } catch (const std::exception& ex) {
    load_error = ex.what();
  }
  for (const auto& rule : rules) {
    BatchRow row{path, rule, "", "", "error", "", ""};
    const auto t0 = std::chrono::steady_clock::now();
    if (!e) {
      row.value = load_error;
    } else {
      try {
        const RuleReport r = run_named_rule(rule, *e, alpha);
        row.winner = r.winner ? std::to_string(*r.winner) : "";
        row.lottery = lottery_text(r.outcome);
        const DistortionResult d = distortion_of_outcome(*e, r.outcome, alpha);
        row.status = to_string(d.status);
        row.value = d.status == DistortionStatus::unbounded ? "" : to_string(d.value);
      } catch (const std::exception& ex) {
        row.status = "error";
        row.value = ex.what();
      }
    }
    if (timing) {
      const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
      row.millis = std::to_string(ms);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::size_t thread_budget(std::size_t jobs) {
  std::size_t t = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MVOTE_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) t = static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      throw UsageError("MVOTE_THREADS must be a positive integer");
    }
  }
  return std::max<std::size_t>(1, std::min(t, jobs));
}

int cmd_batch(const BatchArgs& a) {
  const Rational alpha = parse_alpha(a.alpha);
  const auto paths = expand_glob(a.instances);
  if (paths.empty()) throw UsageError("no instance matches '" + a.instances + "'");
  const auto rules = split_rules(a.rules);
  if (rules.empty()) throw UsageError("--rules is empty");
  for (const auto& r : rules) {
    try {
      parse_rule(r);
    } catch (const std::invalid_argument& ex) {
      throw UsageError(ex.what());
    }
  }

  std::vector<std::vector<BatchRow>> results(paths.size());
  std::atomic<std::size_t> next{0};
  std::mutex fatal_mutex;
  std::exception_ptr fatal;
  auto worker = [&] {
    for (std::size_t k = next++; k < paths.size(); k = next++) {
      try {
        results[k] = run_instance(paths[k], rules, alpha, a.timing);
      } catch (...) {
        std::lock_guard<std::mutex> lock(fatal_mutex);
        if (!fatal) fatal = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const std::size_t threads = thread_budget(paths.size());
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (fatal) std::rethrow_exception(fatal);

  std::vector<BatchRow> rows;
  for (auto& r : results) rows.insert(rows.end(), r.begin(), r.end());
  std::stable_sort(rows.begin(), rows.end(), [](const BatchRow& x, const BatchRow& y) {
    return std::tie(x.instance, x.rule) < std::tie(y.instance, y.rule);
  });
  std::ostringstream csv;
  csv << "instance,rule,winner,lottery,status,value,millis\n";
  std::size_t failures = 0;
  for (const auto& r : rows) {
    failures += r.status == "error" ? 1 : 0;
    csv << csv_field(r.instance) << ',' << csv_field(r.rule) << ',' << csv_field(r.winner) << ','
        << csv_field(r.lottery) << ',' << csv_field(r.status) << ',' << csv_field(r.value) << ','
        << csv_field(r.millis) << '\n';
  }
  write_file_atomic(a.csv, csv.str());
  std::cout << rows.size() << " rows, " << failures << " errors\n";
  return failures == rows.size() ? 2 : 0;
}

// fairness -----------------------------------------------------------------

struct FairnessArgs {
  std::string metric;
  std::size_t candidate = 0;
  std::optional<std::size_t> k;
  bool json_out = false;
};

int cmd_fairness(const FairnessArgs& a) {
  const MetricSpace d = [&] {
    try {
      return parse_metric(read_file(a.metric));
    } catch (const ParseError& e) {
      throw UsageError(a.metric + ": " + e.what());
    } catch (const std::invalid_argument& e) {
      throw UsageError(a.metric + ": " + e.what());
    }
  }();
  if (a.candidate >= d.num_candidates()) throw UsageError("--candidate out of range");
  if (d.num_voters() == 0) throw UsageError("metric has no voters");
  std::vector<std::size_t> ks;
  if (a.k) {
    if (*a.k < 1 || *a.k > d.num_voters()) throw UsageError("--k must lie in [1, n]");
    ks.push_back(*a.k);
  } else {
    for (std::size_t k = 1; k <= d.num_voters(); ++k) ks.push_back(k);
  }
  json rows = json::array();
  for (std::size_t k : ks) {
    const Rational mine = phi_k(d, a.candidate, k);
    Rational best = mine;
    CandidateId arg = a.candidate;
    for (CandidateId c = 0; c < d.num_candidates(); ++c) {
      const Rational v = phi_k(d, c, k);
      if (v < best || (v == best && c < arg)) {
        best = v;
        arg = c;
      }
    }
    json row{{"k", k}, {"phi", to_string(mine)}, {"min_phi", to_string(best)}, {"argmin", arg}};
    if (best != 0) {
      row["ratio"] = to_string(mine / best);
    } else {
      row["ratio"] = mine == 0 ? json("1") : json(nullptr);
    }
    rows.push_back(std::move(row));
  }
  if (a.json_out) {
    std::cout << json{{"candidate", a.candidate}, {"rows", rows}}.dump(2) << '\n';
    return 0;
  }
  for (const auto& row : rows) {
    std::cout << "k=" << row["k"].get<std::size_t>() << " phi=" << row["phi"].get<std::string>()
              << " min=" << row["min_phi"].get<std::string>()
              << " ratio=" << (row["ratio"].is_null() ? "inf" : row["ratio"].get<std::string>())
              << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metric-distortion voting rules, certificates and lower-bound instances"};
  app.require_subcommand(1);

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "run a rule on an election");
  analyze->add_option("--election", an.election, "election file")->required();
  analyze->add_option("--rule", an.rule, "rule name")->required();
  analyze->add_option("--alpha", an.alpha, "decisiveness parameter P/Q (default 1)");
  analyze->add_flag("--json", an.json_out, "JSON output");
  auto* sample_flag = analyze->add_flag("--sample", an.sample, "draw a winner from the lottery");
  analyze->add_option("--seed", an.seed, "seed for --sample")->needs(sample_flag);

  DistortionArgs di;
  auto* distortion = app.add_subcommand("distortion", "worst-case ratio via the adversarial LP");
  distortion->add_option("--election", di.election, "election file")->required();
  auto* cand = distortion->add_option("--candidate", di.candidate, "evaluate this candidate");
  auto* rule = distortion->add_option("--rule", di.rule, "evaluate this rule's outcome");
  cand->excludes(rule);
  distortion->add_option("--alpha", di.alpha, "decisiveness parameter P/Q")->required();
  distortion->add_option("--reference", di.reference, "fix the denominator candidate");
  distortion->add_flag("--json", di.json_out, "JSON output with witness metric");
  distortion->add_flag("--no-grouping", di.no_grouping, "one LP point per voter");

  ConstructArgs co;
  auto* construct_cmd = app.add_subcommand("construct", "write a named lower-bound instance");
  construct_cmd->add_option("name", co.name, "construction name");
  construct_cmd->add_option("--out", co.out, "output directory");
  construct_cmd->add_option("--alpha", co.alpha, "decisiveness parameter P/Q (default 1)");
  construct_cmd->add_option("--m", co.m, "candidate count");
  construct_cmd->add_option("--k", co.k, "group size");
  construct_cmd->add_flag("--list", co.list, "print the catalog as JSON");

  RandomArgs ra;
  auto* random = app.add_subcommand("random", "sample a Euclidean-cube instance (L1 distance)");
  random->add_option("--n", ra.n, "voters")->required();
  random->add_option("--m", ra.m, "candidates")->required();
  random->add_option("--dim", ra.dim, "dimension (default 2)");
  random->add_option("--seed", ra.seed, "generator seed (default 0)");
  random->add_option("--alpha-cap", ra.alpha_cap, "redraw until alpha-decisive for this P/Q");
  random->add_option("--out", ra.out, "output directory")->required();

  BatchArgs ba;
  auto* batch = app.add_subcommand("batch", "rules x instances to CSV");
  batch->add_option("--instances", ba.instances, "glob of election files")->required();
  batch->add_option("--rules", ba.rules, "comma-separated rule names")->required();
  batch->add_option("--alpha", ba.alpha, "decisiveness parameter P/Q (default 1)");
  batch->add_option("--csv", ba.csv, "output CSV")->required();
  batch->add_flag("--timing", ba.timing, "fill the millis column (output no longer reproducible)");

  FairnessArgs fa;
  auto* fairness = app.add_subcommand("fairness", "phi_k report for one candidate");
  fairness->add_option("--metric", fa.metric, "metric file")->required();
  fairness->add_option("--candidate", fa.candidate, "candidate index")->required();
  fairness->add_option("--k", fa.k, "single k (default: all)");
  fairness->add_flag("--json", fa.json_out, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(an);
    if (distortion->parsed()) {
      if (di.candidate.has_value() == !di.rule.empty()) {
        throw UsageError("distortion needs exactly one of --candidate and --rule");
      }
      return cmd_distortion(di);
    }
    if (construct_cmd->parsed()) return cmd_construct(co);
    if (random->parsed()) return cmd_random(ra);
    if (batch->parsed()) return cmd_batch(ba);
    if (fairness->parsed()) return cmd_fairness(fa);
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
