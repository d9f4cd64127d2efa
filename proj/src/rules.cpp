#include "mvote/rules.hpp"

#include <stdexcept>

#include "mvote/errors.hpp"

namespace mvote {

void check_alpha(const Rational& alpha) {
  if (alpha < 0 || alpha > 1) throw std::invalid_argument("alpha must lie in [0, 1]");
}

RuleReport matching_rule(const Election& e, const WeightVector& p, const WeightVector& q) {
  const std::size_t m = e.num_candidates();
  CandidateSet matchable(m);
  std::vector<MatchingCertificate> certs;
  certs.reserve(m);
  for (CandidateId a = 0; a < m; ++a) {
    certs.push_back(check_fractional_matching(build_domination_graph(e, a, p, q)));
    if (certs.back().matchable) matchable.insert(a);
  }
  if (matchable.empty()) {
    throw InternalError("no candidate has a matchable domination graph");
  }
  const CandidateId winner = matchable.members().front();
  return {"matching", Lottery::degenerate(m, winner), winner, std::move(matchable),
          std::move(certs)};
}

RuleReport plurality_matching(const Election& e) {
  RuleReport r = matching_rule(e, WeightVector::uniform(e.num_voters()), WeightVector::plurality(e));
  r.rule = "plurality-matching";
  return r;
}

RuleReport uniform_matching(const Election& e) {
  RuleReport r = matching_rule(e, WeightVector::uniform(e.num_voters()),
                               WeightVector::uniform(e.num_candidates()));
  r.rule = "uniform-matching";
  return r;
}

Lottery random_dictatorship(const Election& e) {
  return Lottery(WeightVector::plurality(e).values());
}

namespace {

/// Lowest-index candidate with 2 plu >= (1+alpha) n.
std::optional<CandidateId> threshold_candidate(const Election& e, const Rational& alpha) {
  const auto plu = plurality_scores(e);
  const Rational bar = (1 + alpha) * static_cast<unsigned long>(e.num_voters());
  for (CandidateId c = 0; c < plu.size(); ++c) {
    if (Rational(2 * static_cast<unsigned long>(plu[c])) >= bar) return c;
  }
  return std::nullopt;
}

}  // namespace

Lottery smart_dictatorship(const Election& e, const Rational& alpha) {
  check_alpha(alpha);
  const std::size_t m = e.num_candidates();
  if (auto c = threshold_candidate(e, alpha)) return Lottery::degenerate(m, *c);
  const auto plu = plurality_scores(e);
  const Rational n = static_cast<unsigned long>(e.num_voters());
  std::vector<Rational> weight(m);
  Rational total = 0;
  for (CandidateId c = 0; c < m; ++c) {
    const Rational x = static_cast<unsigned long>(plu[c]);
    // Below the threshold n - 2x/(1+alpha) > 0.
    weight[c] = x / (n - 2 * x / (1 + alpha));
    total += weight[c];
  }
  for (Rational& w : weight) w /= total;
  return Lottery(std::move(weight));
}

Lottery generalized_proportional_to_squares(const Election& e, const Rational& alpha) {
  check_alpha(alpha);
  if (e.num_candidates() != 2) throw std::invalid_argument("gps needs exactly 2 candidates");
  if (auto c = threshold_candidate(e, alpha)) return Lottery::degenerate(2, *c);
  const auto plu = plurality_scores(e);
  const Rational a = static_cast<unsigned long>(plu[0]);
  const Rational b = static_cast<unsigned long>(plu[1]);
  const Rational num = (1 + alpha) * a * a - (1 - alpha) * a * b;
  const Rational den = (1 + alpha) * (a * a + b * b) - 2 * (1 - alpha) * a * b;
  const Rational pa = num / den;
  return Lottery({pa, 1 - pa});
}

std::size_t pairwise_support(const Election& e, CandidateId x, CandidateId y) {
  std::size_t count = 0;
  for (VoterId i = 0; i < e.num_voters(); ++i) {
    if (e.position(i, x) < e.position(i, y)) ++count;
  }
  return count;
}

std::optional<CandidateId> condorcet_winner(const Election& e) {
  const std::size_t n = e.num_voters();
  for (CandidateId a = 0; a < e.num_candidates(); ++a) {
    bool wins = true;
    for (CandidateId c = 0; c < e.num_candidates() && wins; ++c) {
      if (c != a && 2 * pairwise_support(e, a, c) < n) wins = false;
    }
    if (wins) return a;
  }
  return std::nullopt;
}

CandidateId copeland_winner(const Election& e) {
  const std::size_t n = e.num_voters();
  CandidateId best = 0;
  std::size_t best_score = 0;
  for (CandidateId a = 0; a < e.num_candidates(); ++a) {
    std::size_t score = 0;
    for (CandidateId c = 0; c < e.num_candidates(); ++c) {
      if (c != a && 2 * pairwise_support(e, a, c) > n) ++score;
    }
    if (a == 0 || score > best_score) {
      best = a;
      best_score = score;
    }
  }
  return best;
}

std::string RuleSpec::name() const {
  switch (kind) {
    case Kind::plurality_matching: return "plurality-matching";
    case Kind::uniform_matching: return "uniform-matching";
    case Kind::custom_matching: return "matching:" + p_file + ":" + q_file;
    case Kind::random_dictatorship: return "random-dictatorship";
    case Kind::smart_dictatorship: return "smart-dictatorship";
    case Kind::gps: return "gps";
    case Kind::condorcet: return "condorcet";
    case Kind::copeland: return "copeland";
  }
  return "";
}

RuleSpec parse_rule(std::string_view name) {
  using K = RuleSpec::Kind;
  if (name == "plurality-matching") return {K::plurality_matching, {}, {}};
  if (name == "uniform-matching") return {K::uniform_matching, {}, {}};
  if (name == "random-dictatorship") return {K::random_dictatorship, {}, {}};
  if (name == "smart-dictatorship") return {K::smart_dictatorship, {}, {}};
  if (name == "gps") return {K::gps, {}, {}};
  if (name == "condorcet") return {K::condorcet, {}, {}};
  if (name == "copeland") return {K::copeland, {}, {}};
  constexpr std::string_view prefix = "matching:";
  if (name.substr(0, prefix.size()) == prefix) {
    const std::string_view rest = name.substr(prefix.size());
    const auto colon = rest.find(':');
    if (colon != std::string_view::npos && colon > 0 && colon + 1 < rest.size() &&
        rest.find(':', colon + 1) == std::string_view::npos) {
      return {K::custom_matching, std::string(rest.substr(0, colon)),
              std::string(rest.substr(colon + 1))};
    }
    throw std::invalid_argument("expected matching:<p-file>:<q-file>");
  }
  throw std::invalid_argument("unknown rule '" + std::string(name) + "'");
}

std::vector<std::string> rule_names() {
  return {"plurality-matching", "uniform-matching", "matching:<p-file>:<q-file>",
          "random-dictatorship", "smart-dictatorship", "gps", "condorcet", "copeland"};
}

RuleReport run_rule(const RuleSpec& spec, const Election& e, const Rational& alpha,
                    const std::optional<WeightVector>& p, const std::optional<WeightVector>& q) {
  using K = RuleSpec::Kind;
  const std::size_t m = e.num_candidates();
  switch (spec.kind) {
    case K::plurality_matching: return plurality_matching(e);
    case K::uniform_matching: return uniform_matching(e);
    case K::custom_matching: {
      if (!p || !q) throw std::invalid_argument("custom matching needs p and q");
      RuleReport r = matching_rule(e, *p, *q);
      r.rule = spec.name();
      return r;
    }
    case K::random_dictatorship:
      return {spec.name(), random_dictatorship(e), std::nullopt, std::nullopt, {}};
    case K::smart_dictatorship:
      return {spec.name(), smart_dictatorship(e, alpha), std::nullopt, std::nullopt, {}};
    case K::gps:
      return {spec.name(), generalized_proportional_to_squares(e, alpha), std::nullopt,
              std::nullopt, {}};
    case K::condorcet: {
      const auto w = condorcet_winner(e);
      if (!w) throw std::domain_error("no Condorcet winner");
      return {spec.name(), Lottery::degenerate(m, *w), *w, std::nullopt, {}};
    }
    case K::copeland: {
      const CandidateId w = copeland_winner(e);
      return {spec.name(), Lottery::degenerate(m, w), w, std::nullopt, {}};
    }
  }
  throw InternalError("unhandled rule kind");
}

}  // namespace mvote
