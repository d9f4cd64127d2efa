#include "mvote/metric.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

#include "mvote/errors.hpp"
#include "text_lines.hpp"

namespace mvote {

namespace {

std::string pt(std::size_t x) { return std::to_string(x); }

void check_matrix(const Matrix& d) {
  const std::size_t N = d.size();
  for (std::size_t x = 0; x < N; ++x) {
    if (d[x].size() != N) {
      throw MetricViolation(MetricViolation::Kind::not_square, {x, x, x},
                            "row " + pt(x) + " has " + pt(d[x].size()) + " entries, expected " +
                                pt(N));
    }
  }
  for (std::size_t x = 0; x < N; ++x) {
    if (d[x][x] != 0) {
      throw MetricViolation(MetricViolation::Kind::diagonal, {x, x, x},
                            "d(" + pt(x) + "," + pt(x) + ") is not zero");
    }
    for (std::size_t y = 0; y < N; ++y) {
      if (d[x][y] < 0) {
        throw MetricViolation(MetricViolation::Kind::negative, {x, y, y},
                              "d(" + pt(x) + "," + pt(y) + ") is negative");
      }
      if (d[x][y] != d[y][x]) {
        throw MetricViolation(MetricViolation::Kind::asymmetric, {x, y, y},
                              "d(" + pt(x) + "," + pt(y) + ") != d(" + pt(y) + "," + pt(x) + ")");
      }
    }
  }
  for (std::size_t x = 0; x < N; ++x) {
    for (std::size_t y = 0; y < N; ++y) {
      for (std::size_t z = 0; z < N; ++z) {
        if (d[x][z] > d[x][y] + d[y][z]) {
          throw MetricViolation(MetricViolation::Kind::triangle, {x, y, z},
                                "triangle inequality fails for d(" + pt(x) + "," + pt(z) +
                                    ") via " + pt(y));
        }
      }
    }
  }
}

}  // namespace

MetricSpace::MetricSpace(std::size_t n, std::size_t m, Matrix d) : n_(n), m_(m), d_(std::move(d)) {
  if (d_.size() != n_ + m_) {
    throw MetricViolation(MetricViolation::Kind::not_square, {0, 0, 0},
                          "matrix has " + pt(d_.size()) + " rows, expected n+m = " + pt(n_ + m_));
  }
  check_matrix(d_);
}

const Rational& MetricSpace::voter_candidate(VoterId i, CandidateId c) const {
  if (i >= n_ || c >= m_) throw std::out_of_range("voter/candidate index");
  return d_[i][n_ + c];
}

const Rational& MetricSpace::candidate_candidate(CandidateId a, CandidateId b) const {
  if (a >= m_ || b >= m_) throw std::out_of_range("candidate index");
  return d_[n_ + a][n_ + b];
}

MetricSpace validate_metric(const Matrix& d, std::size_t n, std::size_t m) {
  return MetricSpace(n, m, d);
}

MetricSpace from_weighted_graph(const WeightedGraphSpec& g) {
  const std::size_t P = g.points.size();
  if (P == 0) throw std::invalid_argument("graph has no points");
  std::vector<std::vector<std::optional<Rational>>> dist(P, std::vector<std::optional<Rational>>(P));
  for (std::size_t x = 0; x < P; ++x) dist[x][x] = Rational(0);
  for (const auto& e : g.edges) {
    if (e.from >= P || e.to >= P) throw std::invalid_argument("edge endpoint out of range");
    if (e.weight <= 0) throw std::invalid_argument("edge weights must be positive");
    if (e.from == e.to) continue;
    auto& cur = dist[e.from][e.to];
    if (!cur || e.weight < *cur) {
      cur = e.weight;
      dist[e.to][e.from] = e.weight;
    }
  }
  for (std::size_t k = 0; k < P; ++k) {
    for (std::size_t x = 0; x < P; ++x) {
      if (!dist[x][k]) continue;
      for (std::size_t y = 0; y < P; ++y) {
        if (!dist[k][y]) continue;
        Rational via = *dist[x][k] + *dist[k][y];
        if (!dist[x][y] || via < *dist[x][y]) dist[x][y] = via;
      }
    }
  }
  for (std::size_t x = 0; x < P; ++x) {
    for (std::size_t y = 0; y < P; ++y) {
      if (!dist[x][y]) throw std::invalid_argument("graph is disconnected");
    }
  }

  const std::size_t n = g.num_voters;
  const std::size_t m = g.num_candidates;
  std::vector<std::optional<std::size_t>> home(n + m);
  for (std::size_t x = 0; x < P; ++x) {
    auto place = [&](std::size_t entity, const std::string& label) {
      if (entity >= n + m) throw std::invalid_argument(label + " index out of range");
      if (home[entity]) throw std::invalid_argument(label + " placed on two points");
      home[entity] = x;
    };
    for (VoterId i : g.points[x].voters) place(i, "voter " + pt(i));
    for (CandidateId c : g.points[x].candidates) {
      if (c >= m) throw std::invalid_argument("candidate index out of range");
      place(n + c, "candidate " + pt(c));
    }
  }
  for (std::size_t k = 0; k < n + m; ++k) {
    if (!home[k]) throw std::invalid_argument("entity " + pt(k) + " has no point");
  }
  Matrix d(n + m, std::vector<Rational>(n + m));
  for (std::size_t x = 0; x < n + m; ++x) {
    for (std::size_t y = 0; y < n + m; ++y) d[x][y] = *dist[*home[x]][*home[y]];
  }
  return MetricSpace(n, m, std::move(d));
}

void check_dimensions(const MetricSpace& d, const Election& e) {
  if (d.num_voters() != e.num_voters() || d.num_candidates() != e.num_candidates()) {
    throw std::invalid_argument("metric and election dimensions differ");
  }
}

bool consistent_with(const MetricSpace& d, const Election& e) {
  check_dimensions(d, e);
  for (VoterId i = 0; i < e.num_voters(); ++i) {
    const Ranking& r = e.ranking(i);
    for (std::size_t k = 0; k + 1 < r.size(); ++k) {
      if (d.voter_candidate(i, r[k]) > d.voter_candidate(i, r[k + 1])) return false;
    }
  }
  return true;
}

Election induced_profile(const MetricSpace& d) {
  std::vector<Ranking> rankings;
  for (VoterId i = 0; i < d.num_voters(); ++i) {
    Ranking r(d.num_candidates());
    std::iota(r.begin(), r.end(), CandidateId{0});
    std::stable_sort(r.begin(), r.end(), [&](CandidateId x, CandidateId y) {
      return d.voter_candidate(i, x) < d.voter_candidate(i, y);
    });
    rankings.push_back(std::move(r));
  }
  return Election(d.num_candidates(), std::move(rankings));
}

bool is_alpha_decisive(const MetricSpace& d, const Election& e, const Rational& alpha) {
  if (!consistent_with(d, e)) throw std::invalid_argument("metric is not consistent with the profile");
  for (VoterId i = 0; i < e.num_voters(); ++i) {
    const Rational& top = d.voter_candidate(i, e.top_choice(i));
    for (CandidateId c = 0; c < e.num_candidates(); ++c) {
      if (c != e.top_choice(i) && top > alpha * d.voter_candidate(i, c)) return false;
    }
  }
  return true;
}

Rational minimal_decisiveness(const MetricSpace& d, const Election& e) {
  check_dimensions(d, e);
  Rational worst = 0;
  for (VoterId i = 0; i < e.num_voters(); ++i) {
    const Rational& top = d.voter_candidate(i, e.top_choice(i));
    for (CandidateId c = 0; c < e.num_candidates(); ++c) {
      const Rational& other = d.voter_candidate(i, c);
      if (c == e.top_choice(i) || other == 0) continue;
      Rational ratio = top / other;
      if (ratio > worst) worst = ratio;
    }
  }
  return worst;
}

Rational social_cost(const MetricSpace& d, CandidateId c) {
  Rational total = 0;
  for (VoterId i = 0; i < d.num_voters(); ++i) total += d.voter_candidate(i, c);
  return total;
}

Rational expected_social_cost(const MetricSpace& d, const Lottery& L) {
  if (L.num_candidates() != d.num_candidates()) {
    throw std::invalid_argument("lottery and metric dimensions differ");
  }
  Rational total = 0;
  for (CandidateId c : L.support()) total += L.probability(c) * social_cost(d, c);
  return total;
}

Rational phi_k(const MetricSpace& d, CandidateId c, std::size_t k) {
  if (k < 1 || k > d.num_voters()) throw std::out_of_range("k must lie in [1, n]");
  std::vector<Rational> costs;
  for (VoterId i = 0; i < d.num_voters(); ++i) costs.push_back(d.voter_candidate(i, c));
  std::sort(costs.begin(), costs.end(), [](const Rational& x, const Rational& y) { return x > y; });
  Rational total = 0;
  for (std::size_t t = 0; t < k; ++t) total += costs[t];
  return total;
}

CandidateId optimal_candidate(const MetricSpace& d) {
  CandidateId best = 0;
  Rational best_cost = social_cost(d, 0);
  for (CandidateId c = 1; c < d.num_candidates(); ++c) {
    Rational cost = social_cost(d, c);
    if (cost < best_cost) {
      best = c;
      best_cost = cost;
    }
  }
  return best;
}

MetricSpace parse_metric(std::string_view text) {
  const auto lines = detail::token_lines(text);
  if (lines.empty() || lines[0].tokens.size() != 3 || lines[0].tokens[0] != "metric") {
    throw ParseError("metric file must start with 'metric <n> <m>'");
  }
  const std::size_t n = detail::parse_count(lines[0].tokens[1], lines[0].line_no);
  const std::size_t m = detail::parse_count(lines[0].tokens[2], lines[0].line_no);
  if (lines.size() - 1 != n + m) {
    throw ParseError("expected " + pt(n + m) + " matrix rows, found " + pt(lines.size() - 1));
  }
  Matrix d;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    std::vector<Rational> row;
    for (const auto& tok : lines[l].tokens) {
      try {
        row.push_back(parse_rational(tok));
      } catch (const std::invalid_argument& ex) {
        detail::fail_at(lines[l].line_no, ex.what());
      }
    }
    d.push_back(std::move(row));
  }
  return MetricSpace(n, m, std::move(d));
}

std::string serialize_metric(const MetricSpace& d) {
  std::ostringstream out;
  out << "metric " << d.num_voters() << ' ' << d.num_candidates() << '\n';
  for (const auto& row : d.matrix()) {
    for (std::size_t y = 0; y < row.size(); ++y) out << (y ? " " : "") << to_string(row[y]);
    out << '\n';
  }
  return out.str();
}

WeightedGraphSpec parse_graph(std::string_view text) {
  const auto lines = detail::token_lines(text);
  if (lines.empty() || lines[0].tokens.size() != 3 || lines[0].tokens[0] != "graph") {
    throw ParseError("graph file must start with 'graph <P> <E>'");
  }
  const std::size_t P = detail::parse_count(lines[0].tokens[1], lines[0].line_no);
  const std::size_t E = detail::parse_count(lines[0].tokens[2], lines[0].line_no);
  WeightedGraphSpec g;
  std::map<std::string, std::size_t> index;
  std::size_t max_voter = 0;
  std::size_t max_cand = 0;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const auto& tl = lines[l];
    const auto& t = tl.tokens;
    if (t[0] == "point") {
      if (t.size() < 2 || t.size() % 2 != 0) detail::fail_at(tl.line_no, "malformed point line");
      if (index.count(t[1])) detail::fail_at(tl.line_no, "duplicate point id '" + t[1] + "'");
      WeightedGraphSpec::Point p{t[1], {}, {}};
      for (std::size_t k = 2; k < t.size(); k += 2) {
        const std::size_t x = detail::parse_count(t[k + 1], tl.line_no);
        if (t[k] == "voter") {
          p.voters.push_back(x);
          max_voter = std::max(max_voter, x + 1);
        } else if (t[k] == "cand") {
          p.candidates.push_back(x);
          max_cand = std::max(max_cand, x + 1);
        } else {
          detail::fail_at(tl.line_no, "expected 'voter' or 'cand', got '" + t[k] + "'");
        }
      }
      index[t[1]] = g.points.size();
      g.points.push_back(std::move(p));
    } else if (t[0] == "edge") {
      if (t.size() != 4) detail::fail_at(tl.line_no, "expected 'edge <id1> <id2> <weight>'");
      auto a = index.find(t[1]);
      auto b = index.find(t[2]);
      if (a == index.end() || b == index.end()) {
        detail::fail_at(tl.line_no, "edge refers to an undeclared point");
      }
      Rational w;
      try {
        w = parse_rational(t[3]);
      } catch (const std::invalid_argument& ex) {
        detail::fail_at(tl.line_no, ex.what());
      }
      g.edges.push_back({a->second, b->second, w});
    } else {
      detail::fail_at(tl.line_no, "expected 'point' or 'edge'");
    }
  }
  if (g.points.size() != P || g.edges.size() != E) {
    throw ParseError("header declares " + pt(P) + " points and " + pt(E) + " edges, found " +
                     pt(g.points.size()) + " and " + pt(g.edges.size()));
  }
  g.num_voters = max_voter;
  g.num_candidates = max_cand;
  return g;
}

std::string serialize_graph(const WeightedGraphSpec& g) {
  std::ostringstream out;
  out << "graph " << g.points.size() << ' ' << g.edges.size() << '\n';
  for (const auto& p : g.points) {
    out << "point " << p.id;
    for (VoterId i : p.voters) out << " voter " << i;
    for (CandidateId c : p.candidates) out << " cand " << c;
    out << '\n';
  }
  for (const auto& e : g.edges) {
    out << "edge " << g.points[e.from].id << ' ' << g.points[e.to].id << ' ' << to_string(e.weight)
        << '\n';
  }
  return out.str();
}

}  // namespace mvote
