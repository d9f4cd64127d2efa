#include "mvote/weights.hpp"

#include <sstream>
#include <stdexcept>

#include "mvote/errors.hpp"
#include "text_lines.hpp"

namespace mvote {

namespace {

void check_distribution(const std::vector<Rational>& w, const char* what) {
  if (w.empty()) throw std::invalid_argument(std::string(what) + " is empty");
  Rational total = 0;
  for (const Rational& x : w) {
    if (x < 0) throw std::invalid_argument(std::string(what) + " has a negative entry");
    total += x;
  }
  if (total != 1) {
    throw std::invalid_argument(std::string(what) + " sums to " + to_string(total) + ", not 1");
  }
}

}  // namespace

WeightVector::WeightVector(std::vector<Rational> weights) : weights_(std::move(weights)) {
  check_distribution(weights_, "weight vector");
}

WeightVector WeightVector::uniform(std::size_t size) {
  if (size == 0) throw std::invalid_argument("uniform weights over an empty set");
  Rational w(1, static_cast<unsigned long>(size));
  w.canonicalize();
  return WeightVector(std::vector<Rational>(size, w));
}

WeightVector WeightVector::plurality(const Election& e) {
  return from_counts(plurality_scores(e));
}

WeightVector WeightVector::from_counts(const std::vector<std::size_t>& counts) {
  std::size_t total = 0;
  for (std::size_t c : counts) total += c;
  if (total == 0) throw std::invalid_argument("counts sum to zero");
  std::vector<Rational> w;
  w.reserve(counts.size());
  for (std::size_t c : counts) {
    Rational x(static_cast<unsigned long>(c), static_cast<unsigned long>(total));
    x.canonicalize();
    w.push_back(x);
  }
  return WeightVector(std::move(w));
}

WeightVector parse_weights(std::string_view text) {
  const auto lines = detail::token_lines(text);
  if (lines.empty() || lines[0].tokens.size() != 2 || lines[0].tokens[0] != "weights") {
    throw ParseError("weight file must start with 'weights <k>'");
  }
  const std::size_t k = detail::parse_count(lines[0].tokens[1], lines[0].line_no);
  std::vector<Rational> w;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    for (const auto& tok : lines[l].tokens) {
      try {
        w.push_back(parse_rational(tok));
      } catch (const std::invalid_argument& ex) {
        detail::fail_at(lines[l].line_no, ex.what());
      }
    }
  }
  if (w.size() != k) {
    throw ParseError("weight file declares " + std::to_string(k) + " entries but has " +
                     std::to_string(w.size()));
  }
  try {
    return WeightVector(std::move(w));
  } catch (const std::invalid_argument& ex) {
    throw ParseError(ex.what());
  }
}

std::string serialize_weights(const WeightVector& w) {
  std::ostringstream out;
  out << "weights " << w.size() << '\n';
  for (std::size_t k = 0; k < w.size(); ++k) out << (k ? " " : "") << to_string(w[k]);
  out << '\n';
  return out.str();
}

Lottery::Lottery(std::vector<Rational> probabilities) : p_(std::move(probabilities)) {
  check_distribution(p_, "lottery");
}

Lottery Lottery::degenerate(std::size_t num_candidates, CandidateId c) {
  if (c >= num_candidates) throw std::out_of_range("candidate index " + std::to_string(c));
  std::vector<Rational> p(num_candidates, Rational(0));
  p[c] = 1;
  return Lottery(std::move(p));
}

std::vector<CandidateId> Lottery::support() const {
  std::vector<CandidateId> s;
  for (CandidateId c = 0; c < p_.size(); ++c) {
    if (p_[c] > 0) s.push_back(c);
  }
  return s;
}

}  // namespace mvote
