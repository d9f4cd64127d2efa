#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "mvote/election.hpp"
#include "mvote/metric.hpp"
#include "mvote/rational.hpp"

namespace mvote {

/// Uniform integer in [0, bound] by rejection, so results depend only on the
/// engine's output sequence and not on the standard library's distributions.
std::uint64_t uniform_below_inclusive(std::mt19937_64& rng, std::uint64_t bound);

struct PointInstance {
  /// Coordinates of voters 0..n-1 then candidates, each a multiple of 1e-6.
  std::vector<std::vector<Rational>> points;
  MetricSpace metric;
  Election election;
  /// Smallest alpha for which the instance is alpha-decisive.
  Rational alpha;
  /// Draws rejected by the alpha cap before this one.
  std::size_t rejected = 0;
};

/// n + m points uniform in [0,1]^dim under the L1 distance (exact in
/// rationals), with the induced profile. With `alpha_cap`, redraws until the
/// instance is alpha_cap-decisive; throws std::runtime_error after
/// `max_attempts` failures.
PointInstance sample_point_instance(std::size_t n, std::size_t m, std::size_t dim,
                                    std::mt19937_64& rng,
                                    const std::optional<Rational>& alpha_cap = std::nullopt,
                                    std::size_t max_attempts = 10000);

}  // namespace mvote
