#include "mvote/sampling.hpp"

#include <limits>
#include <stdexcept>

namespace mvote {

namespace {

constexpr std::uint64_t kGrid = 1000000;

}  // namespace

std::uint64_t uniform_below_inclusive(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == std::numeric_limits<std::uint64_t>::max()) return rng();
  const std::uint64_t range = bound + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  for (;;) {
    const std::uint64_t x = rng();
    if (x < limit) return x % range;
  }
}

PointInstance sample_point_instance(std::size_t n, std::size_t m, std::size_t dim,
                                    std::mt19937_64& rng, const std::optional<Rational>& alpha_cap,
                                    std::size_t max_attempts) {
  if (n == 0 || m == 0 || dim == 0) throw std::invalid_argument("n, m and dim must be positive");
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<std::vector<Rational>> pts(n + m, std::vector<Rational>(dim));
    for (auto& p : pts) {
      for (auto& x : p) {
        x = Rational(static_cast<unsigned long>(uniform_below_inclusive(rng, kGrid)),
                     static_cast<unsigned long>(kGrid));
        x.canonicalize();
      }
    }
    Matrix d(n + m, std::vector<Rational>(n + m, Rational(0)));
    for (std::size_t x = 0; x < n + m; ++x) {
      for (std::size_t y = x + 1; y < n + m; ++y) {
        Rational total = 0;
        for (std::size_t t = 0; t < dim; ++t) total += abs(pts[x][t] - pts[y][t]);
        d[x][y] = d[y][x] = total;
      }
    }
    MetricSpace metric(n, m, std::move(d));
    Election e = induced_profile(metric);
    Rational alpha = minimal_decisiveness(metric, e);
    if (alpha_cap && alpha > *alpha_cap) continue;
    return {std::move(pts), std::move(metric), std::move(e), std::move(alpha), attempt};
  }
  throw std::runtime_error("no sample met the alpha cap within the attempt limit");
}

}  // namespace mvote
