#include "majdyn/generators.hpp"

#include <algorithm>
#include <stdexcept>

#include "majdyn/rng.hpp"

namespace majdyn {

std::vector<double> random_integer_vector(std::mt19937_64& rng, int n,
                                          std::int64_t lo, std::int64_t hi) {
  if (n < 1 || hi < lo) {
    throw std::invalid_argument("random_integer_vector: bad arguments");
  }
  std::vector<double> v(n);
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  for (double& x : v) {
    x = static_cast<double>(lo + static_cast<std::int64_t>(
                                     uniform_index(rng, span)));
  }
  return v;
}

std::vector<double> random_integer_composition(std::mt19937_64& rng, int n,
                                               std::int64_t total) {
  if (n < 1 || total < 0) {
    throw std::invalid_argument("random_integer_composition: bad arguments");
  }
  // Stars and bars: n-1 sorted cut points in [0, total].
  std::vector<std::int64_t> cuts(n + 1);
  cuts[0] = 0;
  cuts[n] = total;
  for (int i = 1; i < n; ++i) {
    cuts[i] = static_cast<std::int64_t>(
        uniform_index(rng, static_cast<std::uint64_t>(total) + 1));
  }
  std::sort(cuts.begin() + 1, cuts.end() - 1);
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) {
    v[i] = static_cast<double>(cuts[i + 1] - cuts[i]);
  }
  return v;
}

std::vector<double> robin_hood_transfer(std::mt19937_64& rng,
                                        std::vector<double> v) {
  const int n = static_cast<int>(v.size());
  if (n < 2) return v;
  // Pick a rich/poor pair; give up quietly if the vector is constant.
  for (int attempt = 0; attempt < 64; ++attempt) {
    const int i = static_cast<int>(uniform_index(rng, n));
    const int j = static_cast<int>(uniform_index(rng, n));
    const auto gap = static_cast<std::int64_t>(v[i] - v[j]);
    if (gap <= 0) continue;
    // Integer amount in [1, gap/2] keeps the donor at or above the
    // receiver, an exact T-transform.
    const std::int64_t half = gap / 2;
    if (half < 1) continue;
    const std::int64_t amount =
        1 + static_cast<std::int64_t>(
                uniform_index(rng, static_cast<std::uint64_t>(half)));
    v[i] -= static_cast<double>(amount);
    v[j] += static_cast<double>(amount);
    return v;
  }
  return v;
}

std::vector<double> robin_hood_chain(std::mt19937_64& rng,
                                     std::vector<double> v, int n_transfers) {
  for (int k = 0; k < n_transfers; ++k) v = robin_hood_transfer(rng, std::move(v));
  return v;
}

Density random_step_density(std::mt19937_64& rng, Grid grid, std::int64_t lo,
                            std::int64_t hi) {
  if (lo < 0) {
    throw std::invalid_argument("random_step_density: values must be >= 0");
  }
  return Density(grid, random_integer_vector(rng, grid.n_cells(), lo, hi));
}

Density random_probability_density(std::mt19937_64& rng, Grid grid) {
  const int n = grid.n_cells();
  const std::int64_t total = static_cast<std::int64_t>(n) * 4096;
  auto counts = random_integer_composition(rng, n, total);
  // value = count * n / total; the partial sums are exact integers scaled
  // by a common factor, and the mass lands within a few ulps of 1.
  const double scale = static_cast<double>(n) / static_cast<double>(total);
  for (double& c : counts) c *= scale;
  return Density(grid, std::move(counts));
}

namespace {

void shuffle_values(std::mt19937_64& rng, std::vector<double>& v) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[uniform_index(rng, i)]);
  }
}

std::vector<double> jittered(std::mt19937_64& rng, std::vector<double> v,
                             std::int64_t amp) {
  for (double& x : v) {
    x += static_cast<double>(
        static_cast<std::int64_t>(uniform_index(rng, 2 * amp + 1)) - amp);
  }
  return v;
}

}  // namespace

DensityPair random_comparison_pair(std::mt19937_64& rng, Grid grid) {
  const int n = grid.n_cells();
  const auto family = uniform_index(rng, 10);
  if (family < 4) {
    // Comparable: f obtained from g by averaging transfers.
    Density g = random_step_density(rng, grid, 256, 4096);
    std::vector<double> fv(g.values().begin(), g.values().end());
    fv = robin_hood_chain(rng, std::move(fv), 3 * n);
    return {Density(grid, std::move(fv)), std::move(g)};
  }
  if (family < 7) {
    // Planted Lorenz crossing: f has the fatter top block (wins for small
    // k), g the fatter middle (wins near k = n/2); masses match exactly.
    // Block pattern (fractions of n): f = 1/8 @ 4000, 7/8 @ 1000;
    // g = 1/2 @ 2000, 1/2 @ 750 -- scaled so both totals are equal.
    std::vector<double> fv(n);
    std::vector<double> gv(n);
    const int n8 = n / 8;
    for (int i = 0; i < n; ++i) fv[i] = i < n8 ? 4000.0 : 1000.0;
    for (int i = 0; i < n; ++i) gv[i] = i < n / 2 ? 2000.0 : 750.0;
    // Equalize totals exactly with an integer correction on the low block.
    const auto sum = [](const std::vector<double>& v) {
      std::int64_t s = 0;
      for (double x : v) s += static_cast<std::int64_t>(x);
      return s;
    };
    std::int64_t gap = sum(fv) - sum(gv);
    for (int i = n - 1; gap != 0 && i >= 0; --i) {
      const std::int64_t d = std::clamp<std::int64_t>(gap, -500, 500);
      gv[i] += static_cast<double>(d);
      gap -= d;
    }
    fv = jittered(rng, std::move(fv), 8);
    gv = jittered(rng, std::move(gv), 8);
    // Re-balance the jitter drift (bounded by 8n) onto the low cells.
    std::int64_t drift = sum(fv) - sum(gv);
    for (int i = n - 1; drift != 0 && i >= 0; --i) {
      const std::int64_t d = std::clamp<std::int64_t>(drift, -64, 64);
      gv[i] += static_cast<double>(d);
      drift -= d;
    }
    shuffle_values(rng, fv);
    shuffle_values(rng, gv);
    return {Density(grid, std::move(fv)), Density(grid, std::move(gv))};
  }
  if (family < 9) {
    // Mass offset: shuffled copy with a constant bump, never comparable.
    Density f = random_step_density(rng, grid, 256, 4096);
    std::vector<double> gv(f.values().begin(), f.values().end());
    shuffle_values(rng, gv);
    for (double& x : gv) x += 64.0;
    return {std::move(f), Density(grid, std::move(gv))};
  }
  // Permutation: equivalent pair.
  Density f = random_step_density(rng, grid, 256, 4096);
  std::vector<double> gv(f.values().begin(), f.values().end());
  shuffle_values(rng, gv);
  return {std::move(f), Density(grid, std::move(gv))};
}

}  // namespace majdyn
