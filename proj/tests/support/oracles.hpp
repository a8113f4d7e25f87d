#pragma once

// Brute-force reference implementations used by the unit and acceptance
// tests. None of these call into the library's filtration, reduction or
// assignment code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "tdakit/metric_space.hpp"
#include "tdakit/persistence.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

inline Matrix distances(const std::vector<std::vector<double>>& pts) {
  const auto n = pts.size();
  Matrix d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < pts[i].size(); ++k) {
        const double t = pts[i][k] - pts[j][k];
        s += t * t;
      }
      d[i][j] = std::sqrt(s);
    }
  }
  return d;
}

struct Simplex {
  std::vector<std::uint32_t> vertices;
  double diameter = 0.0;
};

// Every vertex subset of size 1..max_dim+1, in (diameter, dimension,
// lexicographic) order.
inline std::vector<Simplex> all_simplices(const Matrix& d, int max_dim) {
  const auto n = static_cast<std::uint32_t>(d.size());
  std::vector<Simplex> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    Simplex s;
    for (std::uint32_t v = 0; v < n; ++v)
      if (mask >> v & 1) s.vertices.push_back(v);
    if (static_cast<int>(s.vertices.size()) > max_dim + 1) continue;
    for (auto a : s.vertices)
      for (auto b : s.vertices) s.diameter = std::max(s.diameter, d[a][b]);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const Simplex& a, const Simplex& b) {
    if (a.diameter != b.diameter) return a.diameter < b.diameter;
    if (a.vertices.size() != b.vertices.size())
      return a.vertices.size() < b.vertices.size();
    return a.vertices < b.vertices;
  });
  return out;
}

// Rank over F2 of a 0/1 matrix given as bit rows.
inline std::size_t f2_rank(std::vector<std::vector<std::uint8_t>> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && !rows[pivot][c]) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && rows[r][c]) {
        for (std::size_t k = c; k < cols; ++k) rows[r][k] ^= rows[rank][k];
      }
    }
    ++rank;
  }
  return rank;
}

// Betti numbers of the Rips complex {simplices with diameter <= t},
// dimensions 0..max_dim-1, from ranks of boundary maps.
inline std::vector<std::size_t> betti_by_rank(const std::vector<Simplex>& all,
                                              double t, int max_dim) {
  std::vector<std::vector<std::vector<std::uint32_t>>> by_dim(max_dim + 1);
  for (const auto& s : all)
    if (s.diameter <= t) by_dim[s.vertices.size() - 1].push_back(s.vertices);

  // rank of boundary map from dimension k to k-1
  auto boundary_rank = [&](int k) -> std::size_t {
    if (k <= 0 || k > max_dim) return 0;
    const auto& cols = by_dim[k];
    const auto& rows = by_dim[k - 1];
    if (cols.empty() || rows.empty()) return 0;
    std::vector<std::vector<std::uint8_t>> m(cols.size(),
                                             std::vector<std::uint8_t>(rows.size(), 0));
    for (std::size_t c = 0; c < cols.size(); ++c) {
      for (std::size_t drop = 0; drop < cols[c].size(); ++drop) {
        auto face = cols[c];
        face.erase(face.begin() + static_cast<long>(drop));
        const auto it = std::find(rows.begin(), rows.end(), face);
        m[c][static_cast<std::size_t>(it - rows.begin())] = 1;
      }
    }
    return f2_rank(std::move(m));
  };

  std::vector<std::size_t> betti;
  for (int k = 0; k < max_dim; ++k)
    betti.push_back(by_dim[k].size() - boundary_rank(k) - boundary_rank(k + 1));
  return betti;
}

struct Bar {
  double birth;
  double death;
};

// Minimum over all partial matchings between a and b (unmatched bars go to
// the diagonal at half their persistence) of the summed p-th powers.
inline double matching_cost_pow(const std::vector<Bar>& a,
                                const std::vector<Bar>& b, double p) {
  std::vector<bool> used(b.size(), false);
  double best = std::numeric_limits<double>::infinity();
  std::function<void(std::size_t, double)> go = [&](std::size_t i, double acc) {
    if (acc >= best) return;
    if (i == a.size()) {
      double total = acc;
      for (std::size_t j = 0; j < b.size(); ++j)
        if (!used[j]) total += std::pow((b[j].death - b[j].birth) / 2.0, p);
      best = std::min(best, total);
      return;
    }
    go(i + 1, acc + std::pow((a[i].death - a[i].birth) / 2.0, p));
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      used[j] = true;
      const double c = std::max(std::abs(a[i].birth - b[j].birth),
                                std::abs(a[i].death - b[j].death));
      go(i + 1, acc + std::pow(c, p));
      used[j] = false;
    }
  };
  go(0, 0.0);
  return best;
}

// Wasserstein distance under the truncate policy: essential deaths become
// the owning barcode's enclosing diameter and essentials only meet
// essentials (or the diagonal).
inline double wasserstein(const tdakit::Barcode& x, const tdakit::Barcode& y,
                          double p, const std::vector<int>& dims) {
  double total = 0.0;
  for (int k : dims) {
    std::vector<Bar> fa, fb, ea, eb;
    for (const auto& iv : x.intervals) {
      if (iv.dimension != k) continue;
      (iv.essential() ? ea : fa).push_back(
          {iv.birth, iv.essential() ? x.enclosing_diameter : iv.death});
    }
    for (const auto& iv : y.intervals) {
      if (iv.dimension != k) continue;
      (iv.essential() ? eb : fb).push_back(
          {iv.birth, iv.essential() ? y.enclosing_diameter : iv.death});
    }
    total += matching_cost_pow(fa, fb, p) + matching_cost_pow(ea, eb, p);
  }
  return std::pow(total, 1.0 / p);
}

// ---- hand-rolled generators ----

inline std::vector<std::vector<double>> random_points(std::mt19937_64& rng,
                                                      std::size_t n,
                                                      std::size_t dim) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
  for (auto& p : pts)
    for (auto& c : p) c = u(rng);
  return pts;
}

// Points on a small integer grid: many exact distance ties.
inline std::vector<std::vector<double>> lattice_points(std::mt19937_64& rng,
                                                       std::size_t n,
                                                       std::size_t dim) {
  std::uniform_int_distribution<int> u(0, 3);
  std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
  for (auto& p : pts)
    for (auto& c : p) c = u(rng);
  return pts;
}

// Barcode with up to max_bars finite bars per listed dimension and
// optionally one essential bar in dimension 0.
inline tdakit::Barcode random_barcode(std::mt19937_64& rng, int max_dimension,
                                      std::size_t max_bars, bool essential,
                                      bool integral = false) {
  std::uniform_int_distribution<std::size_t> count(0, max_bars);
  std::uniform_real_distribution<double> u(0.0, 4.0);
  std::uniform_int_distribution<int> ui(0, 6);
  auto draw = [&] { return integral ? static_cast<double>(ui(rng)) : u(rng); };
  tdakit::Barcode b;
  b.label = "random";
  b.max_dimension = max_dimension;
  b.n_points = 10;
  b.enclosing_diameter = 8.0;
  for (int k = 0; k < max_dimension; ++k) {
    const auto m = count(rng);
    for (std::size_t i = 0; i < m; ++i) {
      double s = draw(), t = draw();
      if (s == t) t += 1.0;
      tdakit::PersistenceInterval iv;
      iv.dimension = k;
      iv.birth = std::min(s, t);
      iv.death = std::max(s, t);
      b.intervals.push_back(iv);
    }
  }
  if (essential) {
    tdakit::PersistenceInterval iv;
    iv.dimension = 0;
    iv.birth = 0.0;
    b.intervals.push_back(iv);
  }
  return b;
}

// Persistences of dimension-k finite bars, longest first.
inline std::vector<double> persistences(const tdakit::Barcode& b, int k) {
  std::vector<double> out;
  for (const auto& iv : b.intervals)
    if (iv.dimension == k && !iv.essential()) out.push_back(iv.persistence());
  std::sort(out.rbegin(), out.rend());
  return out;
}

// Number of leading bars that each beat the next one by the factor, read as
// "the top m bars are dominant" when bar m exceeds factor x bar m+1 and the
// gap occurs at m. Returns the position of the first such gap (0 if none).
inline std::size_t dominant_count(const std::vector<double>& sorted_desc,
                                  double factor) {
  for (std::size_t m = 1; m <= sorted_desc.size(); ++m) {
    const double next = m < sorted_desc.size() ? sorted_desc[m] : 0.0;
    if (sorted_desc[m - 1] >= factor * next) return m;
  }
  return 0;
}

}  // namespace oracle
