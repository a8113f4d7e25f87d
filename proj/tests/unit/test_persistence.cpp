#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "oracles.hpp"
#include "tdakit/persistence.hpp"
#include "tdakit/synthetic.hpp"
#include "tdakit/vr_filtration.hpp"

using namespace tdakit;

namespace {

Barcode barcode(const std::vector<std::vector<double>>& pts, int max_dim = 2,
                PersistenceOptions opts = {}) {
  return barcode_of(PointCloud("p", pts), {max_dim}, opts);
}

std::multiset<std::tuple<int, double, double>> triples(const Barcode& b) {
  std::multiset<std::tuple<int, double, double>> out;
  for (const auto& iv : b.intervals) out.emplace(iv.dimension, iv.birth, iv.death);
  return out;
}

}  // namespace

TEST_CASE("two points") {
  const auto b = barcode({{0.0}, {2.5}}, 1);
  REQUIRE(b.intervals.size() == 2);
  CHECK(b.intervals[0].dimension == 0);
  CHECK(b.intervals[0].death == 2.5);
  CHECK(b.intervals[1].essential());
  CHECK(b.intervals[1].birth == 0.0);
}

TEST_CASE("unit square has the H1 interval [1, sqrt 2)") {
  const auto b = barcode({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, 2);
  const auto h1 = b.in_dimension(1);
  REQUIRE(h1.size() == 1);
  CHECK(h1[0].birth == 1.0);
  CHECK(h1[0].death == std::sqrt(2.0));
  const auto betti = betti_numbers_at(b, 0.55);
  CHECK(betti[0] == 1);
  CHECK(betti[1] == 1);
}

TEST_CASE("interval-derived Betti numbers match the boundary-rank oracle") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    const std::size_t dim = 2 + rng() % 2;
    const int max_dim = 1 + static_cast<int>(rng() % 3);
    const auto pts = trial % 3 == 0 ? oracle::lattice_points(rng, n, dim)
                                    : oracle::random_points(rng, n, dim);
    const auto ref = oracle::distances(pts);
    const auto all = oracle::all_simplices(ref, max_dim);
    const auto b = barcode(pts, max_dim);
    std::set<double> scales{0.0};
    for (const auto& s : all) scales.insert(s.diameter);
    for (double t : scales) {
      const auto expect = oracle::betti_by_rank(all, t, max_dim);
      const auto got = betti_numbers_at(b, t / 2);
      for (int k = 0; k < max_dim; ++k) CHECK(got[k] == expect[k]);
    }
  }
}

TEST_CASE("pairing correctness") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 30; ++trial) {
    const auto pts = oracle::random_points(rng, 12, 3);
    const auto f = build_filtration(pairwise_distances(PointCloud("p", pts)), {3});
    const auto b = compute_persistence(f);
    std::set<std::size_t> used;
    for (const auto& iv : b.intervals) {
      REQUIRE(iv.birth_simplex);
      CHECK(f.dimension(*iv.birth_simplex) == iv.dimension);
      CHECK(f.diameter(*iv.birth_simplex) == iv.birth);
      CHECK(used.insert(*iv.birth_simplex).second);
      CHECK(iv.birth < iv.death);
      if (iv.essential()) {
        CHECK_FALSE(iv.death_simplex);
        continue;
      }
      REQUIRE(iv.death_simplex);
      CHECK(f.dimension(*iv.death_simplex) == iv.dimension + 1);
      CHECK(f.diameter(*iv.death_simplex) == iv.death);
      CHECK(used.insert(*iv.death_simplex).second);
    }
  }
}

TEST_CASE("one essential class, in dimension 0, without a cap") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    const auto b = barcode(oracle::random_points(rng, 15, 2), 2);
    std::size_t essentials = 0;
    for (const auto& iv : b.intervals) {
      CHECK(iv.dimension < 2);
      if (iv.essential()) {
        ++essentials;
        CHECK(iv.dimension == 0);
      }
    }
    CHECK(essentials == 1);
  }
}

TEST_CASE("top-dimension essentials are opt-in and flagged") {
  // square: the loop is born at 1 and is essential when triangles are absent
  const std::vector<std::vector<double>> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  PersistenceOptions opts;
  opts.report_top_dimension = true;
  const auto b = barcode(sq, 1, opts);
  const auto h1 = b.in_dimension(1);
  REQUIRE(h1.size() >= 1);
  for (const auto& iv : h1) {
    CHECK(iv.essential());
    CHECK(iv.unverified);
  }
  CHECK(barcode(sq, 1).in_dimension(1).empty());
}

TEST_CASE("a cap leaves several components essential") {
  const std::vector<std::vector<double>> pts{{0.0}, {0.1}, {5.0}, {5.1}};
  const auto b = barcode_of(PointCloud("p", pts), {1, 1.0});
  std::size_t essentials = 0;
  for (const auto& iv : b.intervals) essentials += iv.essential();
  CHECK(essentials == 2);
  CHECK(betti_numbers_at(b, 0.3)[0] == 2);
}

TEST_CASE("scale and permutation invariance") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 15; ++trial) {
    auto pts = oracle::random_points(rng, 11, 2);
    const auto base = barcode(pts, 2);

    auto scaled = pts;
    for (auto& p : scaled)
      for (auto& c : p) c *= 4.0;  // power of two keeps arithmetic exact
    const auto sb = barcode(scaled, 2);
    REQUIRE(sb.intervals.size() == base.intervals.size());
    auto t1 = triples(base);
    auto t2 = triples(sb);
    auto it = t2.begin();
    for (const auto& [d, s, e] : t1) {
      CHECK(std::get<0>(*it) == d);
      CHECK(std::get<1>(*it) == doctest::Approx(4.0 * s).epsilon(1e-12));
      if (std::isinf(e))
        CHECK(std::isinf(std::get<2>(*it)));
      else
        CHECK(std::get<2>(*it) == doctest::Approx(4.0 * e).epsilon(1e-12));
      ++it;
    }

    std::shuffle(pts.begin(), pts.end(), rng);
    CHECK(triples(barcode(pts, 2)) == t1);
  }
}

TEST_CASE("barcode beyond the enclosing diameter has beta0 = 1") {
  std::mt19937_64 rng(35);
  const auto b = barcode(oracle::random_points(rng, 20, 3), 2);
  const auto betti = betti_numbers_at(b, b.enclosing_diameter);
  CHECK(betti[0] == 1);
  for (std::size_t k = 1; k < betti.size(); ++k) CHECK(betti[k] == 0);
}

TEST_CASE("two far-apart clusters") {
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < 5; ++i) pts.push_back({0.1 * i, 0.0});
  for (int i = 0; i < 5; ++i) pts.push_back({100.0 + 0.1 * i, 0.0});
  CHECK(betti_numbers_at(barcode(pts, 1), 1.0)[0] == 2);
}

TEST_CASE("evenly spaced circle has one dominant H1 bar") {
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < 60; ++i) {
    const double a = 2 * M_PI * i / 60;
    pts.push_back({std::cos(a), std::sin(a)});
  }
  const auto p = oracle::persistences(barcode(pts, 2), 1);
  REQUIRE(!p.empty());
  CHECK(oracle::dominant_count(p, 5.0) == 1);
}

TEST_CASE("equal inputs give identical barcodes") {
  const auto c = sample({ManifoldKind::FigureEight, 80, 0.02, 3});
  const auto a = barcode_of(c);
  const auto b = barcode_of(c);
  REQUIRE(a.intervals.size() == b.intervals.size());
  for (std::size_t i = 0; i < a.intervals.size(); ++i) {
    CHECK(a.intervals[i].birth == b.intervals[i].birth);
    CHECK(a.intervals[i].death == b.intervals[i].death);
  }
}
