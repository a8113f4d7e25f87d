#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "tdakit/errors.hpp"
#include "tdakit/vr_filtration.hpp"

using namespace tdakit;

namespace {

DistanceMatrix matrix_of(const oracle::Matrix& m) {
  DistanceMatrix d(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j) d.set(i, j, m[i][j]);
  return d;
}

DistanceMatrix equilateral() {
  return matrix_of({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
}

std::set<std::vector<Vertex>> vertex_sets(const std::vector<FilteredSimplex>& s) {
  std::set<std::vector<Vertex>> out;
  for (const auto& x : s) out.insert(x.vertices);
  return out;
}

}  // namespace

TEST_CASE("equilateral triangle") {
  const auto f = build_filtration(equilateral(), {2, std::nullopt});
  REQUIRE(f.size() == 7);
  CHECK(f.count_in_dimension(0) == 3);
  CHECK(f.count_in_dimension(1) == 3);
  CHECK(f.count_in_dimension(2) == 1);
  for (std::size_t i = 0; i < 3; ++i) CHECK(f.diameter(i) == 0.0);
  for (std::size_t i = 3; i < 7; ++i) CHECK(f.diameter(i) == 1.0);
  CHECK(f.simplex(6) == FilteredSimplex{{0, 1, 2}, 2, 1.0});
}

TEST_CASE("cap excludes a long edge") {
  const auto f = build_filtration(matrix_of({{0, 5}, {5, 0}}), {1, 4.0});
  CHECK(f.size() == 2);
  CHECK(f.count_in_dimension(1) == 0);
  CHECK(f.truncated());
}

TEST_CASE("complex at scale uses the radius convention") {
  const auto f = build_filtration(equilateral(), {2, std::nullopt});
  CHECK(complex_at_scale(f, 0.4).size() == 3);
  CHECK(complex_at_scale(f, 0.5).size() == 7);
  CHECK_THROWS_AS(complex_at_scale(f, -1.0), std::invalid_argument);
}

TEST_CASE("matches subset enumeration on random clouds") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    const int max_dim = static_cast<int>(rng() % 4);
    const auto pts = trial % 2 ? oracle::random_points(rng, n, 2)
                               : oracle::lattice_points(rng, n, 2);
    const auto ref = oracle::distances(pts);
    const auto expect = oracle::all_simplices(ref, max_dim);
    const auto f = build_filtration(pairwise_distances(PointCloud("p", pts)), {max_dim});
    REQUIRE(f.size() == expect.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
      const auto s = f.simplex(i);
      CHECK(s.vertices == expect[i].vertices);
      CHECK(s.dimension + 1 == static_cast<int>(s.vertices.size()));
      CHECK(std::abs(s.diameter - expect[i].diameter) <= 1e-12);
    }
  }
}

TEST_CASE("6 random points in the plane: identical to brute force") {
  std::mt19937_64 rng(6);
  const auto pts = oracle::random_points(rng, 6, 2);
  const auto expect = oracle::all_simplices(oracle::distances(pts), 2);
  const auto f = build_filtration(pairwise_distances(PointCloud("p", pts)), {2});
  REQUIRE(f.size() == 6 + 15 + 20);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(f.vertices(i) == expect[i].vertices);
}

TEST_CASE("face closure, monotonicity and edge diameters at every scale") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 15; ++trial) {
    const auto pts = oracle::random_points(rng, 8, 3);
    const auto dist = pairwise_distances(PointCloud("p", pts));
    const auto f = build_filtration(dist, {3});
    std::set<std::vector<Vertex>> previous;
    for (double eps = 0.0; eps <= 2.0; eps += 0.05) {
      const auto cx = complex_at_scale(f, eps);
      const auto sets = vertex_sets(cx);
      for (const auto& s : cx) {
        CHECK(s.diameter <= 2 * eps);
        double edge_max = 0.0;
        for (auto a : s.vertices)
          for (auto b : s.vertices) edge_max = std::max(edge_max, dist(a, b));
        CHECK(s.diameter == edge_max);
        if (s.vertices.size() < 2) continue;
        for (std::size_t drop = 0; drop < s.vertices.size(); ++drop) {
          auto face = s.vertices;
          face.erase(face.begin() + static_cast<long>(drop));
          CHECK(sets.count(face) == 1);
        }
      }
      for (const auto& s : previous) CHECK(sets.count(s) == 1);
      previous = sets;
    }
  }
}

TEST_CASE("boundary positions precede the simplex and agree with position_of") {
  std::mt19937_64 rng(23);
  const auto pts = oracle::lattice_points(rng, 9, 3);
  const auto f = build_filtration(pairwise_distances(PointCloud("p", pts)), {3});
  std::vector<std::uint32_t> faces;
  for (std::size_t pos = 0; pos < f.size(); ++pos) {
    const auto v = f.vertices(pos);
    CHECK(f.position_of(v) == pos);
    f.boundary(pos, faces);
    CHECK(faces.size() == (f.dimension(pos) == 0 ? 0u : v.size()));
    for (auto q : faces) {
      CHECK(q < pos);
      CHECK(f.diameter(q) <= f.diameter(pos));
      CHECK(f.dimension(q) == f.dimension(pos) - 1);
    }
    CHECK(std::is_sorted(faces.begin(), faces.end()));
  }
}

TEST_CASE("order is deterministic across runs") {
  std::mt19937_64 rng(24);
  const auto dist = pairwise_distances(PointCloud("p", oracle::lattice_points(rng, 10, 2)));
  std::ostringstream a, b;
  write_filtration(a, build_filtration(dist, {2}));
  write_filtration(b, build_filtration(dist, {2}));
  CHECK(a.str() == b.str());
  CHECK(a.str().substr(0, 8) == "0 0 0\n0 ");
}

TEST_CASE("capacity budget raises instead of truncating") {
  std::mt19937_64 rng(25);
  const auto dist = pairwise_distances(PointCloud("p", oracle::random_points(rng, 30, 2)));
  FiltrationParams params{3, std::nullopt, 1000};
  CHECK_THROWS_AS(build_filtration(dist, params), CapacityError);
  params.diameter_cap = 0.01;
  CHECK_NOTHROW(build_filtration(dist, params));
}

TEST_CASE("prefix_size counts simplices up to a diameter") {
  const auto f = build_filtration(equilateral(), {2});
  CHECK(f.prefix_size(0.0) == 3);
  CHECK(f.prefix_size(0.99) == 3);
  CHECK(f.prefix_size(1.0) == 7);
}
