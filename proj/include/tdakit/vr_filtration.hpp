#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "tdakit/metric_space.hpp"

namespace tdakit {

using Vertex = std::uint32_t;

struct FilteredSimplex {
  std::vector<Vertex> vertices;  // strictly increasing
  int dimension = 0;
  double diameter = 0.0;

  friend bool operator==(const FilteredSimplex&,
                         const FilteredSimplex&) = default;
};

inline constexpr std::size_t kDefaultSimplexBudget = 50'000'000;

// Filtration values are simplex diameters (pairwise distances). A user-facing
// ball radius epsilon corresponds to diameter 2 * epsilon.
struct FiltrationParams {
  int max_dimension = 2;
  // Keep only simplices with diameter <= cap. Unset means no truncation.
  std::optional<double> diameter_cap;
  std::size_t simplex_budget = kDefaultSimplexBudget;
};

inline double radius_to_diameter(double epsilon) { return 2.0 * epsilon; }

// Pascal table with saturation at UINT64_MAX.
class BinomialTable {
 public:
  BinomialTable() = default;
  BinomialTable(std::size_t max_n, std::size_t max_k);

  std::uint64_t operator()(std::size_t n, std::size_t k) const {
    if (k > n) return 0;
    return table_[n * stride_ + k];
  }

 private:
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> table_;
};

// Vietoris-Rips filtration up to a dimension cap, in the total order
// (diameter, dimension, lexicographic vertices). Immutable once built.
//
// Simplices are stored as a packed combinatorial code rather than vertex
// lists so that filtrations with tens of millions of simplices stay compact.
class Filtration {
 public:
  std::size_t size() const noexcept { return entries_.size(); }
  std::size_t n_points() const noexcept { return n_; }
  int max_dimension() const noexcept { return max_dim_; }
  double enclosing_diameter() const noexcept { return enclosing_; }
  // Effective cap (enclosing diameter when none was requested).
  double diameter_cap() const noexcept { return cap_; }
  // True when the cap removed at least one edge of the full complex.
  bool truncated() const noexcept { return cap_ < enclosing_; }

  int dimension(std::size_t pos) const {
    return static_cast<int>(entries_[pos].key >> kCodeBits);
  }
  double diameter(std::size_t pos) const { return entries_[pos].diameter; }
  std::vector<Vertex> vertices(std::size_t pos) const;
  FilteredSimplex simplex(std::size_t pos) const;

  // Position of the simplex with the given sorted vertex list, if present.
  std::optional<std::size_t> position_of(std::span<const Vertex> vertices) const;

  // Filtration positions of the codimension-1 faces, ascending. Requires
  // dimension(pos) <= max_dimension.
  void boundary(std::size_t pos, std::vector<std::uint32_t>& out) const;

  // Number of simplices with diameter <= d (a prefix of the order).
  std::size_t prefix_size(double d) const;

  std::size_t count_in_dimension(int k) const;

 private:
  friend Filtration build_filtration(const DistanceMatrix&,
                                     const FiltrationParams&);

  static constexpr int kCodeBits = 58;
  static constexpr std::uint64_t kCodeMask = (std::uint64_t{1} << kCodeBits) - 1;

  struct Entry {
    double diameter;
    std::uint64_t key;  // dimension << kCodeBits | code
  };

  std::uint64_t encode(std::span<const Vertex> vertices) const;
  void decode(std::uint64_t code, int dim, std::vector<Vertex>& out) const;
  std::optional<std::uint32_t> lookup(int dim, std::uint64_t code) const;

  std::size_t n_ = 0;
  int max_dim_ = 0;
  double enclosing_ = 0.0;
  double cap_ = 0.0;
  BinomialTable binom_;
  std::vector<Entry> entries_;
  // Face lookup for dimensions 1..max_dim-1 (vertex v sits at position v).
  // Dense when the index range is small, hashed otherwise.
  std::vector<std::vector<std::uint32_t>> dense_index_;
  std::vector<std::unordered_map<std::uint64_t, std::uint32_t>> sparse_index_;
};

// Throws CapacityError when the simplex count would exceed the budget.
Filtration build_filtration(const DistanceMatrix& dist,
                            const FiltrationParams& params = {});

// Simplices of the Rips complex at ball radius epsilon, i.e. those with
// diameter <= 2 * epsilon, in filtration order.
std::vector<FilteredSimplex> complex_at_scale(const Filtration& filt,
                                              double epsilon);

// One simplex per line: "diameter dim v0 v1 ... vk".
void write_filtration(std::ostream& out, const Filtration& filt);

}  // namespace tdakit
