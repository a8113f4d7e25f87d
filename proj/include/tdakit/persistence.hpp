#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "tdakit/vr_filtration.hpp"

namespace tdakit {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// [birth, death) in diameter units; death is +inf for essential classes.
struct PersistenceInterval {
  int dimension = 0;
  double birth = 0.0;
  double death = kInfinity;
  // Filtration positions; absent for intervals read back from a file.
  std::optional<std::size_t> birth_simplex;
  std::optional<std::size_t> death_simplex;
  // Essential class in the top simplex dimension: a simplex one dimension
  // higher, absent from the filtration, could still kill it.
  bool unverified = false;

  bool essential() const noexcept { return std::isinf(death); }
  double persistence() const noexcept { return death - birth; }
};

struct Barcode {
  std::string label;
  std::size_t n_points = 0;
  int max_dimension = 0;
  // Largest pairwise distance of the source cloud; used to finitize
  // essential intervals.
  double enclosing_diameter = 0.0;
  std::vector<PersistenceInterval> intervals;

  std::vector<PersistenceInterval> in_dimension(int k) const;
};

struct PersistenceOptions {
  // Report essential classes of dimension max_dimension (flagged
  // unverified). Off by default: they are artifacts of the dimension cap and
  // finding them forces a full reduction of the top dimension. To trust
  // dimension-k essentials build the filtration with max_dimension >= k + 1.
  bool report_top_dimension = false;
};

// Persistent homology over F2 by column reduction of the boundary matrix
// with clearing (dimensions processed top-down). Zero-length intervals are
// dropped. Intervals are ordered by (dimension, birth, death, birth simplex).
//
// Without top-dimension reporting, dimensions 0..max_dimension-1 are
// reported. Capacity limits are enforced by build_filtration.
Barcode compute_persistence(const Filtration& filt,
                            const PersistenceOptions& options = {});

// Cloud -> distances -> filtration -> barcode; the barcode takes the cloud's
// label.
Barcode barcode_of(const PointCloud& cloud, const FiltrationParams& params = {},
                   const PersistenceOptions& options = {});

// Betti numbers at ball radius epsilon: intervals with
// birth <= 2*epsilon < death, per dimension 0..max_dimension.
std::vector<std::size_t> betti_numbers_at(const Barcode& barcode,
                                          double epsilon);

}  // namespace tdakit
