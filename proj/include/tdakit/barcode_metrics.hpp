#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tdakit/persistence.hpp"

namespace tdakit {

enum class EssentialPolicy {
  // Replace death = inf with the barcode's enclosing diameter, then match
  // essentials only against essentials of the same dimension.
  Truncate,
  // Match essentials by birth; unequal counts give an infinite distance.
  MatchOrFail,
};

std::string to_string(EssentialPolicy policy);
EssentialPolicy essential_policy_from_string(const std::string& name);

struct WassersteinConfig {
  double p = 2.0;
  // Homology dimensions to include; unset means 0..max_dimension.
  std::optional<std::set<int>> dimensions;
  EssentialPolicy essential = EssentialPolicy::Truncate;
};

// Indices refer to Barcode::intervals of the two inputs.
struct Matching {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::size_t> unmatched_1;
  std::vector<std::size_t> unmatched_2;
};

struct WassersteinResult {
  double distance = 0.0;
  // Distance restricted to one dimension.
  std::map<int, double> per_dimension;
  std::map<int, Matching> matchings;
};

// max(|birth_a - birth_b|, |death_a - death_b|). Both intervals must be
// finite; an essential interval here is a contract violation
// (std::logic_error).
double interval_sup_distance(const PersistenceInterval& a,
                             const PersistenceInterval& b);

// Sup-distance to the nearest diagonal point: half the persistence.
double diagonal_distance(const PersistenceInterval& a);

// p-Wasserstein distance with diagonal augmentation, solved exactly per
// dimension. Throws IncomparableError when the barcodes were computed with
// different max_dimension. Symmetric bit-for-bit: the pair is put in a
// canonical order before solving.
WassersteinResult wasserstein(const Barcode& b1, const Barcode& b2,
                              const WassersteinConfig& cfg = {});

double wasserstein_distance(const Barcode& b1, const Barcode& b2,
                            const WassersteinConfig& cfg = {});

}  // namespace tdakit
