#include "tdakit/barcode_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "tdakit/assignment.hpp"
#include "tdakit/errors.hpp"

namespace tdakit {

namespace {

struct Side {
  std::vector<std::size_t> index;  // into Barcode::intervals
  std::vector<PersistenceInterval> interval;
};

// Optimal matching of two finite interval lists with diagonal slots.
// Returns the summed cost^p and appends the matching.
double match_with_diagonal(const Side& a, const Side& b, double p,
                           Matching& matching) {
  const std::size_t m = a.interval.size();
  const std::size_t k = b.interval.size();
  if (m + k == 0) return 0.0;
  CostMatrix cost(m + k);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < k; ++j)
      cost(i, j) = std::pow(interval_sup_distance(a.interval[i], b.interval[j]), p);
    const double to_diag = std::pow(diagonal_distance(a.interval[i]), p);
    for (std::size_t l = 0; l < m; ++l) cost(i, k + l) = to_diag;
  }
  for (std::size_t j = 0; j < k; ++j) {
    const double to_diag = std::pow(diagonal_distance(b.interval[j]), p);
    for (std::size_t r = 0; r < k; ++r) cost(m + r, j) = to_diag;
  }
  const auto solved = solve_assignment(cost);
  for (std::size_t i = 0; i < m; ++i) {
    const auto c = solved.column_of_row[i];
    if (c < k)
      matching.pairs.emplace_back(a.index[i], b.index[c]);
    else
      matching.unmatched_1.push_back(a.index[i]);
  }
  for (std::size_t r = m; r < m + k; ++r) {
    const auto c = solved.column_of_row[r];
    if (c < k) matching.unmatched_2.push_back(b.index[c]);
  }
  return solved.cost;
}

// Essentials matched by birth alone; sizes must agree.
double match_births(const Side& a, const Side& b, double p,
                    Matching& matching) {
  const std::size_t m = a.interval.size();
  if (m == 0) return 0.0;
  CostMatrix cost(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j)
      cost(i, j) = std::pow(std::abs(a.interval[i].birth - b.interval[j].birth), p);
  }
  const auto solved = solve_assignment(cost);
  for (std::size_t i = 0; i < m; ++i)
    matching.pairs.emplace_back(a.index[i], b.index[solved.column_of_row[i]]);
  return solved.cost;
}

void split_dimension(const Barcode& b, int dim, Side& finite, Side& essential) {
  for (std::size_t i = 0; i < b.intervals.size(); ++i) {
    const auto& iv = b.intervals[i];
    if (iv.dimension != dim) continue;
    Side& side = iv.essential() ? essential : finite;
    side.index.push_back(i);
    side.interval.push_back(iv);
  }
}

std::vector<std::tuple<int, double, double>> signature(const Barcode& b) {
  std::vector<std::tuple<int, double, double>> sig;
  sig.reserve(b.intervals.size());
  for (const auto& iv : b.intervals) sig.emplace_back(iv.dimension, iv.birth, iv.death);
  std::sort(sig.begin(), sig.end());
  return sig;
}

bool canonically_after(const Barcode& b1, const Barcode& b2) {
  if (b1.enclosing_diameter != b2.enclosing_diameter)
    return b1.enclosing_diameter > b2.enclosing_diameter;
  return signature(b2) < signature(b1);
}

void swap_sides(Matching& m) {
  for (auto& pr : m.pairs) std::swap(pr.first, pr.second);
  std::swap(m.unmatched_1, m.unmatched_2);
}

}  // namespace

std::string to_string(EssentialPolicy policy) {
  return policy == EssentialPolicy::Truncate ? "truncate" : "match-or-fail";
}

EssentialPolicy essential_policy_from_string(const std::string& name) {
  if (name == "truncate") return EssentialPolicy::Truncate;
  if (name == "match-or-fail") return EssentialPolicy::MatchOrFail;
  throw std::invalid_argument("unknown essential policy '" + name +
                              "' (expected truncate or match-or-fail)");
}

double interval_sup_distance(const PersistenceInterval& a,
                             const PersistenceInterval& b) {
  if (a.essential() || b.essential())
    throw std::logic_error(
        "interval_sup_distance called with an essential interval");
  return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

double diagonal_distance(const PersistenceInterval& a) {
  if (a.essential())
    throw std::logic_error("diagonal_distance called with an essential interval");
  return (a.death - a.birth) / 2.0;
}

WassersteinResult wasserstein(const Barcode& b1, const Barcode& b2,
                              const WassersteinConfig& cfg) {
  if (!(cfg.p > 0.0) || std::isinf(cfg.p))
    throw std::invalid_argument("Wasserstein p must be a finite value > 0");
  if (b1.max_dimension != b2.max_dimension)
    throw IncomparableError(
        "barcodes '" + b1.label + "' and '" + b2.label +
        "' were computed with different max_dimension (" +
        std::to_string(b1.max_dimension) + " vs " +
        std::to_string(b2.max_dimension) + ")");

  const bool swapped = canonically_after(b1, b2);
  const Barcode& first = swapped ? b2 : b1;
  const Barcode& second = swapped ? b1 : b2;

  std::set<int> dims;
  if (cfg.dimensions) {
    dims = *cfg.dimensions;
  } else {
    for (int k = 0; k <= first.max_dimension; ++k) dims.insert(k);
  }

  WassersteinResult result;
  double total = 0.0;
  for (const int dim : dims) {
    Side fin1, ess1, fin2, ess2;
    split_dimension(first, dim, fin1, ess1);
    split_dimension(second, dim, fin2, ess2);
    Matching matching;
    double cost = match_with_diagonal(fin1, fin2, cfg.p, matching);

    if (cfg.essential == EssentialPolicy::Truncate) {
      for (auto& iv : ess1.interval) iv.death = first.enclosing_diameter;
      for (auto& iv : ess2.interval) iv.death = second.enclosing_diameter;
      cost += match_with_diagonal(ess1, ess2, cfg.p, matching);
    } else if (ess1.interval.size() != ess2.interval.size()) {
      cost = kInfinity;
    } else {
      cost += match_births(ess1, ess2, cfg.p, matching);
    }

    if (swapped) swap_sides(matching);
    result.per_dimension[dim] = std::pow(cost, 1.0 / cfg.p);
    result.matchings[dim] = std::move(matching);
    total += cost;
  }
  result.distance = std::pow(total, 1.0 / cfg.p);
  return result;
}

double wasserstein_distance(const Barcode& b1, const Barcode& b2,
                            const WassersteinConfig& cfg) {
  return wasserstein(b1, b2, cfg).distance;
}

}  // namespace tdakit
