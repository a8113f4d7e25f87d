#include "tdakit/persistence.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace tdakit {

namespace {

constexpr std::uint32_t kNone = 0xffffffffu;

// Columns are sorted row lists; addition over F2 is symmetric difference.
void add_column(std::vector<std::uint32_t>& target,
                const std::vector<std::uint32_t>& source,
                std::vector<std::uint32_t>& scratch) {
  scratch.resize(target.size() + source.size());
  auto a = target.begin();
  auto b = source.begin();
  auto out = scratch.begin();
  while (a != target.end() && b != source.end()) {
    if (*a < *b) {
      *out++ = *a++;
    } else if (*b < *a) {
      *out++ = *b++;
    } else {
      ++a;
      ++b;
    }
  }
  out = std::copy(a, target.end(), out);
  out = std::copy(b, source.end(), out);
  scratch.resize(static_cast<std::size_t>(out - scratch.begin()));
  target.swap(scratch);
}

}  // namespace

std::vector<PersistenceInterval> Barcode::in_dimension(int k) const {
  std::vector<PersistenceInterval> out;
  for (const auto& iv : intervals) {
    if (iv.dimension == k) out.push_back(iv);
  }
  return out;
}

Barcode compute_persistence(const Filtration& filt,
                            const PersistenceOptions& options) {
  const std::size_t total = filt.size();
  const int top = filt.max_dimension();

  // owner[row] indexes the stored reduced column whose pivot is `row`.
  std::vector<std::uint32_t> owner(total, kNone);
  std::vector<std::vector<std::uint32_t>> reduced;
  std::vector<char> cleared(total, 0);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  std::vector<std::uint32_t> essentials;
  std::vector<std::uint32_t> unverified;

  std::vector<std::uint32_t> column;
  std::vector<std::uint32_t> scratch;

  for (int dim = top; dim >= 1; --dim) {
    // In an untruncated filtration the top boundary map has the rank of the
    // full simplex's, C(n-1, top); once that many pivots exist every
    // remaining top column reduces to zero.
    std::optional<std::uint64_t> pivots_expected;
    if (dim == top && !options.report_top_dimension && !filt.truncated()) {
      const BinomialTable binom(filt.n_points(), static_cast<std::size_t>(top));
      pivots_expected = binom(filt.n_points() - 1, static_cast<std::size_t>(top));
    }
    std::uint64_t pivots_found = 0;

    for (std::size_t j = 0; j < total; ++j) {
      if (pivots_expected && pivots_found == *pivots_expected) break;
      if (filt.dimension(j) != dim || cleared[j]) continue;
      filt.boundary(j, column);
      while (!column.empty()) {
        const auto o = owner[column.back()];
        if (o == kNone) break;
        add_column(column, reduced[o], scratch);
      }
      if (column.empty()) {
        if (dim < top)
          essentials.push_back(static_cast<std::uint32_t>(j));
        else if (options.report_top_dimension)
          unverified.push_back(static_cast<std::uint32_t>(j));
        continue;
      }
      const auto low = column.back();
      owner[low] = static_cast<std::uint32_t>(reduced.size());
      reduced.push_back(column);
      cleared[low] = 1;
      pairs.emplace_back(low, static_cast<std::uint32_t>(j));
      ++pivots_found;
    }
    // Columns of this dimension are never added to lower-dimension columns.
    reduced.clear();
    reduced.shrink_to_fit();
    std::fill(owner.begin(), owner.end(), kNone);
  }
  for (std::size_t v = 0; v < total && filt.dimension(v) == 0; ++v) {
    if (cleared[v]) continue;
    if (top > 0)
      essentials.push_back(static_cast<std::uint32_t>(v));
    else if (options.report_top_dimension)
      unverified.push_back(static_cast<std::uint32_t>(v));
  }

  Barcode barcode;
  barcode.n_points = filt.n_points();
  barcode.max_dimension = top;
  barcode.enclosing_diameter = filt.enclosing_diameter();
  for (const auto& [birth, death] : pairs) {
    const double b = filt.diameter(birth);
    const double d = filt.diameter(death);
    if (d > b)
      barcode.intervals.push_back(
          {filt.dimension(birth), b, d, birth, death, false});
  }
  for (const auto s : essentials)
    barcode.intervals.push_back(
        {filt.dimension(s), filt.diameter(s), kInfinity, s, std::nullopt, false});
  for (const auto s : unverified)
    barcode.intervals.push_back(
        {filt.dimension(s), filt.diameter(s), kInfinity, s, std::nullopt, true});

  std::sort(barcode.intervals.begin(), barcode.intervals.end(),
            [](const PersistenceInterval& a, const PersistenceInterval& b) {
              if (a.dimension != b.dimension) return a.dimension < b.dimension;
              if (a.birth != b.birth) return a.birth < b.birth;
              if (a.death != b.death) return a.death < b.death;
              return a.birth_simplex < b.birth_simplex;
            });
  return barcode;
}

Barcode barcode_of(const PointCloud& cloud, const FiltrationParams& params,
                   const PersistenceOptions& options) {
  const auto filt = build_filtration(pairwise_distances(cloud), params);
  auto barcode = compute_persistence(filt, options);
  barcode.label = cloud.label();
  return barcode;
}

std::vector<std::size_t> betti_numbers_at(const Barcode& barcode,
                                          double epsilon) {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be >= 0");
  const double scale = radius_to_diameter(epsilon);
  std::vector<std::size_t> betti(
      static_cast<std::size_t>(std::max(barcode.max_dimension, 0)) + 1, 0);
  for (const auto& iv : barcode.intervals) {
    if (iv.dimension < 0 ||
        static_cast<std::size_t>(iv.dimension) >= betti.size())
      continue;
    if (iv.birth <= scale && scale < iv.death) ++betti[iv.dimension];
  }
  return betti;
}

}  // namespace tdakit
