#include "tdakit/vr_filtration.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "tdakit/errors.hpp"

namespace tdakit {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();
constexpr std::uint64_t kDenseIndexLimit = std::uint64_t{1} << 25;
constexpr std::uint32_t kAbsent = std::numeric_limits<std::uint32_t>::max();

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

}  // namespace

BinomialTable::BinomialTable(std::size_t max_n, std::size_t max_k)
    : stride_(max_k + 1), table_((max_n + 1) * (max_k + 1), 0) {
  for (std::size_t n = 0; n <= max_n; ++n) {
    table_[n * stride_] = 1;
    for (std::size_t k = 1; k <= std::min(n, max_k); ++k) {
      const auto above = table_[(n - 1) * stride_ + k - 1];
      const auto left = k <= n - 1 ? table_[(n - 1) * stride_ + k] : 0;
      table_[n * stride_ + k] = saturating_add(above, left);
    }
  }
}

// Code of v_0 < ... < v_k is the colexicographic rank of the mirrored set
// {n-1-v_i}; ascending lexicographic vertex order is descending code order.
std::uint64_t Filtration::encode(std::span<const Vertex> vertices) const {
  const auto k = vertices.size() - 1;
  std::uint64_t code = 0;
  for (std::size_t i = 0; i <= k; ++i)
    code += binom_(n_ - 1 - vertices[i], k + 1 - i);
  return code;
}

void Filtration::decode(std::uint64_t code, int dim,
                        std::vector<Vertex>& out) const {
  out.resize(static_cast<std::size_t>(dim) + 1);
  std::size_t hi = n_;  // exclusive upper bound for the mirrored value
  for (std::size_t i = 0; i <= static_cast<std::size_t>(dim); ++i) {
    const std::size_t j = static_cast<std::size_t>(dim) + 1 - i;
    // Largest s < hi with C(s, j) <= code.
    std::size_t lo = j - 1, top = hi - 1;
    while (lo < top) {
      const std::size_t mid = lo + (top - lo + 1) / 2;
      if (binom_(mid, j) <= code)
        lo = mid;
      else
        top = mid - 1;
    }
    code -= binom_(lo, j);
    out[i] = static_cast<Vertex>(n_ - 1 - lo);
    hi = lo;
  }
}

std::vector<Vertex> Filtration::vertices(std::size_t pos) const {
  std::vector<Vertex> out;
  decode(entries_[pos].key & kCodeMask, dimension(pos), out);
  return out;
}

FilteredSimplex Filtration::simplex(std::size_t pos) const {
  return {vertices(pos), dimension(pos), diameter(pos)};
}

std::optional<std::uint32_t> Filtration::lookup(int dim,
                                                std::uint64_t code) const {
  if (dim == 0) return static_cast<std::uint32_t>(n_ - 1 - code);
  const auto d = static_cast<std::size_t>(dim);
  if (d < dense_index_.size() && !dense_index_[d].empty()) {
    const auto p = dense_index_[d][code];
    if (p == kAbsent) return std::nullopt;
    return p;
  }
  if (d < sparse_index_.size()) {
    const auto it = sparse_index_[d].find(code);
    if (it != sparse_index_[d].end()) return it->second;
  }
  return std::nullopt;
}

std::optional<std::size_t> Filtration::position_of(
    std::span<const Vertex> vertices) const {
  if (vertices.empty()) return std::nullopt;
  const int dim = static_cast<int>(vertices.size()) - 1;
  if (dim > max_dim_) return std::nullopt;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i] >= n_) return std::nullopt;
    if (i > 0 && vertices[i] <= vertices[i - 1]) return std::nullopt;
  }
  const auto code = encode(vertices);
  if (dim < max_dim_) {
    const auto p = lookup(dim, code);
    if (!p) return std::nullopt;
    return *p;
  }
  const auto key = (static_cast<std::uint64_t>(dim) << kCodeBits) | code;
  for (std::size_t p = 0; p < entries_.size(); ++p) {
    if (entries_[p].key == key) return p;
  }
  return std::nullopt;
}

void Filtration::boundary(std::size_t pos,
                          std::vector<std::uint32_t>& out) const {
  out.clear();
  const int dim = dimension(pos);
  if (dim == 0) return;
  std::vector<Vertex> verts;
  decode(entries_[pos].key & kCodeMask, dim, verts);
  std::vector<Vertex> face(verts.size() - 1);
  for (std::size_t drop = 0; drop < verts.size(); ++drop) {
    std::size_t w = 0;
    for (std::size_t i = 0; i < verts.size(); ++i) {
      if (i != drop) face[w++] = verts[i];
    }
    const auto p = lookup(dim - 1, encode(face));
    if (!p) throw std::logic_error("filtration is missing a face");
    out.push_back(*p);
  }
  std::sort(out.begin(), out.end());
}

std::size_t Filtration::prefix_size(double d) const {
  const auto it = std::upper_bound(
      entries_.begin(), entries_.end(), d,
      [](double value, const Entry& e) { return value < e.diameter; });
  return static_cast<std::size_t>(it - entries_.begin());
}

std::size_t Filtration::count_in_dimension(int k) const {
  std::size_t count = 0;
  for (std::size_t p = 0; p < entries_.size(); ++p) count += dimension(p) == k;
  return count;
}

Filtration build_filtration(const DistanceMatrix& dist,
                            const FiltrationParams& params) {
  if (params.max_dimension < 0)
    throw std::invalid_argument("max_dimension must be >= 0");
  if (params.max_dimension >= 63)
    throw CapacityError("max_dimension " +
                        std::to_string(params.max_dimension) +
                        " is beyond the supported range");
  if (params.diameter_cap && !(*params.diameter_cap >= 0.0))
    throw std::invalid_argument("diameter_cap must be >= 0");
  const std::size_t n = dist.size();
  if (n == 0) throw DataError("cannot build a filtration on zero points");
  const std::size_t budget =
      std::min<std::size_t>(params.simplex_budget, kAbsent - 1);

  Filtration f;
  f.n_ = n;
  f.max_dim_ = params.max_dimension;
  f.enclosing_ = dist.enclosing_diameter();
  f.cap_ = params.diameter_cap ? std::min(*params.diameter_cap, f.enclosing_)
                               : f.enclosing_;
  const auto top = std::min<std::size_t>(params.max_dimension, n - 1);
  f.binom_ = BinomialTable(n, top + 1);

  std::uint64_t full_count = 0;
  for (std::size_t k = 0; k <= top; ++k) {
    const auto c = f.binom_(n, k + 1);
    if (c >= (std::uint64_t{1} << Filtration::kCodeBits))
      throw CapacityError("simplex index space for dimension " +
                          std::to_string(k) + " on " + std::to_string(n) +
                          " points is too large");
    full_count = saturating_add(full_count, c);
  }
  if (!f.truncated() && full_count > budget)
    throw CapacityError("filtration would contain " +
                        std::to_string(full_count) +
                        " simplices, over the budget of " +
                        std::to_string(budget) +
                        "; lower max_dimension, set a diameter cap or "
                        "subsample");
  if (!f.truncated()) f.entries_.reserve(full_count);

  const double cap = f.cap_;
  auto push = [&](std::span<const Vertex> verts, double diameter) {
    if (f.entries_.size() >= budget)
      throw CapacityError("filtration exceeds the budget of " +
                          std::to_string(budget) +
                          " simplices; lower max_dimension, lower the "
                          "diameter cap or subsample");
    const auto dim = static_cast<std::uint64_t>(verts.size() - 1);
    f.entries_.push_back(
        {diameter, (dim << Filtration::kCodeBits) | f.encode(verts)});
  };

  std::vector<Vertex> simplex;
  simplex.reserve(top + 1);
  // Depth-first clique expansion; candidates are higher-indexed vertices
  // within the cap of every vertex already in the simplex.
  auto expand = [&](auto&& self, double diameter,
                    const std::vector<Vertex>& candidates) -> void {
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      const Vertex v = candidates[c];
      double diam = diameter;
      for (const auto u : simplex) diam = std::max(diam, dist(u, v));
      simplex.push_back(v);
      push(simplex, diam);
      if (simplex.size() <= top) {
        std::vector<Vertex> next;
        for (std::size_t d = c + 1; d < candidates.size(); ++d) {
          if (dist(v, candidates[d]) <= cap) next.push_back(candidates[d]);
        }
        if (!next.empty()) self(self, diam, next);
      }
      simplex.pop_back();
    }
  };

  for (Vertex v = 0; v < n; ++v) {
    simplex.assign(1, v);
    push(simplex, 0.0);
    if (top == 0) continue;
    std::vector<Vertex> candidates;
    for (Vertex w = v + 1; w < n; ++w) {
      if (dist(v, w) <= cap) candidates.push_back(w);
    }
    expand(expand, 0.0, candidates);
  }

  std::sort(f.entries_.begin(), f.entries_.end(),
            [](const Filtration::Entry& a, const Filtration::Entry& b) {
              if (a.diameter != b.diameter) return a.diameter < b.diameter;
              const auto da = a.key >> Filtration::kCodeBits;
              const auto db = b.key >> Filtration::kCodeBits;
              if (da != db) return da < db;
              return a.key > b.key;
            });

  f.dense_index_.resize(top);
  f.sparse_index_.resize(top);
  for (std::size_t k = 1; k < top; ++k) {
    if (f.binom_(n, k + 1) <= kDenseIndexLimit)
      f.dense_index_[k].assign(f.binom_(n, k + 1), kAbsent);
  }
  for (std::size_t p = 0; p < f.entries_.size(); ++p) {
    const auto dim = static_cast<std::size_t>(f.dimension(p));
    if (dim == 0 || dim >= top) continue;
    const auto code = f.entries_[p].key & Filtration::kCodeMask;
    if (!f.dense_index_[dim].empty())
      f.dense_index_[dim][code] = static_cast<std::uint32_t>(p);
    else
      f.sparse_index_[dim].emplace(code, static_cast<std::uint32_t>(p));
  }
  return f;
}

std::vector<FilteredSimplex> complex_at_scale(const Filtration& filt,
                                              double epsilon) {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be >= 0");
  const auto count = filt.prefix_size(radius_to_diameter(epsilon));
  std::vector<FilteredSimplex> out;
  out.reserve(count);
  for (std::size_t p = 0; p < count; ++p) out.push_back(filt.simplex(p));
  return out;
}

void write_filtration(std::ostream& out, const Filtration& filt) {
  char buf[32];
  for (std::size_t p = 0; p < filt.size(); ++p) {
    std::snprintf(buf, sizeof buf, "%.17g", filt.diameter(p));
    out << buf << ' ' << filt.dimension(p);
    for (const auto v : filt.vertices(p)) out << ' ' << v;
    out << '\n';
  }
}

}  // namespace tdakit
