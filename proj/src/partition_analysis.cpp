#include "tdakit/partition_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "parallel.hpp"
#include "tdakit/errors.hpp"

namespace tdakit {

namespace {

// Seeded Fisher-Yates; avoids std::shuffle so the permutation does not
// depend on the standard library's distribution implementation.
std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng() % i);
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

const PointCloud& find_cloud(std::span<const PointCloud> clouds,
                             const std::string& name) {
  for (const auto& c : clouds) {
    if (c.label() == name) return c;
  }
  throw DataError("no partition named '" + name + "'");
}

}  // namespace

PartitionSpec PartitionSpec::z24() {
  PartitionSpec spec;
  spec.damage = DamageRule{"damage", 3475};
  spec.bands = {{"freezing", std::nullopt, 0.0},
                {"cold", 0.0, 4.0},
                {"warm", 4.0, std::nullopt}};
  return spec;
}

void PartitionSpec::validate() const {
  if (bands.empty()) throw DataError("partition rules need at least one band");
  std::set<std::string> seen;
  for (const auto& n : names()) {
    if (n.empty()) throw DataError("partition names must be non-empty");
    if (!seen.insert(n).second)
      throw DataError("duplicate partition name '" + n + "'");
  }
  if (bands.front().from)
    throw DataError("first band '" + bands.front().name +
                    "' must have no lower bound");
  if (bands.back().below)
    throw DataError("last band '" + bands.back().name +
                    "' must have no upper bound");
  for (std::size_t i = 0; i + 1 < bands.size(); ++i) {
    const auto& a = bands[i];
    const auto& b = bands[i + 1];
    if (!a.below || !b.from || *a.below != *b.from)
      throw DataError("bands '" + a.name + "' and '" + b.name +
                      "' must meet at a shared bound");
    if (a.from && !(*a.from < *a.below))
      throw DataError("band '" + a.name + "' is empty");
  }
}

std::vector<std::string> PartitionSpec::names() const {
  std::vector<std::string> out;
  for (const auto& b : bands) out.push_back(b.name);
  if (damage) out.push_back(damage->name);
  return out;
}

const std::string& PartitionSpec::classify(const FeatureRecord& record) const {
  if (damage && record.index > damage->index_after) return damage->name;
  if (!record.temperature)
    throw DataError("record with index " + std::to_string(record.index) +
                    " has no temperature and is not captured by the damage "
                    "rule");
  const double t = *record.temperature;
  for (const auto& b : bands) {
    if (b.from && t < *b.from) continue;
    if (b.below && !(t < *b.below)) continue;
    return b.name;
  }
  throw DataError("record with index " + std::to_string(record.index) +
                  " matches no temperature band");
}

std::vector<PointCloud> partition_records(std::span<const FeatureRecord> records,
                                          const PartitionSpec& spec) {
  spec.validate();
  std::map<std::string, std::vector<FeatureRecord>> groups;
  for (const auto& r : records) groups[spec.classify(r)].push_back(r);
  std::vector<PointCloud> out;
  for (const auto& name : spec.names()) {
    const auto it = groups.find(name);
    if (it == groups.end()) continue;
    out.push_back(cloud_from_records(name, it->second));
  }
  return out;
}

std::pair<PointCloud, PointCloud> split_random_halves(const PointCloud& cloud,
                                                      std::uint64_t seed) {
  const auto n = cloud.size();
  if (n < 2)
    throw DataError("cannot split '" + cloud.label() + "' with " +
                    std::to_string(n) + " point(s) into halves");
  const auto perm = seeded_permutation(n, mix_seed(seed, 1));
  const auto half = n / 2;
  std::vector<std::size_t> first(perm.begin(), perm.begin() + half);
  std::vector<std::size_t> second(perm.begin() + half, perm.end());
  std::sort(first.begin(), first.end());
  std::sort(second.begin(), second.end());
  return {cloud.select(first, cloud.label() + "1"),
          cloud.select(second, cloud.label() + "2")};
}

PointCloud subsample(const PointCloud& cloud, double fraction,
                     std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw DataError("fraction must lie in (0, 1]");
  const auto n = cloud.size();
  const auto m = static_cast<std::size_t>(
      std::llround(fraction * static_cast<double>(n)));
  if (m < 2)
    throw DataError("fraction " + std::to_string(fraction) + " of '" +
                    cloud.label() + "' leaves fewer than 2 points");
  if (m >= n) return cloud;
  const auto perm = seeded_permutation(n, mix_seed(seed, 2));
  std::vector<std::size_t> keep(perm.begin(), perm.begin() + m);
  std::sort(keep.begin(), keep.end());
  return cloud.select(keep, cloud.label());
}

std::vector<PointCloud> with_random_halves(std::vector<PointCloud> clouds,
                                           const std::string& target,
                                           std::uint64_t seed) {
  auto halves = split_random_halves(find_cloud(clouds, target), seed);
  clouds.push_back(std::move(halves.first));
  clouds.push_back(std::move(halves.second));
  return clouds;
}

WassersteinReport report_from_barcodes(std::span<const Barcode> barcodes,
                                       const WassersteinConfig& cfg,
                                       std::size_t threads) {
  const auto k = barcodes.size();
  if (k < 2) throw DataError("a report needs at least two partitions");
  WassersteinReport report;
  std::set<std::string> seen;
  for (const auto& b : barcodes) {
    if (!seen.insert(b.label).second)
      throw DataError("duplicate partition label '" + b.label + "'");
    report.labels.push_back(b.label);
    report.n_points.push_back(b.n_points);
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) pairs.emplace_back(i, j);
  }
  std::vector<double> values(pairs.size());
  detail::parallel_for(pairs.size(), threads, [&](std::size_t p) {
    const auto [i, j] = pairs[p];
    try {
      values[p] = wasserstein_distance(barcodes[i], barcodes[j], cfg);
    } catch (const Error& e) {
      rethrow_with_context(e, "partitions '" + barcodes[i].label + "' and '" +
                                  barcodes[j].label + "': ");
    }
  });

  report.matrix.assign(k, std::vector<double>(k, 0.0));
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [i, j] = pairs[p];
    report.matrix[i][j] = values[p];
    report.matrix[j][i] = values[p];
  }
  for (std::size_t i = 0; i < k; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < k; ++j) sum += report.matrix[i][j];
    report.row_sums.push_back(sum);
    report.scaled_sums.push_back(sum / static_cast<double>(report.n_points[i]));
  }
  return report;
}

WassersteinReport pairwise_report(std::span<const PointCloud> clouds,
                                  const AnalysisParams& params) {
  if (clouds.size() < 2) throw DataError("a report needs at least two partitions");
  std::vector<Barcode> barcodes(clouds.size());
  detail::parallel_for(clouds.size(), params.threads, [&](std::size_t i) {
    try {
      barcodes[i] = barcode_of(clouds[i], params.filtration);
    } catch (const Error& e) {
      rethrow_with_context(e, "partition '" + clouds[i].label() + "': ");
    }
  });
  return report_from_barcodes(barcodes, params.wasserstein, params.threads);
}

std::vector<SweepRow> partition_size_sweep(std::span<const PointCloud> clouds,
                                           const std::string& target,
                                           std::span<const double> fractions,
                                           std::uint64_t seed,
                                           const AnalysisParams& params,
                                           bool include_halves) {
  const auto& parent = find_cloud(clouds, target);
  if (fractions.empty()) throw DataError("no sweep fractions given");
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    if (!(fractions[i] > 0.0 && fractions[i] <= 1.0))
      throw DataError("sweep fractions must lie in (0, 1]");
    if (i > 0 && !(fractions[i - 1] < fractions[i]))
      throw DataError("sweep fractions must be strictly ascending");
  }

  std::vector<SweepRow> rows;
  for (const double f : fractions) {
    const auto reduced = subsample(parent, f, seed);
    std::vector<PointCloud> set;
    for (const auto& c : clouds)
      set.push_back(c.label() == target ? reduced : c);
    if (include_halves) set = with_random_halves(std::move(set), target, seed);
    rows.push_back({f, reduced.size(), pairwise_report(set, params)});
  }
  return rows;
}

std::vector<std::pair<std::string, double>> rank_partitions(
    const WassersteinReport& report) {
  std::vector<std::pair<std::string, double>> out;
  for (std::size_t i = 0; i < report.labels.size(); ++i)
    out.emplace_back(report.labels[i], report.scaled_sums[i]);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return out;
}

}  // namespace tdakit
