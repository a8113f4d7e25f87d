#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tdakit/barcode_metrics.hpp"
#include "tdakit/metric_space.hpp"
#include "tdakit/persistence.hpp"

namespace tdakit {

// Half-open temperature range [from, below); unset bounds are unbounded.
struct TemperatureBand {
  std::string name;
  std::optional<double> from;
  std::optional<double> below;
};

// Records with index > index_after belong here regardless of temperature.
struct DamageRule {
  std::string name = "damage";
  std::size_t index_after = 3475;
};

struct PartitionSpec {
  std::optional<DamageRule> damage;
  std::vector<TemperatureBand> bands;

  // freezing T < 0, cold 0 <= T < 4, warm T >= 4, damage index > 3475.
  static PartitionSpec z24();

  // Bands must be contiguous, ascending and cover the whole real line, and
  // all names distinct. Throws DataError otherwise.
  void validate() const;

  // Partition names in output order: bands, then damage.
  std::vector<std::string> names() const;

  // Name of the partition the record belongs to. The damage rule is checked
  // first. Throws DataError for a record without temperature that the damage
  // rule does not capture.
  const std::string& classify(const FeatureRecord& record) const;
};

// One cloud per non-empty partition, in PartitionSpec::names() order; each
// cloud keeps its records' input order and is labelled with the partition
// name.
std::vector<PointCloud> partition_records(std::span<const FeatureRecord> records,
                                          const PartitionSpec& spec);

// Uniform random split into halves of floor(n/2) and ceil(n/2) points,
// labelled <label>1 and <label>2. Each half keeps input order. Throws
// DataError when n < 2.
std::pair<PointCloud, PointCloud> split_random_halves(const PointCloud& cloud,
                                                      std::uint64_t seed);

// round(fraction * n) points drawn without replacement, input order kept.
// Subsamples for different fractions under one seed are nested; fraction 1
// returns the cloud unchanged. Throws DataError below 2 points.
PointCloud subsample(const PointCloud& cloud, double fraction,
                     std::uint64_t seed);

// Appends the two random halves of the `target` partition.
std::vector<PointCloud> with_random_halves(std::vector<PointCloud> clouds,
                                           const std::string& target,
                                           std::uint64_t seed);

struct AnalysisParams {
  FiltrationParams filtration;
  WassersteinConfig wasserstein;
  std::size_t threads = 1;
};

struct WassersteinReport {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> matrix;
  std::vector<double> row_sums;
  std::vector<std::size_t> n_points;
  std::vector<double> scaled_sums;  // row_sums[i] / n_points[i]
};

// Pairwise distances over precomputed barcodes.
WassersteinReport report_from_barcodes(std::span<const Barcode> barcodes,
                                       const WassersteinConfig& cfg,
                                       std::size_t threads = 1);

// Each cloud's barcode is computed once, then every unordered pair once.
// Needs at least two clouds with distinct labels. Errors from a pair are
// rethrown naming both partitions.
WassersteinReport pairwise_report(std::span<const PointCloud> clouds,
                                  const AnalysisParams& params);

struct SweepRow {
  double fraction = 1.0;
  std::size_t target_size = 0;
  WassersteinReport report;
};

// For each fraction the target partition is subsampled, its halves rebuilt
// (unless include_halves is false) and the full report recomputed.
// Fractions must be ascending within (0, 1].
std::vector<SweepRow> partition_size_sweep(std::span<const PointCloud> clouds,
                                           const std::string& target,
                                           std::span<const double> fractions,
                                           std::uint64_t seed,
                                           const AnalysisParams& params,
                                           bool include_halves = true);

// Descending scaled sum, ties broken by name.
std::vector<std::pair<std::string, double>> rank_partitions(
    const WassersteinReport& report);

}  // namespace tdakit
