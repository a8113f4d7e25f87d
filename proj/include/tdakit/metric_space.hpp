#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tdakit {

// One observation: a feature vector (e.g. natural frequencies) with an
// optional temperature and an ordinal index.
struct FeatureRecord {
  std::size_t index = 0;
  std::vector<double> features;
  std::optional<double> temperature;
};

// Finite point set in R^d, row-major. Immutable once constructed.
class PointCloud {
 public:
  // Throws DataError unless every point has the same dimension >= 1, there
  // is at least one point, and all coordinates are finite.
  PointCloud(std::string label, std::vector<std::vector<double>> points);
  PointCloud(std::string label, std::size_t dimension,
             std::vector<double> coordinates);

  const std::string& label() const noexcept { return label_; }
  std::size_t size() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return dim_; }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  std::span<const double> coordinates() const noexcept { return coords_; }

  PointCloud relabeled(std::string label) const;
  // Keeps the listed points, in the listed order.
  PointCloud select(std::span<const std::size_t> indices,
                    std::string label) const;

 private:
  void validate() const;

  std::string label_;
  std::size_t n_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

PointCloud cloud_from_records(std::string label,
                              std::span<const FeatureRecord> records);

// Per-axis z-score standardization; constant axes are centered only.
PointCloud standardized(const PointCloud& cloud);

// Symmetric n x n matrix with zero diagonal.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), entries_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_[i * n_ + j];
  }
  // Sets both (i,j) and (j,i).
  void set(std::size_t i, std::size_t j, double value) {
    entries_[i * n_ + j] = value;
    entries_[j * n_ + i] = value;
  }
  // Largest entry: the scale at which the Rips complex is a full simplex.
  double enclosing_diameter() const;

  std::span<const double> entries() const noexcept { return entries_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> entries_;
};

using PointMetric =
    std::function<double(std::span<const double>, std::span<const double>)>;

double euclidean(std::span<const double> a, std::span<const double> b);

DistanceMatrix pairwise_distances(const PointCloud& cloud,
                                  const PointMetric& metric = euclidean);

// Column selection for delimited tabular input. Features listed explicitly;
// when empty, every column other than temperature/index is a feature.
struct ColumnSpec {
  std::vector<std::string> features;
  std::optional<std::string> temperature;
  std::optional<std::string> index;
  char delimiter = ',';
};

// Reads a header row plus one record per row. Without an index column the
// index is the 1-based data row number. An empty or NaN temperature cell is
// treated as missing; feature cells must be finite numbers.
std::vector<FeatureRecord> load_records(std::istream& in,
                                        const ColumnSpec& spec);

PointCloud load_point_cloud(std::istream& in, const ColumnSpec& spec,
                            std::string label = "points");

}  // namespace tdakit
