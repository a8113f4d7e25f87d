#include "tdakit/metric_space.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <set>
#include <string_view>

#include "tdakit/errors.hpp"

namespace tdakit {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char delimiter) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delimiter, start);
    cells.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return cells;
}

bool is_nan_token(std::string_view cell) {
  if (cell.size() != 3) return false;
  return std::tolower(cell[0]) == 'n' && std::tolower(cell[1]) == 'a' &&
         std::tolower(cell[2]) == 'n';
}

std::optional<double> parse_double(std::string_view cell) {
  double value = 0.0;
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  const auto* end = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(cell.data(), end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

std::size_t column_of(const std::vector<std::string>& header,
                      const std::string& name) {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end())
    throw ParseError("no column named '" + name + "' in header", 1);
  return static_cast<std::size_t>(it - header.begin());
}

}  // namespace

PointCloud::PointCloud(std::string label,
                       std::vector<std::vector<double>> points)
    : label_(std::move(label)), n_(points.size()) {
  if (points.empty()) throw DataError("point cloud '" + label_ + "' is empty");
  dim_ = points.front().size();
  coords_.reserve(n_ * dim_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (points[i].size() != dim_)
      throw DataError("point " + std::to_string(i) + " of '" + label_ +
                      "' has dimension " + std::to_string(points[i].size()) +
                      ", expected " + std::to_string(dim_));
    coords_.insert(coords_.end(), points[i].begin(), points[i].end());
  }
  validate();
}

PointCloud::PointCloud(std::string label, std::size_t dimension,
                       std::vector<double> coordinates)
    : label_(std::move(label)), dim_(dimension), coords_(std::move(coordinates)) {
  if (dim_ == 0 || coords_.size() % dim_ != 0)
    throw DataError("coordinate count is not a multiple of the dimension");
  n_ = coords_.size() / dim_;
  validate();
}

void PointCloud::validate() const {
  if (n_ == 0) throw DataError("point cloud '" + label_ + "' is empty");
  if (dim_ == 0)
    throw DataError("point cloud '" + label_ + "' has zero dimension");
  for (std::size_t k = 0; k < coords_.size(); ++k) {
    if (!std::isfinite(coords_[k]))
      throw DataError("point " + std::to_string(k / dim_) + " of '" + label_ +
                      "' has a non-finite coordinate");
  }
}

PointCloud PointCloud::relabeled(std::string label) const {
  PointCloud copy = *this;
  copy.label_ = std::move(label);
  return copy;
}

PointCloud PointCloud::select(std::span<const std::size_t> indices,
                              std::string label) const {
  std::vector<double> coords;
  coords.reserve(indices.size() * dim_);
  for (const auto i : indices) {
    if (i >= n_) throw std::out_of_range("PointCloud::select index");
    const auto p = point(i);
    coords.insert(coords.end(), p.begin(), p.end());
  }
  return PointCloud(std::move(label), dim_, std::move(coords));
}

PointCloud cloud_from_records(std::string label,
                              std::span<const FeatureRecord> records) {
  std::vector<std::vector<double>> points;
  points.reserve(records.size());
  for (const auto& r : records) points.push_back(r.features);
  return PointCloud(std::move(label), std::move(points));
}

PointCloud standardized(const PointCloud& cloud) {
  const auto n = cloud.size();
  const auto d = cloud.dimension();
  std::vector<double> coords(cloud.coordinates().begin(),
                             cloud.coordinates().end());
  for (std::size_t axis = 0; axis < d; ++axis) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += coords[i * d + axis];
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double c = coords[i * d + axis] - mean;
      var += c * c;
    }
    const double sd = n > 1 ? std::sqrt(var / static_cast<double>(n - 1)) : 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      auto& c = coords[i * d + axis];
      c -= mean;
      if (sd > 0.0) c /= sd;
    }
  }
  return PointCloud(cloud.label(), d, std::move(coords));
}

double DistanceMatrix::enclosing_diameter() const {
  double best = 0.0;
  for (const double e : entries_) best = std::max(best, e);
  return best;
}

double euclidean(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double diff = a[k] - b[k];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

DistanceMatrix pairwise_distances(const PointCloud& cloud,
                                  const PointMetric& metric) {
  const auto n = cloud.size();
  DistanceMatrix dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j)
      dist.set(i, j, metric(cloud.point(i), cloud.point(j)));
  }
  return dist;
}

std::vector<FeatureRecord> load_records(std::istream& in,
                                        const ColumnSpec& spec) {
  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    for (const auto cell : split(line, spec.delimiter))
      header.emplace_back(cell);
    break;
  }
  if (header.empty()) throw ParseError("empty input: no header row");

  std::optional<std::size_t> temp_col;
  std::optional<std::size_t> index_col;
  if (spec.temperature) temp_col = column_of(header, *spec.temperature);
  if (spec.index) index_col = column_of(header, *spec.index);

  std::vector<std::size_t> feature_cols;
  if (spec.features.empty()) {
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (c != temp_col && c != index_col) feature_cols.push_back(c);
    }
  } else {
    for (const auto& name : spec.features)
      feature_cols.push_back(column_of(header, name));
  }
  if (feature_cols.empty()) throw ParseError("no feature columns selected", 1);

  std::vector<FeatureRecord> records;
  std::set<std::size_t> seen_indices;
  std::size_t file_row = 1;
  while (std::getline(in, line)) {
    ++file_row;
    if (trim(line).empty()) continue;
    const auto cells = split(line, spec.delimiter);
    if (cells.size() != header.size())
      throw ParseError("expected " + std::to_string(header.size()) +
                           " cells, found " + std::to_string(cells.size()),
                       file_row);

    FeatureRecord rec;
    rec.index = records.size() + 1;
    rec.features.reserve(feature_cols.size());
    for (const auto c : feature_cols) {
      if (cells[c].empty())
        throw ParseError("missing feature value", file_row, header[c]);
      const auto v = parse_double(cells[c]);
      if (!v) throw ParseError("malformed number", file_row, header[c]);
      if (!std::isfinite(*v))
        throw ParseError("non-finite feature value", file_row, header[c]);
      rec.features.push_back(*v);
    }
    if (temp_col && !cells[*temp_col].empty() &&
        !is_nan_token(cells[*temp_col])) {
      const auto v = parse_double(cells[*temp_col]);
      if (!v || !std::isfinite(*v))
        throw ParseError("malformed temperature", file_row, header[*temp_col]);
      rec.temperature = *v;
    }
    if (index_col) {
      const auto cell = cells[*index_col];
      std::size_t idx = 0;
      const auto [ptr, ec] =
          std::from_chars(cell.data(), cell.data() + cell.size(), idx);
      if (ec != std::errc{} || ptr != cell.data() + cell.size())
        throw ParseError("malformed index", file_row, header[*index_col]);
      rec.index = idx;
    }
    if (!seen_indices.insert(rec.index).second)
      throw ParseError("duplicate index " + std::to_string(rec.index),
                       file_row);
    records.push_back(std::move(rec));
  }
  if (records.empty()) throw ParseError("empty input: no data rows");
  return records;
}

PointCloud load_point_cloud(std::istream& in, const ColumnSpec& spec,
                            std::string label) {
  const auto records = load_records(in, spec);
  return cloud_from_records(std::move(label), records);
}

}  // namespace tdakit
