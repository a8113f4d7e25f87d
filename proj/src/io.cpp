#include "tdakit/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>

#include <json.hpp>

#include "tdakit/errors.hpp"

namespace tdakit {

using nlohmann::json;

namespace {

constexpr const char* kBarcodeFormat = "tdakit-barcode";

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

std::string full(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

json parse_json(std::istream& in, const std::string& what) {
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(what + ": " + e.what());
  }
}

template <typename T>
T field(const json& doc, const char* key, const std::string& what) {
  if (!doc.contains(key)) throw ParseError(what + ": missing field '" + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(what + ": field '" + key + "': " + e.what());
  }
}

double endpoint(const json& v, const std::string& what) {
  if (v.is_string()) {
    if (v.get<std::string>() == "inf") return kInfinity;
    throw ParseError(what + ": endpoint must be a number or \"inf\"");
  }
  if (!v.is_number()) throw ParseError(what + ": endpoint must be a number");
  return v.get<double>();
}

json report_json(const WassersteinReport& r) {
  json ranking = json::array();
  for (const auto& [name, scaled] : rank_partitions(r))
    ranking.push_back({{"name", name}, {"scaled_sum", scaled}});
  return {{"labels", r.labels},   {"n_points", r.n_points},
          {"matrix", r.matrix},   {"row_sums", r.row_sums},
          {"scaled_sums", r.scaled_sums}, {"ranking", ranking}};
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return in;
}

}  // namespace

void write_barcode(std::ostream& out, const Barcode& barcode) {
  json intervals = json::array();
  for (const auto& iv : barcode.intervals) {
    json rec = {{"dim", iv.dimension}, {"birth", iv.birth}};
    if (iv.essential())
      rec["death"] = "inf";
    else
      rec["death"] = iv.death;
    if (iv.unverified) rec["unverified"] = true;
    intervals.push_back(std::move(rec));
  }
  const json doc = {{"format", kBarcodeFormat},
                    {"version", 1},
                    {"label", barcode.label},
                    {"n_points", barcode.n_points},
                    {"max_dimension", barcode.max_dimension},
                    {"enclosing_diameter", barcode.enclosing_diameter},
                    {"intervals", intervals}};
  out << doc.dump(1) << '\n';
}

Barcode read_barcode(std::istream& in) {
  const std::string what = "barcode document";
  const auto doc = parse_json(in, what);
  if (!doc.is_object() || doc.value("format", "") != kBarcodeFormat)
    throw ParseError(what + ": not a " + std::string(kBarcodeFormat) +
                     " document");
  Barcode b;
  b.label = field<std::string>(doc, "label", what);
  b.n_points = field<std::size_t>(doc, "n_points", what);
  b.max_dimension = field<int>(doc, "max_dimension", what);
  b.enclosing_diameter = field<double>(doc, "enclosing_diameter", what);
  const auto& list = doc.at("intervals");
  if (!list.is_array()) throw ParseError(what + ": intervals must be a list");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto rec_what = what + " interval " + std::to_string(i);
    const auto& rec = list[i];
    if (!rec.is_object()) throw ParseError(rec_what + ": must be an object");
    PersistenceInterval iv;
    iv.dimension = field<int>(rec, "dim", rec_what);
    iv.birth = endpoint(rec.at("birth"), rec_what);
    if (!rec.contains("death")) throw ParseError(rec_what + ": missing death");
    iv.death = endpoint(rec.at("death"), rec_what);
    iv.unverified = rec.value("unverified", false);
    if (!(iv.birth <= iv.death) || iv.dimension < 0)
      throw ParseError(rec_what + ": invalid interval");
    b.intervals.push_back(iv);
  }
  return b;
}

void save_barcode(const std::string& path, const Barcode& barcode) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_barcode(out, barcode);
}

Barcode load_barcode(const std::string& path) {
  auto in = open_input(path);
  return read_barcode(in);
}

PartitionSpec read_partition_spec(std::istream& in) {
  const std::string what = "rules document";
  const auto doc = parse_json(in, what);
  if (!doc.is_object()) throw ParseError(what + ": must be an object");
  PartitionSpec spec;
  if (doc.contains("damage") && !doc.at("damage").is_null()) {
    const auto& d = doc.at("damage");
    spec.damage = DamageRule{d.value("name", std::string("damage")),
                             field<std::size_t>(d, "index_after", what)};
  }
  if (!doc.contains("bands") || !doc.at("bands").is_array())
    throw ParseError(what + ": 'bands' must be a list");
  for (const auto& b : doc.at("bands")) {
    TemperatureBand band;
    band.name = field<std::string>(b, "name", what);
    if (b.contains("from")) band.from = field<double>(b, "from", what);
    if (b.contains("below")) band.below = field<double>(b, "below", what);
    spec.bands.push_back(band);
  }
  try {
    spec.validate();
  } catch (const DataError& e) {
    throw ParseError(what + ": " + e.what());
  }
  return spec;
}

PartitionSpec load_partition_spec(const std::string& path) {
  auto in = open_input(path);
  return read_partition_spec(in);
}

void write_partition_spec(std::ostream& out, const PartitionSpec& spec) {
  json doc;
  if (spec.damage)
    doc["damage"] = {{"name", spec.damage->name},
                     {"index_after", spec.damage->index_after}};
  json bands = json::array();
  for (const auto& b : spec.bands) {
    json rec = {{"name", b.name}};
    if (b.from) rec["from"] = *b.from;
    if (b.below) rec["below"] = *b.below;
    bands.push_back(rec);
  }
  doc["bands"] = bands;
  out << doc.dump(2) << '\n';
}

void write_report(std::ostream& out, const WassersteinReport& report) {
  out << report_json(report).dump(1) << '\n';
}

WassersteinReport read_report(std::istream& in) {
  const std::string what = "report document";
  const auto doc = parse_json(in, what);
  WassersteinReport r;
  r.labels = field<std::vector<std::string>>(doc, "labels", what);
  r.n_points = field<std::vector<std::size_t>>(doc, "n_points", what);
  r.matrix = field<std::vector<std::vector<double>>>(doc, "matrix", what);
  r.row_sums = field<std::vector<double>>(doc, "row_sums", what);
  r.scaled_sums = field<std::vector<double>>(doc, "scaled_sums", what);
  return r;
}

void write_sweep(std::ostream& out, std::span<const SweepRow> rows) {
  json list = json::array();
  for (const auto& row : rows) {
    list.push_back({{"fraction", row.fraction},
                    {"target_size", row.target_size},
                    {"report", report_json(row.report)}});
  }
  out << json{{"sweep", list}}.dump(1) << '\n';
}

void print_matrix_table(std::ostream& out, const WassersteinReport& report) {
  std::size_t width = 8;
  for (const auto& l : report.labels) width = std::max(width, l.size() + 2);
  out << std::setw(static_cast<int>(width)) << "";
  for (const auto& l : report.labels)
    out << std::setw(static_cast<int>(width)) << l;
  out << '\n';
  for (std::size_t i = 0; i < report.labels.size(); ++i) {
    out << std::left << std::setw(static_cast<int>(width)) << report.labels[i]
        << std::right;
    for (std::size_t j = 0; j < report.labels.size(); ++j)
      out << std::setw(static_cast<int>(width)) << fixed(report.matrix[i][j], 2);
    out << '\n';
  }
}

void print_sums_table(std::ostream& out, const WassersteinReport& report) {
  std::size_t width = 10;
  for (const auto& l : report.labels) width = std::max(width, l.size() + 2);
  const auto w = static_cast<int>(width);
  out << std::left << std::setw(w) << "" << std::right << std::setw(18)
      << "Wasserstein Sum" << std::setw(18) << "Number of Points"
      << std::setw(24) << "Scaled Wasserstein Sum" << '\n';
  for (std::size_t i = 0; i < report.labels.size(); ++i) {
    out << std::left << std::setw(w) << report.labels[i] << std::right
        << std::setw(18) << fixed(report.row_sums[i], 3) << std::setw(18)
        << report.n_points[i] << std::setw(24)
        << fixed(report.scaled_sums[i], 3) << '\n';
  }
}

void write_barcode_plot(std::ostream& out, const Barcode& barcode) {
  std::vector<PersistenceInterval> bars = barcode.intervals;
  std::stable_sort(bars.begin(), bars.end(), [](const auto& a, const auto& b) {
    if (a.dimension != b.dimension) return a.dimension < b.dimension;
    return a.birth < b.birth;
  });
  const double drawn_end = 1.05 * barcode.enclosing_diameter;
  out << "bar,dimension,birth,death,essential\n";
  for (std::size_t i = 0; i < bars.size(); ++i) {
    const auto& iv = bars[i];
    out << i << ',' << iv.dimension << ',' << full(iv.birth) << ','
        << full(iv.essential() ? drawn_end : iv.death) << ','
        << (iv.essential() ? 1 : 0) << '\n';
  }
}

void write_sweep_series(std::ostream& out, std::span<const SweepRow> rows) {
  out << "series,partition,fraction,target_size,n_points,value\n";
  for (const char* series : {"raw", "scaled"}) {
    const bool raw = series[0] == 'r';
    for (const auto& row : rows) {
      const auto& r = row.report;
      for (std::size_t i = 0; i < r.labels.size(); ++i) {
        out << series << ',' << r.labels[i] << ',' << full(row.fraction) << ','
            << row.target_size << ',' << r.n_points[i] << ','
            << full(raw ? r.row_sums[i] : r.scaled_sums[i]) << '\n';
      }
    }
  }
}

void write_point_cloud(std::ostream& out, const PointCloud& cloud) {
  for (std::size_t k = 0; k < cloud.dimension(); ++k)
    out << (k ? "," : "") << 'x' << k;
  out << '\n';
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto p = cloud.point(i);
    for (std::size_t k = 0; k < p.size(); ++k)
      out << (k ? "," : "") << full(p[k]);
    out << '\n';
  }
}

}  // namespace tdakit
