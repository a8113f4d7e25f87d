// tdakit: Vietoris-Rips persistence, barcode Wasserstein distances and
// partition comparison from the command line.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tdakit/barcode_metrics.hpp"
#include "tdakit/errors.hpp"
#include "tdakit/io.hpp"
#include "tdakit/metric_space.hpp"
#include "tdakit/partition_analysis.hpp"
#include "tdakit/persistence.hpp"
#include "tdakit/synthetic.hpp"
#include "tdakit/vr_filtration.hpp"

namespace {

using namespace tdakit;

constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;

const char* kExitCodes =
    "Exit codes:\n"
    "  0  success\n"
    "  1  internal error\n"
    "  2  usage error (unknown flag, bad value)\n"
    "  3  I/O error (missing or unwritable file)\n"
    "  4  malformed input (table, barcode or rules document)\n"
    "  5  capacity exceeded (filtration over the simplex budget)\n"
    "  6  incomparable barcodes (different max dimension)\n"
    "  7  data error (unclassifiable record, partition too small)\n";

struct TableOptions {
  std::string input;
  std::vector<std::string> features;
  std::string temperature;
  std::string index;
  char delimiter = ',';
  bool standardize = false;
};

struct FiltrationOptions {
  int max_dim = 2;
  std::optional<double> cap;
  std::size_t budget = kDefaultSimplexBudget;
};

struct DistanceOptions {
  double p = 2.0;
  std::vector<int> dims;
  std::string essential = "truncate";
};

void add_table_options(CLI::App* cmd, TableOptions& t, bool temperature_default) {
  cmd->add_option("--input", t.input, "Delimited table with a header row")
      ->required();
  cmd->add_option("--features", t.features,
                  "Feature columns (default: all except temperature/index)")
      ->delimiter(',');
  auto* temp = cmd->add_option("--temperature", t.temperature,
                               "Temperature column name");
  if (temperature_default) temp->default_val("temperature");
  cmd->add_option("--index", t.index,
                  "Index column name (default: 1-based row number)");
  cmd->add_option("--delimiter", t.delimiter, "Cell delimiter")
      ->default_val(',');
  cmd->add_flag("--standardize", t.standardize,
                "Z-score each feature axis before computing distances");
}

void add_filtration_options(CLI::App* cmd, FiltrationOptions& f) {
  cmd->add_option("--max-dim", f.max_dim,
                  "Largest simplex dimension; homology is reported below it")
      ->default_val(2)
      ->check(CLI::Range(0, 62));
  cmd->add_option("--cap", f.cap,
                  "Diameter cap (distance units); default: no truncation")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--budget", f.budget, "Simplex budget")
      ->default_val(kDefaultSimplexBudget);
}

void add_distance_options(CLI::App* cmd, DistanceOptions& d) {
  cmd->add_option("--p", d.p, "Wasserstein exponent p > 0")->default_val(2.0);
  cmd->add_option("--dims", d.dims,
                  "Homology dimensions to include (default: all)")
      ->delimiter(',');
  cmd->add_option("--essential", d.essential,
                  "Essential interval policy")
      ->default_val("truncate")
      ->check(CLI::IsMember({"truncate", "match-or-fail"}));
}

ColumnSpec column_spec(const TableOptions& t) {
  ColumnSpec spec;
  spec.features = t.features;
  if (!t.temperature.empty()) spec.temperature = t.temperature;
  if (!t.index.empty()) spec.index = t.index;
  spec.delimiter = t.delimiter;
  return spec;
}

FiltrationParams filtration_params(const FiltrationOptions& f) {
  return {f.max_dim, f.cap, f.budget};
}

WassersteinConfig wasserstein_config(const DistanceOptions& d) {
  WassersteinConfig cfg;
  if (!(d.p > 0.0)) throw CLI::ValidationError("--p", "must be > 0");
  cfg.p = d.p;
  if (!d.dims.empty()) cfg.dimensions = std::set<int>(d.dims.begin(), d.dims.end());
  cfg.essential = essential_policy_from_string(d.essential);
  return cfg;
}

void require_file(const std::string& path) {
  if (!std::filesystem::is_regular_file(path))
    throw IoError("no such file: '" + path + "'");
}

std::ifstream open_in(const std::string& path) {
  require_file(path);
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

// Writes to the file, or stdout when the path is empty or "-".
template <typename Writer>
void emit(const std::string& path, Writer&& writer) {
  if (path.empty() || path == "-") {
    writer(std::cout);
  } else {
    auto out = open_out(path);
    writer(out);
  }
}

std::vector<FeatureRecord> read_table(const TableOptions& t) {
  auto in = open_in(t.input);
  return load_records(in, column_spec(t));
}

PointCloud maybe_standardize(const PointCloud& c, bool on) {
  return on ? standardized(c) : c;
}

std::vector<PointCloud> partitions_from_table(const TableOptions& t,
                                              const std::string& rules_path) {
  const auto spec = rules_path.empty() ? PartitionSpec::z24()
                                       : load_partition_spec(rules_path);
  const auto records = read_table(t);
  auto clouds = partition_records(records, spec);
  if (t.standardize) {
    // Standardize with statistics of the whole table so partitions stay
    // comparable.
    const auto all = standardized(cloud_from_records("all", records));
    std::map<std::string, std::vector<std::size_t>> members;
    for (std::size_t i = 0; i < records.size(); ++i)
      members[spec.classify(records[i])].push_back(i);
    for (auto& c : clouds) c = all.select(members[c.label()], c.label());
  }
  return clouds;
}

std::string describe(const Barcode& b) {
  std::ostringstream os;
  os << "barcode '" << b.label << "': " << b.n_points << " points, max_dimension "
     << b.max_dimension << "\n";
  for (int k = 0; k <= b.max_dimension; ++k) {
    std::size_t finite = 0, essential = 0;
    for (const auto& iv : b.intervals) {
      if (iv.dimension != k) continue;
      (iv.essential() ? essential : finite)++;
    }
    if (finite + essential == 0) continue;
    os << "  H" << k << ": " << finite << " finite, " << essential
       << " essential\n";
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vietoris-Rips persistent homology, barcode Wasserstein "
               "distances and normalised partition comparison"};
  app.footer(kExitCodes);
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "Sample a synthetic point cloud");
  std::string kind, synth_out;
  ManifoldSpec mspec;
  synth->add_option("--kind", kind,
                    "circle | two_clusters | sphere_2 | torus | figure_eight | "
                    "uniform_noise")
      ->required()
      ->check(CLI::IsMember({"circle", "two_clusters", "sphere_2", "torus",
                             "figure_eight", "uniform_noise"}));
  synth->add_option("--n", mspec.n, "Number of points")->default_val(100)
      ->check(CLI::PositiveNumber);
  synth->add_option("--seed", mspec.seed, "Random seed")->default_val(0);
  synth->add_option("--noise", mspec.noise_sigma, "Gaussian noise sd")
      ->default_val(0.0)->check(CLI::NonNegativeNumber);
  synth->add_option("--scale", mspec.scale, "Size parameter")->default_val(1.0)
      ->check(CLI::PositiveNumber);
  synth->add_option("--dim", mspec.ambient_dimension,
                    "Ambient dimension (uniform_noise)")
      ->default_val(2)->check(CLI::PositiveNumber);
  synth->add_option("--out", synth_out, "Output CSV (default: stdout)");

  // compute
  auto* compute = app.add_subcommand("compute", "Compute a persistence barcode");
  TableOptions compute_table;
  FiltrationOptions compute_filt;
  std::string compute_out, compute_plot, compute_dump, compute_label;
  bool top_dimension = false;
  add_table_options(compute, compute_table, false);
  add_filtration_options(compute, compute_filt);
  compute->add_option("--label", compute_label,
                      "Barcode label (default: input file stem)");
  compute->add_flag("--top-dimension", top_dimension,
                    "Also report unverified essential classes in the top "
                    "dimension");
  compute->add_option("--out", compute_out, "Barcode file (default: stdout)");
  compute->add_option("--plot", compute_plot, "Barcode plot-series CSV");
  compute->add_option("--dump-filtration", compute_dump,
                      "Write the filtration, one simplex per line");

  // distance
  auto* distance = app.add_subcommand(
      "distance", "p-Wasserstein distance between two barcode files");
  std::string barcode1, barcode2;
  DistanceOptions distance_opts;
  distance->add_option("barcode1", barcode1)->required();
  distance->add_option("barcode2", barcode2)->required();
  add_distance_options(distance, distance_opts);

  // partition
  auto* partition = app.add_subcommand(
      "partition", "Partition records and compare the partitions' barcodes");
  TableOptions part_table;
  FiltrationOptions part_filt;
  DistanceOptions part_dist;
  std::string rules_path, part_out, part_target = "warm";
  bool no_subsets = false;
  std::uint64_t part_seed = 0;
  std::size_t part_threads = 1;
  add_table_options(partition, part_table, true);
  add_filtration_options(partition, part_filt);
  add_distance_options(partition, part_dist);
  partition->add_option("--rules", rules_path,
                        "Rules document (default: freezing/cold/warm/damage)");
  partition->add_flag("--no-subsets", no_subsets,
                      "Do not add the two random halves of the target");
  partition->add_option("--target", part_target,
                        "Partition split into random halves")
      ->default_val("warm");
  partition->add_option("--seed", part_seed, "Random seed")->default_val(0);
  partition->add_option("--threads", part_threads, "Worker threads")
      ->default_val(1)->check(CLI::PositiveNumber);
  partition->add_option("--out", part_out, "Report document (JSON)");

  // scan
  auto* scan = app.add_subcommand(
      "scan", "Sweep the target partition size and recompute the report");
  TableOptions scan_table;
  FiltrationOptions scan_filt;
  DistanceOptions scan_dist;
  std::string scan_rules, scan_out, scan_series, scan_target = "warm";
  std::vector<double> fractions;
  bool scan_no_subsets = false;
  std::uint64_t scan_seed = 0;
  std::size_t scan_threads = 1;
  add_table_options(scan, scan_table, true);
  add_filtration_options(scan, scan_filt);
  add_distance_options(scan, scan_dist);
  scan->add_option("--rules", scan_rules, "Rules document");
  scan->add_option("--fractions", fractions, "Ascending fractions in (0, 1]")
      ->delimiter(',')
      ->default_str("0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1.0");
  scan->add_flag("--no-subsets", scan_no_subsets,
                 "Do not add the two random halves of the target");
  scan->add_option("--target", scan_target, "Partition to subsample")
      ->default_val("warm");
  scan->add_option("--seed", scan_seed, "Random seed")->default_val(0);
  scan->add_option("--threads", scan_threads, "Worker threads")
      ->default_val(1)->check(CLI::PositiveNumber);
  scan->add_option("--out", scan_out, "Sweep document (JSON)");
  scan->add_option("--series", scan_series,
                   "Plot series CSV of raw and scaled row sums");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*synth) {
      mspec.kind = manifold_kind_from_string(kind);
      const auto cloud = sample(mspec);
      emit(synth_out, [&](std::ostream& o) { write_point_cloud(o, cloud); });
    } else if (*compute) {
      require_file(compute_table.input);
      const auto label =
          compute_label.empty()
              ? std::filesystem::path(compute_table.input).stem().string()
              : compute_label;
      auto in = open_in(compute_table.input);
      const auto cloud = maybe_standardize(
          load_point_cloud(in, column_spec(compute_table), label),
          compute_table.standardize);
      const auto filt = build_filtration(pairwise_distances(cloud),
                                         filtration_params(compute_filt));
      if (!compute_dump.empty()) {
        auto out = open_out(compute_dump);
        write_filtration(out, filt);
      }
      PersistenceOptions popts;
      popts.report_top_dimension = top_dimension;
      auto barcode = compute_persistence(filt, popts);
      barcode.label = label;
      emit(compute_out, [&](std::ostream& o) { write_barcode(o, barcode); });
      if (!compute_plot.empty()) {
        auto out = open_out(compute_plot);
        write_barcode_plot(out, barcode);
      }
      if (!compute_out.empty() && compute_out != "-") std::cout << describe(barcode);
    } else if (*distance) {
      require_file(barcode1);
      require_file(barcode2);
      const auto cfg = wasserstein_config(distance_opts);
      const auto b1 = load_barcode(barcode1);
      const auto b2 = load_barcode(barcode2);
      const auto result = wasserstein(b1, b2, cfg);
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.2f", result.distance);
      std::cout << "W" << cfg.p << " distance: " << buf << '\n';
      std::snprintf(buf, sizeof buf, "%.17g", result.distance);
      std::cout << "full precision: " << buf << '\n';
      for (const auto& [dim, d] : result.per_dimension) {
        std::snprintf(buf, sizeof buf, "%.17g", d);
        std::cout << "  H" << dim << ": " << buf << '\n';
      }
    } else if (*partition) {
      require_file(part_table.input);
      if (!rules_path.empty()) require_file(rules_path);
      AnalysisParams params{filtration_params(part_filt),
                            wasserstein_config(part_dist), part_threads};
      auto clouds = partitions_from_table(part_table, rules_path);
      if (!no_subsets) clouds = with_random_halves(std::move(clouds), part_target, part_seed);
      const auto report = pairwise_report(clouds, params);
      std::cout << "Wasserstein distances\n";
      print_matrix_table(std::cout, report);
      std::cout << "\nSummed and scaled Wasserstein distances\n";
      print_sums_table(std::cout, report);
      if (!part_out.empty()) {
        auto out = open_out(part_out);
        write_report(out, report);
      }
    } else if (*scan) {
      require_file(scan_table.input);
      if (!scan_rules.empty()) require_file(scan_rules);
      if (fractions.empty())
        fractions = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
      AnalysisParams params{filtration_params(scan_filt),
                            wasserstein_config(scan_dist), scan_threads};
      const auto clouds = partitions_from_table(scan_table, scan_rules);
      const auto rows = partition_size_sweep(clouds, scan_target, fractions,
                                             scan_seed, params, !scan_no_subsets);
      for (const auto& row : rows) {
        std::cout << "fraction " << row.fraction << " (" << scan_target
                  << " size " << row.target_size << ")\n";
        print_sums_table(std::cout, row.report);
        std::cout << '\n';
      }
      if (!scan_out.empty()) {
        auto out = open_out(scan_out);
        write_sweep(out, rows);
      }
      if (!scan_series.empty()) {
        auto out = open_out(scan_series);
        write_sweep_series(out, rows);
      }
    }
  } catch (const tdakit::Error& e) {
    std::cerr << "tdakit: " << e.what() << '\n';
    return static_cast<int>(e.kind());
  } catch (const CLI::ValidationError& e) {
    std::cerr << "tdakit: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "tdakit: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "tdakit: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return 0;
}
