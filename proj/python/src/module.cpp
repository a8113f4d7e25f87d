#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "tdakit/barcode_metrics.hpp"
#include "tdakit/errors.hpp"
#include "tdakit/io.hpp"
#include "tdakit/metric_space.hpp"
#include "tdakit/partition_analysis.hpp"
#include "tdakit/persistence.hpp"
#include "tdakit/synthetic.hpp"
#include "tdakit/vr_filtration.hpp"

namespace py = pybind11;
using namespace tdakit;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

PointCloud to_cloud(const Array& points, std::string label) {
  if (points.ndim() != 2)
    throw py::value_error("points must be a 2-d array of shape (n, d)");
  const auto n = static_cast<std::size_t>(points.shape(0));
  const auto d = static_cast<std::size_t>(points.shape(1));
  std::vector<double> coords(points.data(), points.data() + n * d);
  return PointCloud(std::move(label), d, std::move(coords));
}

Array to_array(const PointCloud& cloud) {
  Array out({cloud.size(), cloud.dimension()});
  std::copy(cloud.coordinates().begin(), cloud.coordinates().end(),
            out.mutable_data());
  return out;
}

std::vector<PointCloud> to_clouds(const py::dict& clouds) {
  std::vector<PointCloud> out;
  for (const auto& [key, value] : clouds)
    out.push_back(to_cloud(value.cast<Array>(), key.cast<std::string>()));
  return out;
}

WassersteinConfig make_config(double p, std::optional<std::set<int>> dims,
                              const std::string& essential) {
  WassersteinConfig cfg;
  cfg.p = p;
  cfg.dimensions = std::move(dims);
  cfg.essential = essential_policy_from_string(essential);
  return cfg;
}

AnalysisParams make_params(int max_dimension, std::optional<double> cap,
                           std::size_t budget, double p,
                           std::optional<std::set<int>> dims,
                           const std::string& essential, std::size_t threads) {
  return {{max_dimension, cap, budget},
          make_config(p, std::move(dims), essential),
          threads};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "tdakit core: Rips persistence, Wasserstein distances, partitions";

  static py::exception<Error> base_error(m, "TdakitError");
  static py::exception<CapacityError> capacity_error(m, "CapacityError",
                                                     base_error.ptr());
  static py::exception<IncomparableError> incomparable_error(
      m, "IncomparableError", base_error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const CapacityError& e) {
      py::set_error(capacity_error, e.what());
    } catch (const IncomparableError& e) {
      py::set_error(incomparable_error, e.what());
    } catch (const Error& e) {
      py::set_error(base_error, e.what());
    }
  });

  py::class_<Barcode>(m, "Barcode")
      .def_readonly("label", &Barcode::label)
      .def_readonly("n_points", &Barcode::n_points)
      .def_readonly("max_dimension", &Barcode::max_dimension)
      .def_readonly("enclosing_diameter", &Barcode::enclosing_diameter)
      .def_property_readonly(
          "intervals",
          [](const Barcode& b) {
            std::vector<std::tuple<int, double, double, bool>> out;
            for (const auto& iv : b.intervals)
              out.emplace_back(iv.dimension, iv.birth, iv.death, iv.unverified);
            return out;
          },
          "List of (dimension, birth, death, unverified); death is inf for "
          "essential classes.")
      .def("to_json",
           [](const Barcode& b) {
             std::ostringstream os;
             write_barcode(os, b);
             return os.str();
           })
      .def_static("from_json",
                  [](const std::string& text) {
                    std::istringstream is(text);
                    return read_barcode(is);
                  })
      .def("__len__", [](const Barcode& b) { return b.intervals.size(); })
      .def("__repr__", [](const Barcode& b) {
        return "<Barcode '" + b.label + "' " + std::to_string(b.intervals.size()) +
               " intervals, max_dimension " + std::to_string(b.max_dimension) + ">";
      });

  py::class_<WassersteinReport>(m, "WassersteinReport")
      .def_readonly("labels", &WassersteinReport::labels)
      .def_readonly("matrix", &WassersteinReport::matrix)
      .def_readonly("row_sums", &WassersteinReport::row_sums)
      .def_readonly("n_points", &WassersteinReport::n_points)
      .def_readonly("scaled_sums", &WassersteinReport::scaled_sums);

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("fraction", &SweepRow::fraction)
      .def_readonly("target_size", &SweepRow::target_size)
      .def_readonly("report", &SweepRow::report);

  m.def(
      "pairwise_distances",
      [](const Array& points) {
        const auto dist = pairwise_distances(to_cloud(points, "points"));
        Array out({dist.size(), dist.size()});
        std::copy(dist.entries().begin(), dist.entries().end(),
                  out.mutable_data());
        return out;
      },
      py::arg("points"), "Euclidean distance matrix of an (n, d) array.");

  m.def(
      "compute_persistence",
      [](const Array& points, int max_dimension, std::optional<double> cap,
         std::size_t budget, std::string label, bool report_top_dimension) {
        const auto cloud = to_cloud(points, std::move(label));
        py::gil_scoped_release release;
        PersistenceOptions opts;
        opts.report_top_dimension = report_top_dimension;
        return barcode_of(cloud, {max_dimension, cap, budget}, opts);
      },
      py::arg("points"), py::arg("max_dimension") = 2,
      py::arg("diameter_cap") = py::none(),
      py::arg("budget") = kDefaultSimplexBudget, py::arg("label") = "points",
      py::arg("report_top_dimension") = false,
      "Vietoris-Rips barcode of an (n, d) point array. Filtration values are "
      "diameters.");

  m.def("betti_numbers_at", &betti_numbers_at, py::arg("barcode"),
        py::arg("epsilon"),
        "Betti numbers at ball radius epsilon (diameter 2 * epsilon).");

  m.def(
      "wasserstein_distance",
      [](const Barcode& a, const Barcode& b, double p,
         std::optional<std::set<int>> dims, const std::string& essential) {
        return wasserstein_distance(a, b, make_config(p, std::move(dims), essential));
      },
      py::arg("b1"), py::arg("b2"), py::arg("p") = 2.0,
      py::arg("dimensions") = py::none(), py::arg("essential") = "truncate");

  m.def(
      "wasserstein",
      [](const Barcode& a, const Barcode& b, double p,
         std::optional<std::set<int>> dims, const std::string& essential) {
        const auto r = wasserstein(a, b, make_config(p, std::move(dims), essential));
        py::dict out;
        out["distance"] = r.distance;
        out["per_dimension"] = r.per_dimension;
        py::dict matchings;
        for (const auto& [dim, mt] : r.matchings) {
          py::dict d;
          d["pairs"] = mt.pairs;
          d["unmatched_1"] = mt.unmatched_1;
          d["unmatched_2"] = mt.unmatched_2;
          matchings[py::int_(dim)] = d;
        }
        out["matchings"] = matchings;
        return out;
      },
      py::arg("b1"), py::arg("b2"), py::arg("p") = 2.0,
      py::arg("dimensions") = py::none(), py::arg("essential") = "truncate",
      "Distance, per-dimension distances and the optimal matching (indices "
      "into each barcode's intervals).");

  m.def(
      "sample",
      [](const std::string& kind, std::size_t n, std::uint64_t seed,
         double noise_sigma, double scale, std::size_t ambient_dimension) {
        ManifoldSpec spec{manifold_kind_from_string(kind), n, noise_sigma, seed,
                          scale, ambient_dimension};
        return to_array(sample(spec));
      },
      py::arg("kind"), py::arg("n"), py::arg("seed") = 0,
      py::arg("noise_sigma") = 0.0, py::arg("scale") = 1.0,
      py::arg("ambient_dimension") = 2);

  m.def(
      "split_random_halves",
      [](const Array& points, std::uint64_t seed) {
        const auto halves = split_random_halves(to_cloud(points, "points"), seed);
        return py::make_tuple(to_array(halves.first), to_array(halves.second));
      },
      py::arg("points"), py::arg("seed"));

  m.def(
      "partition_records",
      [](const Array& features, const std::vector<std::optional<double>>& temperatures,
         std::optional<std::vector<std::size_t>> indices,
         std::optional<std::string> rules_json) {
        const auto cloud = to_cloud(features, "records");
        if (temperatures.size() != cloud.size())
          throw py::value_error("temperatures must have one entry per row");
        if (indices && indices->size() != cloud.size())
          throw py::value_error("indices must have one entry per row");
        std::vector<FeatureRecord> records(cloud.size());
        for (std::size_t i = 0; i < cloud.size(); ++i) {
          const auto p = cloud.point(i);
          records[i].features.assign(p.begin(), p.end());
          records[i].temperature = temperatures[i];
          records[i].index = indices ? (*indices)[i] : i + 1;
        }
        PartitionSpec spec = PartitionSpec::z24();
        if (rules_json) {
          std::istringstream is(*rules_json);
          spec = read_partition_spec(is);
        }
        py::dict out;
        for (const auto& c : partition_records(records, spec))
          out[py::str(c.label())] = to_array(c);
        return out;
      },
      py::arg("features"), py::arg("temperatures"), py::arg("indices") = py::none(),
      py::arg("rules_json") = py::none(),
      "Split rows into partitions (default rules: freezing/cold/warm/damage).");

  m.def(
      "pairwise_report",
      [](const py::dict& clouds, double p, std::optional<std::set<int>> dims,
         const std::string& essential, int max_dimension,
         std::optional<double> cap, std::size_t budget, std::size_t threads) {
        const auto cs = to_clouds(clouds);
        const auto params =
            make_params(max_dimension, cap, budget, p, std::move(dims), essential, threads);
        py::gil_scoped_release release;
        return pairwise_report(cs, params);
      },
      py::arg("clouds"), py::arg("p") = 2.0, py::arg("dimensions") = py::none(),
      py::arg("essential") = "truncate", py::arg("max_dimension") = 2,
      py::arg("diameter_cap") = py::none(),
      py::arg("budget") = kDefaultSimplexBudget, py::arg("threads") = 1,
      "Pairwise Wasserstein report over a dict of name -> (n, d) array.");

  m.def(
      "partition_size_sweep",
      [](const py::dict& clouds, const std::string& target,
         const std::vector<double>& fractions, std::uint64_t seed, double p,
         std::optional<std::set<int>> dims, const std::string& essential,
         int max_dimension, std::optional<double> cap, std::size_t budget,
         bool include_halves, std::size_t threads) {
        const auto cs = to_clouds(clouds);
        const auto params =
            make_params(max_dimension, cap, budget, p, std::move(dims), essential, threads);
        py::gil_scoped_release release;
        return partition_size_sweep(cs, target, fractions, seed, params,
                                    include_halves);
      },
      py::arg("clouds"), py::arg("target"), py::arg("fractions"),
      py::arg("seed") = 0, py::arg("p") = 2.0, py::arg("dimensions") = py::none(),
      py::arg("essential") = "truncate", py::arg("max_dimension") = 2,
      py::arg("diameter_cap") = py::none(),
      py::arg("budget") = kDefaultSimplexBudget, py::arg("include_halves") = true,
      py::arg("threads") = 1);

  m.def("rank_partitions", &rank_partitions, py::arg("report"),
        "(name, scaled_sum) pairs, largest scaled sum first.");
}
