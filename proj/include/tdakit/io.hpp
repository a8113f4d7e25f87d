#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "tdakit/partition_analysis.hpp"
#include "tdakit/persistence.hpp"

namespace tdakit {

// Barcode documents are JSON:
//   {"format": "tdakit-barcode", "version": 1, "label": ..., "n_points": ...,
//    "max_dimension": ..., "enclosing_diameter": ...,
//    "intervals": [{"dim": k, "birth": b, "death": d | "inf"}, ...]}
// Numbers are written in shortest round-trip form, so a write/read cycle is
// lossless. Simplex indices are not stored.
void write_barcode(std::ostream& out, const Barcode& barcode);
Barcode read_barcode(std::istream& in);

void save_barcode(const std::string& path, const Barcode& barcode);
Barcode load_barcode(const std::string& path);

// Rules documents are JSON:
//   {"damage": {"name": "damage", "index_after": 3475},
//    "bands": [{"name": "freezing", "below": 0},
//              {"name": "cold", "from": 0, "below": 4},
//              {"name": "warm", "from": 4}]}
PartitionSpec read_partition_spec(std::istream& in);
PartitionSpec load_partition_spec(const std::string& path);
void write_partition_spec(std::ostream& out, const PartitionSpec& spec);

void write_report(std::ostream& out, const WassersteinReport& report);
WassersteinReport read_report(std::istream& in);
void write_sweep(std::ostream& out, std::span<const SweepRow> rows);

// Human-readable tables: the distance matrix with 2 decimals, and the
// summed / scaled table with 3 decimals.
void print_matrix_table(std::ostream& out, const WassersteinReport& report);
void print_sums_table(std::ostream& out, const WassersteinReport& report);

// Barcode plot data, CSV with header "bar,dimension,birth,death,essential".
// One row per interval sorted by (dimension, birth); essential bars end at
// 1.05 x the enclosing diameter and carry essential = 1.
void write_barcode_plot(std::ostream& out, const Barcode& barcode);

// Sweep plot data, CSV with header
// "series,partition,fraction,target_size,n_points,value" where series is
// "raw" (row sums) or "scaled" (row sums / n_points).
void write_sweep_series(std::ostream& out, std::span<const SweepRow> rows);

// Point cloud as delimited text with header x0,x1,...
void write_point_cloud(std::ostream& out, const PointCloud& cloud);

}  // namespace tdakit
