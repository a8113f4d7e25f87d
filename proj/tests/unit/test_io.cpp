#include <doctest.h>

#include <sstream>

#include "tdakit/barcode_metrics.hpp"
#include "tdakit/errors.hpp"
#include "tdakit/io.hpp"
#include "tdakit/synthetic.hpp"

using namespace tdakit;

TEST_CASE("barcode round trip is lossless") {
  auto b = barcode_of(sample({ManifoldKind::Torus, 80, 0.01, 2}), {2});
  b.intervals.back().unverified = true;
  std::ostringstream out;
  write_barcode(out, b);
  std::istringstream in(out.str());
  const auto r = read_barcode(in);
  CHECK(r.label == b.label);
  CHECK(r.n_points == b.n_points);
  CHECK(r.max_dimension == b.max_dimension);
  CHECK(r.enclosing_diameter == b.enclosing_diameter);
  REQUIRE(r.intervals.size() == b.intervals.size());
  for (std::size_t i = 0; i < r.intervals.size(); ++i) {
    CHECK(r.intervals[i].dimension == b.intervals[i].dimension);
    CHECK(r.intervals[i].birth == b.intervals[i].birth);
    CHECK(r.intervals[i].death == b.intervals[i].death);
    CHECK(r.intervals[i].unverified == b.intervals[i].unverified);
  }
  CHECK(wasserstein_distance(r, b) == 0.0);
  std::ostringstream again;
  write_barcode(again, r);
  CHECK(again.str() == out.str());
}

TEST_CASE("malformed barcode documents") {
  for (const char* text : {
           "not json",
           "{\"format\": \"something-else\"}",
           "{\"format\": \"tdakit-barcode\", \"label\": \"x\"}",
           "{\"format\":\"tdakit-barcode\",\"label\":\"x\",\"n_points\":1,"
           "\"max_dimension\":1,\"enclosing_diameter\":0,\"intervals\":"
           "[{\"dim\":0,\"birth\":2,\"death\":1}]}",
           "{\"format\":\"tdakit-barcode\",\"label\":\"x\",\"n_points\":1,"
           "\"max_dimension\":1,\"enclosing_diameter\":0,\"intervals\":"
           "[{\"dim\":0,\"birth\":0,\"death\":\"forever\"}]}",
       }) {
    std::istringstream in(text);
    CHECK_THROWS_AS(read_barcode(in), ParseError);
  }
  CHECK_THROWS_AS(load_barcode("/nonexistent/file.json"), IoError);
}

TEST_CASE("rules round trip") {
  std::ostringstream out;
  write_partition_spec(out, PartitionSpec::z24());
  std::istringstream in(out.str());
  const auto spec = read_partition_spec(in);
  CHECK(spec.names() == PartitionSpec::z24().names());
  CHECK(spec.damage->index_after == 3475);
  CHECK(*spec.bands[1].from == 0.0);
  CHECK(*spec.bands[1].below == 4.0);

  std::istringstream gap(
      "{\"bands\":[{\"name\":\"a\",\"below\":0},{\"name\":\"b\",\"from\":1}]}");
  CHECK_THROWS_AS(read_partition_spec(gap), ParseError);
}

TEST_CASE("report round trip and tables") {
  WassersteinReport r;
  r.labels = {"warm", "damage"};
  r.matrix = {{0.0, 9.386}, {9.386, 0.0}};
  r.row_sums = {9.386, 9.386};
  r.n_points = {100, 50};
  r.scaled_sums = {0.09386, 0.18772};
  std::ostringstream out;
  write_report(out, r);
  std::istringstream in(out.str());
  const auto back = read_report(in);
  CHECK(back.matrix == r.matrix);
  CHECK(back.scaled_sums == r.scaled_sums);
  CHECK(out.str().find("\"ranking\"") != std::string::npos);

  std::ostringstream table;
  print_matrix_table(table, r);
  CHECK(table.str().find("9.39") != std::string::npos);
  CHECK(table.str().find("9.386") == std::string::npos);
  std::ostringstream sums;
  print_sums_table(sums, r);
  CHECK(sums.str().find("Scaled Wasserstein Sum") != std::string::npos);
  CHECK(sums.str().find("0.188") != std::string::npos);
}

TEST_CASE("barcode plot data") {
  const auto b = barcode_of(sample({ManifoldKind::Circle, 60, 0.0, 1}));
  std::ostringstream out;
  write_barcode_plot(out, b);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "bar,dimension,birth,death,essential");
  std::size_t count = 0, essential = 0;
  int last_dim = 0;
  double last_birth = -1.0;
  while (std::getline(in, line)) {
    ++count;
    std::istringstream row(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() == 5);
    const int dim = std::stoi(cells[1]);
    const double birth = std::stod(cells[2]);
    if (dim == last_dim) CHECK(birth >= last_birth);
    CHECK(dim >= last_dim);
    last_dim = dim;
    last_birth = birth;
    if (cells[4] == "1") {
      ++essential;
      CHECK(std::stod(cells[3]) == doctest::Approx(1.05 * b.enclosing_diameter));
    }
  }
  CHECK(count == b.intervals.size());
  CHECK(essential == 1);
}

TEST_CASE("empty dimension-1 barcode plots only dimension 0") {
  const auto b = barcode_of(PointCloud("p", {{0.0}, {1.0}, {3.0}}), {2});
  std::ostringstream out;
  write_barcode_plot(out, b);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(line.substr(line.find(',') + 1, 2) == "0,");
  }
  CHECK(rows == 3);
}
