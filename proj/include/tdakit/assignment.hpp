#pragma once

#include <cstddef>
#include <vector>

namespace tdakit {

// Dense square cost matrix, row-major.
class CostMatrix {
 public:
  explicit CostMatrix(std::size_t n) : n_(n), cost_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t r, std::size_t c) { return cost_[r * n_ + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return cost_[r * n_ + c];
  }

 private:
  std::size_t n_;
  std::vector<double> cost_;
};

struct Assignment {
  std::vector<std::size_t> column_of_row;
  double cost = 0.0;
};

// Exact minimum-cost perfect matching (Hungarian method with potentials and
// shortest augmenting paths), O(n^3). Costs must be finite.
Assignment solve_assignment(const CostMatrix& cost);

}  // namespace tdakit
