#pragma once

#include "tptmap/geometry.hpp"

#include <cstddef>
#include <vector>

namespace tptmap {

/// Uniform cell binning over (at most) the first three coordinates of a point
/// cloud. Every pair whose minimum-image separation is <= radius in each
/// binned coordinate is reported as a candidate; callers apply the exact test.
class CellList {
 public:
  CellList(const PointCloud& cloud, double radius);

  /// Candidate neighbours of point i (including i itself), in ascending
  /// cell order and ascending index within a cell.
  template <class Fn>
  void for_each_candidate(std::size_t i, Fn&& fn) const {
    const auto& cells = neighbour_cells_[cell_of_[i]];
    for (std::size_t c : cells) {
      for (std::size_t p = cell_start_[c]; p < cell_start_[c + 1]; ++p) fn(members_[p]);
    }
  }

  std::size_t cell_count() const noexcept { return cell_start_.size() - 1; }

 private:
  std::vector<std::size_t> cell_of_;
  std::vector<std::size_t> cell_start_;
  std::vector<std::size_t> members_;
  std::vector<std::vector<std::size_t>> neighbour_cells_;
};

}  // namespace tptmap
