#include "tptmap/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace tptmap {

CellList::CellList(const PointCloud& cloud, double radius) {
  const std::size_t n = cloud.size();
  const std::size_t binned = std::min<std::size_t>(cloud.dim(), 3);
  const auto& topo = cloud.topology();
  const double cap = std::max(1.0, std::floor(std::pow(4.0 * static_cast<double>(n),
                                                       1.0 / static_cast<double>(std::max<std::size_t>(binned, 1)))));

  std::vector<std::size_t> ncell(binned, 1);
  std::vector<double> lo(binned, 0.0), width(binned, 1.0);
  for (std::size_t k = 0; k < binned; ++k) {
    double extent;
    if (topo.is_periodic(k)) {
      lo[k] = -0.5 * topo.period(k);
      extent = topo.period(k);
    } else {
      const auto col = cloud.points().col(static_cast<Eigen::Index>(k));
      lo[k] = col.minCoeff();
      extent = col.maxCoeff() - lo[k];
    }
    double cells = (radius > 0.0 && extent > 0.0) ? std::floor(extent / radius) : 1.0;
    cells = std::clamp(cells, 1.0, cap);
    ncell[k] = static_cast<std::size_t>(cells);
    width[k] = extent > 0.0 ? extent / cells : 1.0;
  }

  std::size_t total = 1;
  for (auto c : ncell) total *= c;

  cell_of_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t id = 0;
    for (std::size_t k = 0; k < binned; ++k) {
      auto b = static_cast<long long>(std::floor((cloud(i, k) - lo[k]) / width[k]));
      b = std::clamp<long long>(b, 0, static_cast<long long>(ncell[k]) - 1);
      id = id * ncell[k] + static_cast<std::size_t>(b);
    }
    cell_of_[i] = id;
  }

  cell_start_.assign(total + 1, 0);
  for (auto c : cell_of_) ++cell_start_[c + 1];
  for (std::size_t c = 0; c < total; ++c) cell_start_[c + 1] += cell_start_[c];
  members_.resize(n);
  std::vector<std::size_t> fill(cell_start_.begin(), cell_start_.end() - 1);
  for (std::size_t i = 0; i < n; ++i) members_[fill[cell_of_[i]]++] = i;

  // Neighbour stencil per cell, with periodic wrap and deduplication.
  neighbour_cells_.resize(total);
  std::vector<std::size_t> coord(binned);
  for (std::size_t c = 0; c < total; ++c) {
    std::size_t rem = c;
    for (std::size_t k = binned; k-- > 0;) {
      coord[k] = rem % ncell[k];
      rem /= ncell[k];
    }
    std::vector<std::size_t> ids{0};
    for (std::size_t k = 0; k < binned; ++k) {
      std::set<std::size_t> axis;
      for (int off = -1; off <= 1; ++off) {
        long long b = static_cast<long long>(coord[k]) + off;
        const auto nk = static_cast<long long>(ncell[k]);
        if (topo.is_periodic(k)) {
          b = ((b % nk) + nk) % nk;
        } else if (b < 0 || b >= nk) {
          continue;
        }
        axis.insert(static_cast<std::size_t>(b));
      }
      std::vector<std::size_t> next;
      next.reserve(ids.size() * axis.size());
      for (auto base : ids)
        for (auto b : axis) next.push_back(base * ncell[k] + b);
      ids = std::move(next);
    }
    std::sort(ids.begin(), ids.end());
    neighbour_cells_[c] = std::move(ids);
  }
}

}  // namespace tptmap
