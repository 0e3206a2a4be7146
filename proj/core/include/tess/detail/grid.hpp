#pragma once

#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "tess/geometry.hpp"

namespace tess::detail {

// Uniform hash grid over 2-D points.  Neighborhood queries visit the 3x3
// block of cells around a point, which covers every point within one cell
// size of it.
class PointGrid {
 public:
  explicit PointGrid(double cell) : cell_(cell) {}

  void insert(Point2 p, int id) { cells_[key(p)].push_back(id); }

  template <typename Fn>
  void for_neighbors(Point2 p, Fn&& fn) const {
    const auto [cx, cy] = coords(p);
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        auto it = cells_.find(pack(cx + dx, cy + dy));
        if (it == cells_.end()) continue;
        for (int id : it->second) fn(id);
      }
    }
  }

 private:
  std::pair<std::int64_t, std::int64_t> coords(Point2 p) const {
    return {static_cast<std::int64_t>(std::floor(p.x / cell_)),
            static_cast<std::int64_t>(std::floor(p.y / cell_))};
  }
  static std::uint64_t pack(std::int64_t x, std::int64_t y) {
    return static_cast<std::uint64_t>(x) * 0x9E3779B97F4A7C15ull ^
           static_cast<std::uint64_t>(y);
  }
  std::uint64_t key(Point2 p) const {
    const auto [cx, cy] = coords(p);
    return pack(cx, cy);
  }

  double cell_;
  std::unordered_map<std::uint64_t, std::vector<int>> cells_;
};

}  // namespace tess::detail
