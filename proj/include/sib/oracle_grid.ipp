#pragma once

#include <cmath>
#include <vector>

namespace sib {

template <typename Visit>
void for_each_grid_point(const Vector& lower, const Vector& upper, double h, Visit&& visit) {
  const Eigen::Index n = lower.size();
  std::vector<long> counts(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    counts[static_cast<std::size_t>(j)] =
        static_cast<long>(std::floor((upper[j] - lower[j]) / h + 0.5)) + 1;
  }
  std::vector<long> index(static_cast<std::size_t>(n), 0);
  Vector point = lower;
  while (true) {
    for (Eigen::Index j = 0; j < n; ++j) {
      point[j] = lower[j] + h * static_cast<double>(index[static_cast<std::size_t>(j)]);
    }
    visit(static_cast<const Vector&>(point));
    Eigen::Index j = n - 1;
    while (j >= 0) {
      auto& slot = index[static_cast<std::size_t>(j)];
      if (++slot < counts[static_cast<std::size_t>(j)]) break;
      slot = 0;
      --j;
    }
    if (j < 0) return;
  }
}

}  // namespace sib
