#pragma once

#include <vector>

namespace fovex {

// Row-parallel reduction with a fixed combine order: each row is accumulated
// serially, rows are combined serially 0..h-1. Results do not depend on the
// thread count.
template <class Acc, class RowFn>
Acc reduce_rows(int height, RowFn&& row) {
  std::vector<Acc> partial(size_t(height));
#pragma omp parallel for schedule(static)
  for (int y = 0; y < height; ++y) partial[size_t(y)] = row(y);
  Acc total{};
  for (const Acc& p : partial) total += p;
  return total;
}

}  // namespace fovex
