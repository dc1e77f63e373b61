// Copyright 2026 The storvalue Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STORVALUE_ORDER_STATISTICS_H_
#define STORVALUE_ORDER_STATISTICS_H_

#include <algorithm>
#include <cmath>
#include <span>

#include "storvalue/error.h"

namespace storvalue {

// Index of the smallest order statistic whose empirical coverage
// k/n reaches `percent`/100, for 0 < percent <= 100. No interpolation.
inline std::size_t CoverageIndex(std::size_t n, double percent) {
  if (n == 0) throw ValidationError("empty sample set");
  if (!(percent > 0.0 && percent <= 100.0)) {
    throw ValidationError("percentile must lie in (0, 100]");
  }
  // Smallest k with k * 100 >= percent * n; the slack absorbs rounding in
  // products such as 0.8 * 5.
  const double exact = percent * static_cast<double>(n) / 100.0;
  double k = std::ceil(exact - 1e-9 * std::max(1.0, exact));
  if (k < 1.0) k = 1.0;
  if (k > static_cast<double>(n)) k = static_cast<double>(n);
  return static_cast<std::size_t>(k) - 1;
}

// `sorted` must be ascending.
inline double LowerOrderStatistic(std::span<const double> sorted,
                                  double percent) {
  return sorted[CoverageIndex(sorted.size(), percent)];
}

}  // namespace storvalue

#endif  // STORVALUE_ORDER_STATISTICS_H_
