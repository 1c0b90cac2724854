// Copyright 2026 The callboost Authors.
//
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

#ifndef CALLBOOST_WEIGHT_H_
#define CALLBOOST_WEIGHT_H_

#include <algorithm>
#include <cmath>
#include <limits>

namespace callboost {

// Tropical semiring weight. The value is a cost in negative natural-log
// probability units: Plus is min, Times is +, Zero is +inf, One is 0.
class TropicalWeight {
 public:
  constexpr TropicalWeight() : cost_(0.0) {}
  constexpr explicit TropicalWeight(double cost) : cost_(cost) {}

  static constexpr TropicalWeight Zero() {
    return TropicalWeight(std::numeric_limits<double>::infinity());
  }
  static constexpr TropicalWeight One() { return TropicalWeight(0.0); }

  constexpr double Value() const { return cost_; }
  bool IsZero() const { return std::isinf(cost_) && cost_ > 0; }
  bool IsFinite() const { return std::isfinite(cost_); }

  friend constexpr bool operator==(TropicalWeight a, TropicalWeight b) {
    return a.cost_ == b.cost_;
  }
  friend constexpr bool operator!=(TropicalWeight a, TropicalWeight b) {
    return !(a == b);
  }

 private:
  double cost_;
};

inline constexpr TropicalWeight Plus(TropicalWeight a, TropicalWeight b) {
  return a.Value() <= b.Value() ? a : b;
}

inline constexpr TropicalWeight Times(TropicalWeight a, TropicalWeight b) {
  return TropicalWeight(a.Value() + b.Value());
}

// Equality within tolerance; two +inf weights compare equal.
inline bool ApproxEqual(TropicalWeight a, TropicalWeight b,
                        double delta = 1e-9) {
  if (!a.IsFinite() || !b.IsFinite()) return a == b;
  return std::fabs(a.Value() - b.Value()) <= delta;
}

using Weight = TropicalWeight;

}  // namespace callboost

#endif  // CALLBOOST_WEIGHT_H_
