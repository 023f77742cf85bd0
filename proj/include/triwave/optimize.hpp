// Copyright 2026 The triwave Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TRIWAVE_OPTIMIZE_HPP
#define TRIWAVE_OPTIMIZE_HPP

#include <functional>

namespace triwave {

struct ScalarMaximum {
  double x = 0.0;
  double value = 0.0;
};

using ScalarFunction = std::function<double(double)>;

/// Golden-section search for the maximum of a unimodal function on
/// [lo, hi], stopping once the bracket is narrower than tol.
ScalarMaximum golden_section_maximize(const ScalarFunction& f, double lo,
                                      double hi, double tol);

/// Brent's method: successive parabolic interpolation with golden-section
/// fallback steps. Same contract as golden_section_maximize.
ScalarMaximum parabolic_maximize(const ScalarFunction& f, double lo, double hi,
                                 double tol);

}  // namespace triwave

#endif  // TRIWAVE_OPTIMIZE_HPP
