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

#include "triwave/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "triwave/error.hpp"

namespace triwave {

TridiagonalEigen tridiagonal_eigen(std::span<const double> diag,
                                   std::span<const double> offdiag) {
  const int n = static_cast<int>(diag.size());
  if (n == 0) {
    throw InvalidInput("tridiagonal_eigen: empty matrix");
  }
  if (static_cast<int>(offdiag.size()) != n - 1) {
    throw InvalidInput("tridiagonal_eigen: offdiag must have length d - 1");
  }

  std::vector<double> d(diag.begin(), diag.end());
  // e[i] couples i and i + 1; e[n - 1] is scratch.
  std::vector<double> e(n, 0.0);
  std::copy(offdiag.begin(), offdiag.end(), e.begin());
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);

  constexpr double kEps = std::numeric_limits<double>::epsilon();
  constexpr int kMaxSweeps = 60;
  double shift = 0.0;
  double tst1 = 0.0;

  for (int l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    int m = l;
    while (m < n - 1 && std::abs(e[m]) > kEps * tst1) {
      ++m;
    }

    if (m > l) {
      int sweeps = 0;
      do {
        if (++sweeps > kMaxSweeps) {
          throw Error("tridiagonal_eigen: QL iteration did not converge");
        }
        // Shift from the leading 2x2 submatrix.
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (int i = l + 2; i < n; ++i) d[i] -= h;
        shift += h;

        // Implicit QL sweep from m back to l.
        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (int i = m - 1; i >= l; --i) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);

          double* col_i = v.col(i).data();
          double* col_j = v.col(i + 1).data();
          for (int k = 0; k < n; ++k) {
            const double t = col_j[k];
            col_j[k] = s * col_i[k] + c * t;
            col_i[k] = c * col_i[k] - s * t;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > kEps * tst1);
    }
    d[l] += shift;
    e[l] = 0.0;
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return d[a] < d[b]; });

  TridiagonalEigen out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (int j = 0; j < n; ++j) {
    out.eigenvalues[j] = d[order[j]];
    out.eigenvectors.col(j) = v.col(order[j]);
  }
  return out;
}

}  // namespace triwave
