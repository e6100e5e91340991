// Copyright 2026 The tpfollow Authors
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

#include "tpf/linalg.hpp"

#include <algorithm>

namespace tpf {

std::array<double, 4> sym4_eigenvalues(const SymMatrix4& m) {
  double a[4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a[i][j] = m.at(i, j);

  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-300) break;

    for (int p = 0; p < 4; ++p) {
      for (int q = p + 1; q < 4; ++q) {
        const double apq = a[p][q];
        if (apq == 0.0) continue;
        const double diff = a[q][q] - a[p][p];
        double t;
        if (std::abs(apq) < 1e-30 * std::abs(diff)) {
          t = apq / diff;
        } else {
          const double phi = diff / (2.0 * apq);
          t = 1.0 / (std::abs(phi) + std::sqrt(phi * phi + 1.0));
          if (phi < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        const double h = t * apq;
        a[p][p] -= h;
        a[q][q] += h;
        a[p][q] = 0.0;
        a[q][p] = 0.0;
        for (int i = 0; i < 4; ++i) {
          if (i == p || i == q) continue;
          const double aip = a[i][p];
          const double aiq = a[i][q];
          a[i][p] = aip - s * (aiq + tau * aip);
          a[p][i] = a[i][p];
          a[i][q] = aiq + s * (aip - tau * aiq);
          a[q][i] = a[i][q];
        }
      }
    }
  }

  std::array<double, 4> eig = {a[0][0], a[1][1], a[2][2], a[3][3]};
  std::sort(eig.begin(), eig.end());
  return eig;
}

}  // namespace tpf
