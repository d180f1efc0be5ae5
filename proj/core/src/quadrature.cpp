// Copyright 2026 The monoest authors
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

#include "monoest/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace monoest {

namespace {

struct SimpsonState {
  const std::function<double(double)>* f;
  double worst_error = 0.0;
};

double simpson(double fa, double fm, double fb, double h) { return h * (fa + 4 * fm + fb) / 6.0; }

double recurse(SimpsonState& st, double a, double b, double fa, double fm, double fb, double whole,
               double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = (*st.f)(lm);
  const double frm = (*st.f)(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double err = (left + right - whole) / 15.0;
  if (depth <= 0 || std::abs(err) <= tol) {
    if (depth <= 0) st.worst_error = std::max(st.worst_error, std::abs(err));
    return left + right + err;
  }
  return recurse(st, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         recurse(st, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth, double* error_bound) {
  if (!(b > a)) {
    if (error_bound != nullptr) *error_bound = 0.0;
    return 0.0;
  }
  SimpsonState st{&f, 0.0};
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = simpson(fa, fm, fb, b - a);
  const double result = recurse(st, a, b, fa, fm, fb, whole, tol, max_depth);
  if (error_bound != nullptr) *error_bound = std::max(st.worst_error, tol);
  return result;
}

}  // namespace monoest
