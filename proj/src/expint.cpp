/*
   Copyright 2026 crnoma developers

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "crnoma/expint.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace crnoma {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008;

// The alternating power series loses one digit per ~5 units of |x| to
// cancellation, so it is only used below this bound; the continued fraction
// takes over beyond it.
constexpr double kSeriesBound = 6.0;

// Power series Ei(x) = gamma + ln|x| + sum_k x^k / (k * k!), |x| < kSeriesBound.
double ei_series(double x) {
  double sum = 0.0;
  double term = 1.0;  // x^k / k!
  for (int k = 1; k <= 200; ++k) {
    term *= x / k;
    const double contrib = term / k;
    sum += contrib;
    if (std::abs(contrib) < std::numeric_limits<double>::epsilon() * std::abs(sum))
      break;
  }
  return kEulerGamma + std::log(std::abs(x)) + sum;
}

// Modified-Lentz continued fraction for F(a) = a * e^a * E1(a) / a ... i.e.
// E1(a) = e^-a / (a + 1 - 1/(a + 3 - 4/(a + 5 - 9/(...)))). Returns the
// e^a-scaled value E1(a) * e^a.
double e1_scaled_cf(double a) {
  constexpr double kTiny = 1e-300;
  double b = a + 1.0;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 400; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 4.0 * std::numeric_limits<double>::epsilon())
      break;
  }
  return h;
}

}  // namespace

double expint_ei(double x) {
  if (x >= 0.0)
    throw std::domain_error("expint_ei: only negative arguments are supported");
  if (x < -700.0) return -0.0;  // e^x underflows past all representable output
  if (x > -kSeriesBound) return ei_series(x);
  return -std::exp(x) * e1_scaled_cf(-x);
}

double expi_scaled(double a) {
  if (!(a > 0.0))
    throw std::domain_error("expi_scaled: argument must be > 0");
  if (a >= kSeriesBound) return -e1_scaled_cf(a);
  return std::exp(a) * ei_series(-a);
}

}  // namespace crnoma
