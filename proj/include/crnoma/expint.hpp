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

#pragma once

namespace crnoma {

/// Exponential integral Ei(x) = -int_{-x}^inf e^-t / t dt for x < 0 only.
/// Strictly negative, approaching 0 from below as x -> -inf and diverging
/// logarithmically as x -> 0-. Power series on (-6, 0), continued fraction
/// below; relative accuracy better than 1e-11 across [-700, -1e-300].
/// Returns -0.0 for x < -700 (the value underflows). Throws
/// std::domain_error for x >= 0.
double expint_ei(double x);

/// Fused e^a * Ei(-a) for a > 0, evaluated without forming either factor when
/// a is large (the continued fraction yields the product directly), so it
/// stays finite for arbitrarily large a. Throws std::domain_error for a <= 0.
double expi_scaled(double a);

}  // namespace crnoma
