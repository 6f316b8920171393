// Copyright 2026 The Authors.
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

// Standard normal density, distribution and quantile functions.

#pragma once

namespace vldsrc {

double normal_pdf(double x);
double normal_cdf(double x);

// Quantile for p in (0, 1); DomainError otherwise. Wichura's AS 241
// rational approximation followed by one Newton step.
double normal_quantile(double p);

// f_G(s) = pdf(quantile(s)) on (0, 1), extended by 0 at s = 0 and s = 1.
double gaussian_f(double s);

}  // namespace vldsrc
