// Copyright 2026 The qblock authors
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

#pragma once

#include <cstddef>
#include <optional>

namespace qblock {

/// Claimed-versus-measured summary of a constructed encoding. Fields that a
/// particular pipeline does not produce stay at zero / nullopt.
struct VerificationReport {
    double tau = 0.0;             // claimed scale of the final encoding
    double eta = 0.0;             // claimed error bound of the final encoding
    double eps_M = 0.0;           // quadrature truncation bound (circle pipeline)
    double delta_L = 0.0;         // Taylor truncation factor (circle pipeline)
    double alpha_prime = 0.0;     // bound on ||blockdiag||
    double beta_prime = 0.0;      // bound on ||blockdiag^{-1}||
    std::size_t degree = 0;       // degree of the inversion polynomial
    double measured_error = 0.0;  // ||target - tau * block|| against the dense reference
    std::optional<double> measured_error_vs_f;  // against exact f(A) when applicable
};

}  // namespace qblock
