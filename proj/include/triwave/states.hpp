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

#ifndef TRIWAVE_STATES_HPP
#define TRIWAVE_STATES_HPP

#include <complex>
#include <vector>

#include "triwave/evolution.hpp"

namespace triwave {

/// Default tail probability dropped by the input-state constructors.
inline constexpr double kDefaultTruncation = 1e-10;

/// Throws ConfigError unless eps lies in (0, 1e-4].
void validate_truncation(double eps);

/// Coherent pump |0, 0, alpha> truncated at the smallest N whose Poisson
/// tail is below eps, then renormalized.
ThreeModeState make_coherent_pump(complex alpha,
                                  double eps = kDefaultTruncation);

/// Twin beam sqrt(1 - |chi|^2) sum_n chi^n |n, n, 0>, truncated like
/// make_coherent_pump. Throws InvalidParameter for |chi| >= 1.
ThreeModeState make_twin_beam(complex chi, double eps = kDefaultTruncation);

/// Twin-beam parameter expected from the undepleted-pump approximation:
/// -i tanh(tau |alpha|) e^{i arg alpha}.
complex predicted_twin_beam_param(complex alpha, double tau);

/// sqrt(1 - |lambda|^2) lambda^n for n = 0..cutoff. Not renormalized.
std::vector<complex> make_pcs_amplitudes(complex lambda, int cutoff);

/// <n_a + n_b> of the twin beam: 2|chi|^2 / (1 - |chi|^2).
double twin_beam_energy(complex chi);

/// |chi| giving total twin-beam energy n_in.
double twin_beam_modulus_for_energy(double n_in);

/// |lambda| of the phase-coherent state with mean photon number n.
double pcs_modulus_for_energy(double n);

}  // namespace triwave

#endif  // TRIWAVE_STATES_HPP
