// Copyright 2026 The urlab Authors
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

#include "urlab/classical_fisher.hpp"
#include "urlab/quantum_model.hpp"
#include "urlab/rng.hpp"

namespace urlab {

// Random objects for property sweeps. Every generator draws only from the
// given stream, so results are a function of the stream key and counter.

CMatrix random_ginibre(int rows, int cols, CounterRng& rng);
CMatrix random_hermitian(int d, CounterRng& rng);
/// Haar-like unitary from the QR decomposition of a Ginibre matrix.
CMatrix random_unitary(int d, CounterRng& rng);
/// (1 - mix) G G^dagger / Tr + mix I / d; full rank for mix > 0.
CMatrix random_density(int d, CounterRng& rng, double mix = 0.05);
/// S^{-1/2} G_k G_k^dagger S^{-1/2} with S = sum_k G_k G_k^dagger.
Povm random_povm(int d, int outcomes, CounterRng& rng);
/// Kraus operators are the blocks of a random isometry C^in -> C^(out * n).
KrausChannel random_channel(int in_dim, int out_dim, int n_kraus, CounterRng& rng);
CpInstrument random_instrument(int d, int outcomes, int kraus_per_outcome, CounterRng& rng);
StochasticKernel random_stochastic_kernel(int n_out, int n_in, CounterRng& rng);

}  // namespace urlab
