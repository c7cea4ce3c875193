// Copyright 2026 The mgmagic Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/** @file Random states, matchgates and circuits for tests and the CLI. */
#pragma once

#include <Eigen/QR>

#include "jordan_wigner.hpp"
#include "matchgate.hpp"
#include "states.hpp"

namespace mgmagic {

[[nodiscard]] inline QubitState haar_state(int n, Rng& rng) {
    Amplitudes a(std::size_t{1} << n);
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        a(i) = rng.complex_normal();
    }
    return QubitState::normalize(n, a);
}

/// Haar-random state on the even or odd parity sector.
[[nodiscard]] inline QubitState haar_fermionic(int n, Parity p, Rng& rng) {
    if (p == Parity::kIndefinite) {
        throw std::invalid_argument("haar_fermionic: parity must be definite");
    }
    const int want = p == Parity::kOdd ? 1 : 0;
    Amplitudes a = Amplitudes::Zero(std::size_t{1} << n);
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (popcount_parity(static_cast<std::size_t>(i)) == want) {
            a(i) = rng.complex_normal();
        }
    }
    return QubitState::normalize(n, a);
}

/// Haar-random U(2) via QR of a Ginibre matrix with the phase fix.
[[nodiscard]] inline Matrix2 random_unitary2(Rng& rng) {
    Matrix2 g;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            g(r, c) = rng.complex_normal();
        }
    }
    Eigen::HouseholderQR<Matrix2> qr(g);
    Matrix2 q = qr.householderQ();
    const Matrix2 r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int c = 0; c < 2; ++c) {
        q.col(c) *= r(c, c) / std::abs(r(c, c));
    }
    return q;
}

/// Random matchgate: A Haar on U(2), B Haar on SU(2) rescaled to det B = det A.
[[nodiscard]] inline Matchgate random_matchgate(Rng& rng) {
    const Matrix2 a = random_unitary2(rng);
    Matrix2 b = random_unitary2(rng);
    b *= std::sqrt(a.determinant() / b.determinant());
    return Matchgate(a, b, "random");
}

/// Brickwork of random matchgates on n lines.
[[nodiscard]] inline MatchgateCircuit random_circuit(int n, int layers, Rng& rng) {
    MatchgateCircuit c(n);
    for (int layer = 0; layer < layers; ++layer) {
        for (int j = 1 + (layer % 2); j < n; j += 2) {
            c.add(random_matchgate(rng), j);
        }
    }
    return c;
}

/// Haar-random fermionic state conditioned on lambda_norm_sq > threshold.
[[nodiscard]] inline QubitState random_non_gaussian(int n, Parity p, Rng& rng, double threshold = 1e-6) {
    for (;;) {
        QubitState s = haar_fermionic(n, p, rng);
        if (lambda_norm_sq(s) > threshold) {
            return s;
        }
    }
}

/// A random matchgate circuit applied to psi_phi (x) |bits>.
[[nodiscard]] inline QubitState scrambled_psi_phi(double phi, int n, Rng& rng, int layers = 4) {
    if (n < 4) {
        throw std::invalid_argument("scrambled_psi_phi: need at least 4 qubits");
    }
    QubitState s = psi_phi(phi);
    for (int l = 5; l <= n; ++l) {
        s = append_basis_line(s, rng.below(2) == 0 ? 0 : 1);
    }
    return run_circuit(s, random_circuit(n, layers, rng));
}

}  // namespace mgmagic
