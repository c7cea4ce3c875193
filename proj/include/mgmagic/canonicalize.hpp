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
/**
 * @file
 * Canonical form of 4-qubit fermionic states under matchgate equivalence.
 *
 * Write e0 = |00>, e1 = |11>, d0 = |01>, d1 = |10> for each of the pairs
 * (1,2) and (3,4). An even state splits into an e-part with 2x2 coefficient
 * matrix E[a][b] (coefficient of |e_a e_b>) and a d-part D[a][b]. A matchgate
 * G(A,B) on lines (1,2) maps E -> A E and D -> B D; on lines (3,4) it maps
 * E -> E A^T and D -> D B^T. The construction is three layers:
 *
 *   1. G(.,.) on (1,2) and (3,4) diagonalising E and D independently (SVD),
 *   2. fSWAP on (2,3), which folds the diagonal d-part into the e-subspace,
 *   3. G(.,.) on (1,2) and (3,4) rotating the remaining 2x2 e-encoded state
 *      onto psi_phi, whose e-encoded Schmidt values are 1/2 +- cos(phi/2)/2.
 *
 * phi is reported in [0, pi]; phi and 2 pi - phi share Schmidt data.
 */
#pragma once

#include <cmath>

#include "free_ops.hpp"
#include "jordan_wigner.hpp"
#include "matchgate.hpp"
#include "states.hpp"

namespace mgmagic {

struct CanonicalForm {
    double phi = 0.0;
    /// Acts on 4 lines, or on 5 lines (input (x) |0>) when used_ancilla; the
    /// output is psi_phi, or psi_phi (x) |1> respectively.
    MatchgateCircuit circuit{4};
    bool used_ancilla = false;
};

struct LiftedState {
    QubitState state;
    /// G(X,X) on (4, ancilla) over 5 lines.
    MatchgateCircuit prefix{5};
    int flipped_line = 4;
};

/// Odd 4-qubit state -> even 4-qubit state through G(X,X) on line 4 and an
/// ancilla |0> adjoined as line 5; the ancilla leaves in |1> and is dropped.
[[nodiscard]] inline LiftedState lift_odd_to_even(const QubitState& state,
                                                  const Tolerances& tol = default_tolerances()) {
    if (state.num_qubits() != 4) {
        throw std::invalid_argument("lift_odd_to_even: expected a 4-qubit state");
    }
    if (parity(state, tol) != Parity::kOdd) {
        throw PreconditionError("lift_odd_to_even: input parity is not odd");
    }
    FreeOpRunner run(state, true, tol);
    const int anc = run.add_basis_line(0);
    run.move_basis(anc, 5, 0);
    run.apply(gates::gxx(), 4);
    run.discard_basis_line(5, 1);
    LiftedState out{run.state(), MatchgateCircuit(5), 4};
    out.prefix.add(gates::gxx(), 4);
    return out;
}

namespace detail {

inline constexpr int kEIndex[2] = {0b00, 0b11};
inline constexpr int kDIndex[2] = {0b01, 0b10};

[[nodiscard]] inline Matrix2 e_block(const Amplitudes& a) {
    Matrix2 m;
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            m(x, y) = a((kEIndex[x] << 2) | kEIndex[y]);
        }
    }
    return m;
}

[[nodiscard]] inline Matrix2 d_block(const Amplitudes& a) {
    Matrix2 m;
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            m(x, y) = a((kDIndex[x] << 2) | kDIndex[y]);
        }
    }
    return m;
}

struct Svd2 {
    Matrix2 u;
    Eigen::Vector2d s;
    Matrix2 v;
};

/// M = U diag(s) V^dag with s descending; identity factors for a zero block.
[[nodiscard]] inline Svd2 svd2(const Matrix2& m, double zero_tol) {
    if (m.cwiseAbs().maxCoeff() <= zero_tol) {
        return {Matrix2::Identity(), Eigen::Vector2d::Zero(), Matrix2::Identity()};
    }
    Eigen::JacobiSVD<Matrix2> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

/// psi_phi in e-encoding: (1/2) [[1, 1], [1, e^{i phi}]].
[[nodiscard]] inline Matrix2 target_e_block(double phi) {
    return (Matrix2() << 0.5, 0.5, 0.5, 0.5 * std::polar(1.0, phi)).finished();
}

/// phi in [0, pi] from the Schmidt values s1 >= s2 of a normalised 2x2 state:
/// cos(phi/2) = s1^2 - s2^2, sin(phi/2) = 2 s1 s2.
[[nodiscard]] inline double phi_from_schmidt(double s1, double s2) {
    return 2.0 * std::atan2(2.0 * s1 * s2, s1 * s1 - s2 * s2);
}

}  // namespace detail

/// Builds the depth-3 circuit mapping a fermionic 4-qubit state onto psi_phi.
[[nodiscard]] inline CanonicalForm canonical_form(const QubitState& input,
                                                  const Tolerances& tol = default_tolerances()) {
    if (input.num_qubits() != 4) {
        throw std::invalid_argument("canonical_form: expected a 4-qubit state");
    }
    const Parity par = parity(input, tol);
    if (par == Parity::kIndefinite) {
        throw PreconditionError("canonical_form: input is not fermionic");
    }
    QubitState even = input;
    CanonicalForm form;
    if (par == Parity::kOdd) {
        even = lift_odd_to_even(input, tol).state;
        form.used_ancilla = true;
        form.circuit = MatchgateCircuit(5);
        form.circuit.add(gates::gxx(), 4);
    }
    const double zero_tol = 1e-14;

    // stage 1: diagonalise the e- and d-parts
    Amplitudes amps = even.amplitudes();
    const detail::Svd2 e = detail::svd2(detail::e_block(amps), zero_tol);
    const detail::Svd2 d = detail::svd2(detail::d_block(amps), zero_tol);
    const Matchgate left1 = gates::balanced(e.u.adjoint(), d.u.adjoint());
    const Matchgate right1 = gates::balanced(e.v.transpose(), d.v.transpose());
    detail::apply_two_qubit_inplace(amps, 4, left1.matrix(), 1);
    detail::apply_two_qubit_inplace(amps, 4, right1.matrix(), 3);

    // stage 2: fold the d-part into the e-subspace
    const Matchgate fold = gates::fswap();
    detail::apply_two_qubit_inplace(amps, 4, fold.matrix(), 2);

    // stage 3: local rotation onto psi_phi
    const Matrix2 f = detail::e_block(amps);
    Eigen::JacobiSVD<Matrix2> fs(f, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::Vector2d sv = fs.singularValues();
    form.phi = detail::phi_from_schmidt(sv(0), sv(1));
    Eigen::JacobiSVD<Matrix2> ts(detail::target_e_block(form.phi), Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Matrix2 a12 = ts.matrixU() * fs.matrixU().adjoint();
    const Matrix2 a34 = (fs.matrixV() * ts.matrixV().adjoint()).transpose();
    const Matchgate left3 = gates::embed_even(a12);
    const Matchgate right3 = gates::embed_even(a34);

    // data lines stay at 1..4; the ancilla, if any, is line 5
    form.circuit.add(left1, 1).add(right1, 3);
    form.circuit.add(fold, 2);
    form.circuit.add(left3, 1).add(right3, 3);
    return form;
}

/// Runs the canonical circuit on `input` (adding and removing the ancilla when
/// needed) and returns the resulting 4-qubit state.
[[nodiscard]] inline QubitState apply_canonical(const QubitState& input, const CanonicalForm& form,
                                                const Tolerances& tol = default_tolerances()) {
    if (!form.used_ancilla) {
        return run_circuit(input, form.circuit);
    }
    QubitState out = run_circuit(append_basis_line(input, 0), form.circuit);
    return remove_basis_line(out, 5, 1, tol);
}

[[nodiscard]] inline double canonical_phi(const QubitState& state, const Tolerances& tol = default_tolerances()) {
    return canonical_form(state, tol).phi;
}

/// Matchgate equivalence of two fermionic 4-qubit states via their canonical phi.
[[nodiscard]] inline bool mg_equivalent_4q(const QubitState& a, const QubitState& b,
                                           const Tolerances& tol = default_tolerances()) {
    return std::abs(canonical_phi(a, tol) - canonical_phi(b, tol)) < 1e-8;
}

}  // namespace mgmagic
