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
 * Matchgates G(A,B), the named gate catalogue, nearest-neighbour circuits and
 * basis-qubit transport.
 *
 * Embedding convention for the 4x4 matrix in the basis |00>,|01>,|10>,|11>
 * (first bit = left line): A acts on the even block at indices {0,3}
 * (ordered |00>,|11>), B on the odd block at indices {1,2} (ordered
 * |01>,|10>).
 */
#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "jordan_wigner.hpp"
#include "statevector.hpp"

namespace mgmagic {

class Matchgate {
  public:
    /// Validates unitarity of both blocks and det A = det B.
    Matchgate(const Matrix2& a, const Matrix2& b, std::string name = "custom",
              const Tolerances& tol = default_tolerances())
        : a_(a), b_(b), name_(std::move(name)) {
        if (unitarity_defect(a) > tol.unitary || unitarity_defect(b) > tol.unitary) {
            throw std::invalid_argument("Matchgate: blocks must be unitary");
        }
        if (std::abs(a.determinant() - b.determinant()) > tol.det) {
            throw std::invalid_argument("Matchgate: det A != det B");
        }
        matrix_.setZero();
        constexpr int kEven[2] = {0, 3};
        constexpr int kOdd[2] = {1, 2};
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                matrix_(kEven[r], kEven[c]) = a(r, c);
                matrix_(kOdd[r], kOdd[c]) = b(r, c);
            }
        }
    }

    [[nodiscard]] const Matrix2& even_block() const noexcept { return a_; }
    [[nodiscard]] const Matrix2& odd_block() const noexcept { return b_; }
    [[nodiscard]] const Matrix4& matrix() const noexcept { return matrix_; }
    [[nodiscard]] const std::string& name() const noexcept { return name_; }

    [[nodiscard]] Matchgate adjoint() const { return {a_.adjoint(), b_.adjoint(), name_ + "^dag"}; }

    [[nodiscard]] Matchgate operator*(const Matchgate& rhs) const {
        return {a_ * rhs.a_, b_ * rhs.b_, name_ + "*" + rhs.name_};
    }

  private:
    Matrix2 a_;
    Matrix2 b_;
    Matrix4 matrix_;
    std::string name_;
};

[[nodiscard]] inline Matchgate make_matchgate(const Matrix2& a, const Matrix2& b,
                                              const Tolerances& tol = default_tolerances()) {
    return {a, b, "custom", tol};
}

/// Named gates.
namespace gates {

[[nodiscard]] inline Matrix2 identity2() { return Matrix2::Identity(); }

[[nodiscard]] inline Matrix2 phase_diag(double theta) {
    return (Matrix2() << 1, 0, 0, std::polar(1.0, theta)).finished();
}

/// fSWAP = G(Z,X): |01> <-> |10>, |11> -> -|11>.
[[nodiscard]] inline Matchgate fswap() { return {pauli_z(), pauli_x(), "fswap"}; }
/// G(-Z,X): transports |1> without disturbing its neighbour.
[[nodiscard]] inline Matchgate fswap_minus() { return {-pauli_z(), pauli_x(), "fswap_minus"}; }
/// G(H,H): maps the computational basis onto the Bell basis.
[[nodiscard]] inline Matchgate ghh() { return {hadamard(), hadamard(), "ghh"}; }
/// G(X,X) = X (x) X.
[[nodiscard]] inline Matchgate gxx() { return {pauli_x(), pauli_x(), "gxx"}; }
/// G(Z,Z) = Z (x) I.
[[nodiscard]] inline Matchgate gzz() { return {pauli_z(), pauli_z(), "gzz"}; }
/// G(Z,-Z) = I (x) Z.
[[nodiscard]] inline Matchgate gz_second() { return {pauli_z(), -pauli_z(), "gz_second"}; }
[[nodiscard]] inline Matchgate identity() { return {identity2(), identity2(), "identity"}; }

/// diag(1, e^{i theta}) on one line of the pair, identity on the other.
/// `on_first` selects the left line: P (x) I = G(P, P); I (x) P = G(P, P~)
/// with P~ = diag(e^{i theta}, 1).
[[nodiscard]] inline Matchgate local_phase(double theta, bool on_first) {
    const Matrix2 p = phase_diag(theta);
    if (on_first) {
        return {p, p, "local_phase_first"};
    }
    const Matrix2 swapped = (Matrix2() << std::polar(1.0, theta), 0, 0, 1).finished();
    return {p, swapped, "local_phase_second"};
}

/// e^{i theta} on the whole register, G(e^{i theta} I, e^{i theta} I).
[[nodiscard]] inline Matchgate global_phase(double theta) {
    const Matrix2 p = std::polar(1.0, theta) * identity2();
    return {p, p, "global_phase"};
}

/// G(A, e^{i xi/2} I) with e^{i xi} = det A: A on the even block, a phase on
/// the odd block.
[[nodiscard]] inline Matchgate embed_even(const Matrix2& a) {
    const Complex root = std::sqrt(a.determinant());
    return {a, root * identity2(), "embed_even"};
}

/// G(e^{i eta/2} I, B) with e^{i eta} = det B.
[[nodiscard]] inline Matchgate embed_odd(const Matrix2& b) {
    const Complex root = std::sqrt(b.determinant());
    return {root * identity2(), b, "embed_odd"};
}

/// embed_even(A) * embed_odd(B) = G(e^{i eta/2} A, e^{i xi/2} B); one
/// matchgate acting as A on the even block and B on the odd block up to
/// per-block phases.
[[nodiscard]] inline Matchgate balanced(const Matrix2& a, const Matrix2& b) {
    Matchgate g = embed_even(a) * embed_odd(b);
    return {g.even_block(), g.odd_block(), "balanced"};
}

/// Catalogue lookup used by the circuit file format.
[[nodiscard]] inline Matchgate by_name(const std::string& name, std::optional<double> param = std::nullopt) {
    if (name == "fswap") return fswap();
    if (name == "fswap_minus") return fswap_minus();
    if (name == "ghh") return ghh();
    if (name == "gxx") return gxx();
    if (name == "gzz") return gzz();
    if (name == "gz_second") return gz_second();
    if (name == "identity") return identity();
    if (name == "local_phase_first" || name == "local_phase_second" || name == "global_phase") {
        if (!param) {
            throw std::invalid_argument("gate '" + name + "' requires a parameter");
        }
        if (name == "global_phase") return global_phase(*param);
        return local_phase(*param, name == "local_phase_first");
    }
    throw std::invalid_argument("unknown gate name '" + name + "'");
}

[[nodiscard]] inline std::vector<std::string> catalog_names() {
    return {"fswap", "fswap_minus", "ghh", "gxx", "gzz", "gz_second", "identity",
            "local_phase_first", "local_phase_second", "global_phase"};
}

}  // namespace gates

struct GatePlacement {
    Matchgate gate;
    int line;  ///< gate acts on (line, line + 1)
};

/// Ordered nearest-neighbour matchgate placements on n lines.
class MatchgateCircuit {
  public:
    explicit MatchgateCircuit(int n = 2) : n_(n) {
        if (n < 2 || n > kMaxQubits) {
            throw std::invalid_argument("MatchgateCircuit: line count must lie in [2, 14]");
        }
    }

    MatchgateCircuit& add(Matchgate gate, int line) {
        if (line < 1 || line > n_ - 1) {
            throw std::out_of_range("MatchgateCircuit: placement must satisfy 1 <= j <= n-1");
        }
        gates_.push_back({std::move(gate), line});
        return *this;
    }

    MatchgateCircuit& append(const MatchgateCircuit& other) {
        if (other.n_ != n_) {
            throw std::invalid_argument("MatchgateCircuit: line count mismatch");
        }
        gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
        return *this;
    }

    [[nodiscard]] int num_lines() const noexcept { return n_; }
    [[nodiscard]] const std::vector<GatePlacement>& gates() const noexcept { return gates_; }
    [[nodiscard]] std::size_t size() const noexcept { return gates_.size(); }
    [[nodiscard]] bool empty() const noexcept { return gates_.empty(); }

    /// Number of layers when each gate is scheduled as early as its lines allow.
    [[nodiscard]] int depth() const {
        std::vector<int> ready(static_cast<std::size_t>(n_ + 1), 0);
        int d = 0;
        for (const auto& g : gates_) {
            const auto a = static_cast<std::size_t>(g.line);
            const int layer = std::max(ready[a], ready[a + 1]) + 1;
            ready[a] = ready[a + 1] = layer;
            d = std::max(d, layer);
        }
        return d;
    }

    /// Circuit running the gates in reverse with adjoints.
    [[nodiscard]] MatchgateCircuit inverse() const {
        MatchgateCircuit inv(n_);
        for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
            inv.add(it->gate.adjoint(), it->line);
        }
        return inv;
    }

  private:
    int n_;
    std::vector<GatePlacement> gates_;
};

[[nodiscard]] inline QubitState run_circuit(const QubitState& state, const MatchgateCircuit& circuit) {
    if (circuit.num_lines() != state.num_qubits()) {
        throw std::invalid_argument("run_circuit: circuit and state line counts differ");
    }
    Amplitudes amps = state.amplitudes();
    for (const auto& g : circuit.gates()) {
        detail::apply_two_qubit_inplace(amps, state.num_qubits(), g.gate.matrix(), g.line);
    }
    if (!state.normalized()) {
        return QubitState::unnormalized(state.num_qubits(), std::move(amps));
    }
    return QubitState::normalize(state.num_qubits(), std::move(amps));
}

/// Dense 2^n x 2^n operator of a circuit (small n only).
[[nodiscard]] inline Matrix circuit_operator(const MatchgateCircuit& circuit) {
    const int n = circuit.num_lines();
    if (n > 10) {
        throw std::invalid_argument("circuit_operator: too many lines to materialise");
    }
    const Eigen::Index dim = Eigen::Index{1} << n;
    Matrix op = Matrix::Identity(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
        Amplitudes col = op.col(c);
        for (const auto& g : circuit.gates()) {
            detail::apply_two_qubit_inplace(col, n, g.gate.matrix(), g.line);
        }
        op.col(c) = col;
    }
    return op;
}

/// 2^n x 2^n matrix of a single gate at line j.
[[nodiscard]] inline Matrix embedded_operator(const Matchgate& gate, int j, int n) {
    MatchgateCircuit c(n);
    c.add(gate, j);
    return circuit_operator(c);
}

/// Chain of G(Z,X) (b = 0) or G(-Z,X) (b = 1) carrying a basis line from
/// position `from` to position `to`; the lines in between shift by one.
[[nodiscard]] inline MatchgateCircuit basis_move_circuit(int n, int from, int to, int b) {
    MatchgateCircuit c(n);
    const Matchgate g = b == 0 ? gates::fswap() : gates::fswap_minus();
    if (from < to) {
        for (int p = from; p < to; ++p) {
            c.add(g, p);
        }
    } else {
        for (int p = from - 1; p >= to; --p) {
            c.add(g, p);
        }
    }
    return c;
}

/// Moves line `from`, which must be in product state |b>, to position `to`.
/// The rest of the register is left exactly invariant up to the relabelling.
[[nodiscard]] inline QubitState move_basis_qubit(const QubitState& state, int from, int to, int b,
                                                 const Tolerances& tol = default_tolerances()) {
    const int n = state.num_qubits();
    detail::check_line(from, n, n, "move_basis_qubit");
    detail::check_line(to, n, n, "move_basis_qubit");
    if (b != 0 && b != 1) {
        throw std::invalid_argument("move_basis_qubit: b must be 0 or 1");
    }
    const double p = detail::probability_of(state.amplitudes(), n, from, b);
    if (std::abs(p - state.amplitudes().squaredNorm()) > tol.product) {
        throw PreconditionError("move_basis_qubit: line is not in the claimed basis product state");
    }
    if (from == to) {
        return state;
    }
    return run_circuit(state, basis_move_circuit(n, from, to, b));
}

/// Free-gate audit of a single 2-qubit gate placed on n lines.
[[nodiscard]] inline bool passes_free_gate_audit(const Matchgate& gate, int j = 1, int n = 2) {
    return is_gaussian_unitary(embedded_operator(gate, j, n));
}

}  // namespace mgmagic
