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
 * A register driven only by free operations: nearest-neighbour matchgates,
 * computational-basis measurements, and adjoining or discarding lines in
 * computational basis states at the end of the register. Every gate and
 * measurement is logged so protocols can be audited afterwards.
 */
#pragma once

#include <string>
#include <vector>

#include "matchgate.hpp"
#include "statevector.hpp"

namespace mgmagic {

struct GateRecord {
    Matchgate gate;
    int line = 1;
    int num_lines = 2;
};

struct MeasurementRecord {
    std::string label;
    int line = 1;
    int outcome = 0;
    double probability = 0.0;
};

class FreeOpRunner {
  public:
    explicit FreeOpRunner(const QubitState& state, bool record_gates = true,
                          const Tolerances& tol = default_tolerances())
        : n_(state.num_qubits()), amps_(state.amplitudes()), record_(record_gates), tol_(tol) {}

    [[nodiscard]] int num_lines() const noexcept { return n_; }
    [[nodiscard]] QubitState state() const { return QubitState::normalize(n_, amps_); }
    [[nodiscard]] const Amplitudes& amplitudes() const noexcept { return amps_; }
    [[nodiscard]] const std::vector<GateRecord>& gates() const noexcept { return gates_; }
    [[nodiscard]] const std::vector<MeasurementRecord>& measurements() const noexcept { return measurements_; }
    [[nodiscard]] const Tolerances& tolerances() const noexcept { return tol_; }

    void apply(const Matchgate& gate, int j) {
        detail::check_line(j, n_, n_ - 1, "FreeOpRunner::apply");
        detail::apply_two_qubit_inplace(amps_, n_, gate.matrix(), j);
        if (record_) {
            gates_.push_back({gate, j, n_});
        }
    }

    void run(const MatchgateCircuit& circuit) {
        if (circuit.num_lines() != n_) {
            throw std::invalid_argument("FreeOpRunner::run: line count mismatch");
        }
        for (const auto& g : circuit.gates()) {
            apply(g.gate, g.line);
        }
    }

    /// Adjoins |b> after the last line; returns its line number.
    int add_basis_line(int b) {
        amps_ = append_basis_line(QubitState::unnormalized(n_, amps_), b).amplitudes();
        return ++n_;
    }

    /// Adjoins an independent register after the last line (resource states
    /// are handed over at the fringe); returns the first new line.
    int add_register(const QubitState& extra) {
        const int first = n_ + 1;
        QubitState joined = tensor(QubitState::unnormalized(n_, amps_), extra);
        n_ = joined.num_qubits();
        amps_ = joined.amplitudes();
        return first;
    }

    /// (F1) transport of a basis line with G(Z,X) / G(-Z,X).
    void move_basis(int from, int to, int b) {
        check_basis(from, b, "FreeOpRunner::move_basis");
        detail::check_line(to, n_, n_, "FreeOpRunner::move_basis");
        if (from != to) {
            run(basis_move_circuit(n_, from, to, b));
        }
    }

    int measure(int line, OutcomePolicy& policy, std::string label = {}) {
        detail::check_line(line, n_, n_, "FreeOpRunner::measure");
        const double total = amps_.squaredNorm();
        const double p1 = detail::probability_of(amps_, n_, line, 1) / total;
        const int b = policy.choose(p1, tol_.prob);
        collapse(line, b, b == 1 ? p1 : 1.0 - p1, std::move(label));
        return b;
    }

    /// Postselects line on |b> (simulator privilege, used for forced branches).
    double project(int line, int b, std::string label = {}) {
        detail::check_line(line, n_, n_, "FreeOpRunner::project");
        const double p = detail::probability_of(amps_, n_, line, b) / amps_.squaredNorm();
        if (p <= tol_.prob) {
            throw PreconditionError("FreeOpRunner::project: outcome has zero probability");
        }
        collapse(line, b, p, std::move(label));
        return p;
    }

    /// Moves a basis line to the end of the register and discards it.
    void discard_basis_line(int line, int b) {
        move_basis(line, n_, b);
        if (n_ < 2) {
            throw std::invalid_argument("FreeOpRunner: cannot discard the only line");
        }
        amps_ = detail::remove_line(amps_, n_, n_, b);
        --n_;
        amps_.normalize();
    }

  private:
    void check_basis(int line, int b, const char* who) const {
        detail::check_line(line, n_, n_, who);
        const double p = detail::probability_of(amps_, n_, line, b);
        if (std::abs(p - amps_.squaredNorm()) > tol_.product) {
            throw PreconditionError(std::string(who) + ": line is not in the claimed basis state");
        }
    }

    void collapse(int line, int b, double p, std::string label) {
        detail::project_inplace(amps_, n_, line, b);
        amps_ /= amps_.norm();
        measurements_.push_back({std::move(label), line, b, p});
    }

    int n_;
    Amplitudes amps_;
    bool record_;
    Tolerances tol_;
    std::vector<GateRecord> gates_;
    std::vector<MeasurementRecord> measurements_;
};

}  // namespace mgmagic
