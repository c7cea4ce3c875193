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

#include <gtest/gtest.h>

#include <map>
#include <queue>

#include <mgmagic/mgmagic.hpp>

#include "oracles.hpp"

namespace mgmagic {
namespace {

TEST(MakeMatchgate, BlockEmbedding) {
    const Matchgate f = make_matchgate(pauli_z(), pauli_x());
    const QubitState s11 = apply_two_qubit(QubitState::from_bits("11"), f.matrix(), 1);
    EXPECT_NEAR(s11[3].real(), -1.0, 1e-15);
    const QubitState s01 = apply_two_qubit(QubitState::from_bits("01"), f.matrix(), 1);
    EXPECT_NEAR(s01[2].real(), 1.0, 1e-15);
    EXPECT_LT((f.matrix() - oracle::matchgate(oracle::Z(), oracle::X())).cwiseAbs().maxCoeff(), 1e-15);

    EXPECT_LT((make_matchgate(Matrix2::Identity(), Matrix2::Identity()).matrix() - Matrix4::Identity())
                  .cwiseAbs()
                  .maxCoeff(),
              1e-15);
}

TEST(MakeMatchgate, Rejections) {
    EXPECT_THROW((void)make_matchgate(Matrix2::Identity(), pauli_x()), std::invalid_argument);
    EXPECT_THROW((void)make_matchgate(2.0 * Matrix2::Identity(), Matrix2::Identity()), std::invalid_argument);
}

TEST(NamedGates, Examples) {
    EXPECT_LT(max_distance(apply_two_qubit(QubitState::from_bits("01"), gates::fswap().matrix(), 1),
                           QubitState::from_bits("10")),
              1e-15);
    EXPECT_LT(max_distance(apply_two_qubit(QubitState::from_bits("00"), gates::gxx().matrix(), 1),
                           QubitState::from_bits("11")),
              1e-15);
    const Matchgate hh = gates::ghh() * gates::ghh();
    EXPECT_LT((hh.matrix() - Matrix4::Identity()).cwiseAbs().maxCoeff(), 1e-12);
    // G(X,X) = X (x) X, G(Z,Z) = Z (x) I, G(Z,-Z) = I (x) Z
    EXPECT_LT((gates::gxx().matrix() - oracle::kron(oracle::X(), oracle::X())).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((gates::gzz().matrix() - oracle::kron(oracle::Z(), oracle::I2())).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((gates::gz_second().matrix() - oracle::kron(oracle::I2(), oracle::Z())).cwiseAbs().maxCoeff(),
              1e-15);
}

TEST(NamedGates, LocalPhaseActsOnOneLine) {
    const double th = 0.7;
    const Matrix4 first = gates::local_phase(th, true).matrix();
    const Matrix4 second = gates::local_phase(th, false).matrix();
    oracle::Mat p = oracle::Mat::Identity(2, 2);
    p(1, 1) = std::polar(1.0, th);
    // equal up to a global phase to diag(1, e^{i th}) on the chosen line
    const oracle::Mat want_first = oracle::kron(p, oracle::I2());
    const oracle::Mat want_second = oracle::kron(oracle::I2(), p);
    const Complex g1 = first(0, 0);
    const Complex g2 = second(0, 0);
    EXPECT_NEAR(std::abs(g1), 1.0, 1e-15);
    EXPECT_LT((first - g1 * want_first).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT((second - g2 * want_second).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(NamedGates, CatalogDeterminantBalanceAndAudit) {
    for (const std::string& name : gates::catalog_names()) {
        const Matchgate g = gates::by_name(name, 0.37);
        EXPECT_LT(std::abs(g.even_block().determinant() - g.odd_block().determinant()), 1e-12) << name;
        for (int n = 2; n <= 5; ++n) {
            for (int j = 1; j < n; ++j) {
                EXPECT_TRUE(passes_free_gate_audit(g, j, n)) << name << " n=" << n << " j=" << j;
            }
        }
    }
    EXPECT_THROW((void)gates::by_name("swap"), std::invalid_argument);
    EXPECT_THROW((void)gates::by_name("global_phase"), std::invalid_argument);
}

TEST(NamedGates, BalancedWrappers) {
    Rng rng(9);
    const Matrix2 a = random_unitary2(rng);
    const Matrix2 b = random_unitary2(rng);
    const Matchgate e = gates::embed_even(a);
    const Matchgate o = gates::embed_odd(b);
    EXPECT_LT((e.even_block() - a).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT((o.odd_block() - b).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT(std::abs(std::abs(e.odd_block()(0, 0)) - 1.0), 1e-14);
    EXPECT_NEAR(std::abs(e.odd_block()(0, 1)), 0.0, 1e-15);
    const Matchgate bal = gates::balanced(a, b);
    EXPECT_TRUE(passes_free_gate_audit(bal));
}

TEST(RandomMatchgates, PassAudit) {
    Rng rng(10);
    for (int t = 0; t < 30; ++t) {
        EXPECT_TRUE(passes_free_gate_audit(random_matchgate(rng), 1 + t % 3, 4));
    }
}

TEST(RunCircuit, Examples) {
    Rng rng(1);
    const QubitState s = haar_state(3, rng);
    EXPECT_LT(max_distance(run_circuit(s, MatchgateCircuit(3)), s), 1e-15);
    MatchgateCircuit ff(3);
    ff.add(gates::fswap(), 1).add(gates::fswap(), 1);
    EXPECT_LT(max_distance(run_circuit(s, ff), s), 1e-15);
    EXPECT_THROW((void)run_circuit(s, MatchgateCircuit(4)), std::invalid_argument);
    MatchgateCircuit bad(3);
    EXPECT_THROW(bad.add(gates::fswap(), 3), std::out_of_range);
}

TEST(RunCircuit, CanonicalRoundTripFromGhz) {
    const CanonicalForm f = canonical_form(ghz4());
    const QubitState psi = run_circuit(ghz4(), f.circuit);
    EXPECT_GT(fidelity(psi, psi_phi(kPi)), 1.0 - 1e-12);
    const QubitState back = run_circuit(psi, f.circuit.inverse());
    EXPECT_LT(max_distance(back, ghz4()), 1e-9);
}

TEST(RunCircuit, ComposedOperatorIsEven) {
    Rng rng(44);
    for (int t = 0; t < 100; ++t) {
        const int n = 2 + t % 5;
        const int layers = 1 + static_cast<int>(rng.below(30));
        MatchgateCircuit c(n);
        for (int g = 0; g < layers; ++g) {
            c.add(random_matchgate(rng), 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1))));
        }
        EXPECT_LT(odd_block_norm(circuit_operator(c)), 1e-10);
    }
}

TEST(RunCircuit, MatchesDenseProduct) {
    Rng rng(45);
    const int n = 4;
    const MatchgateCircuit c = random_circuit(n, 5, rng);
    oracle::Mat u = oracle::Mat::Identity(16, 16);
    for (const auto& g : c.gates()) {
        u = oracle::embed(g.gate.matrix(), g.line, n) * u;
    }
    const QubitState s = haar_state(n, rng);
    EXPECT_LT((run_circuit(s, c).amplitudes() - u * s.amplitudes()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((circuit_operator(c) - u).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Depth, LayersAsEarlyAsPossible) {
    MatchgateCircuit c(5);
    c.add(gates::fswap(), 1).add(gates::fswap(), 3).add(gates::fswap(), 2).add(gates::fswap(), 4);
    EXPECT_EQ(c.depth(), 2);
    c.add(gates::fswap(), 3);
    EXPECT_EQ(c.depth(), 3);
}

TEST(MoveBasisQubit, Examples) {
    // |1> on line 1, Bell pair on (2,3) -> Bell pair on (1,2), |1> on line 3
    Amplitudes in = Amplitudes::Zero(8);
    in(0b100) = in(0b111) = 1.0 / std::sqrt(2.0);
    const QubitState out = move_basis_qubit(QubitState(3, in), 1, 3, 1);
    Amplitudes want = Amplitudes::Zero(8);
    want(0b001) = want(0b111) = 1.0 / std::sqrt(2.0);
    EXPECT_LT((out.amplitudes() - want).cwiseAbs().maxCoeff(), 1e-12);

    Rng rng(3);
    const QubitState s = append_basis_line(haar_state(2, rng), 0);
    EXPECT_LT(max_distance(move_basis_qubit(s, 3, 3, 0), s), 1e-15);

    // |0> across |11>: explicit 3-qubit products
    const QubitState z = QubitState::from_bits("011");
    const QubitState moved = move_basis_qubit(z, 1, 3, 0);
    const oracle::Mat f = oracle::matchgate(oracle::Z(), oracle::X());
    const oracle::Vec ref = oracle::embed(f, 2, 3) * (oracle::embed(f, 1, 3) * z.amplitudes());
    EXPECT_LT((moved.amplitudes() - ref).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT(max_distance(moved, QubitState::from_bits("110")), 1e-15);

    EXPECT_THROW((void)move_basis_qubit(z, 1, 3, 1), PreconditionError);
    EXPECT_THROW((void)move_basis_qubit(psi_phi(kPi), 1, 3, 0), PreconditionError);
}

TEST(MoveBasisQubit, AmbientInvariantForRandomStates) {
    Rng rng(8);
    for (int t = 0; t < 30; ++t) {
        const int n = 3 + t % 4;
        const int b = t % 2;
        const QubitState amb = haar_state(n - 1, rng);
        const QubitState s = append_basis_line(amb, b);
        const int to = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        const QubitState moved = move_basis_qubit(s, n, to, b);
        std::vector<int> perm(static_cast<std::size_t>(n));
        for (int q = 1; q < n; ++q) perm[static_cast<std::size_t>(q - 1)] = q < to ? q : q + 1;
        perm[static_cast<std::size_t>(n - 1)] = to;
        const oracle::Vec want = oracle::permute_lines(s.amplitudes(), n, perm);
        EXPECT_LT((moved.amplitudes() - want).cwiseAbs().maxCoeff(), 1e-12);
    }
}

// Breadth-first search over gxx / fswap placements connecting two basis strings.
bool connected_by_free_gates(int n, std::size_t from, std::size_t to) {
    std::vector<Matchgate> gs = {gates::gxx(), gates::fswap()};
    std::map<std::size_t, MatchgateCircuit> seen;
    std::queue<std::size_t> q;
    seen.emplace(from, MatchgateCircuit(n));
    q.push(from);
    while (!q.empty()) {
        const std::size_t cur = q.front();
        q.pop();
        if (cur == to) {
            const QubitState out = run_circuit(QubitState::basis(n, from), seen.at(cur));
            return fidelity(out, QubitState::basis(n, to)) > 1.0 - 1e-10;
        }
        for (const Matchgate& g : gs) {
            for (int j = 1; j < n; ++j) {
                const QubitState next = apply_two_qubit(QubitState::basis(n, cur), g.matrix(), j);
                Eigen::Index idx = 0;
                next.amplitudes().cwiseAbs().maxCoeff(&idx);
                const auto k = static_cast<std::size_t>(idx);
                if (!seen.count(k)) {
                    MatchgateCircuit c = seen.at(cur);
                    c.add(g, j);
                    seen.emplace(k, std::move(c));
                    q.push(k);
                }
            }
        }
    }
    return false;
}

TEST(F2, EqualParityBasisStringsConnected) {
    for (int n = 2; n <= 6; ++n) {
        const std::size_t dim = std::size_t{1} << n;
        for (std::size_t a = 0; a < dim; a += 3) {
            for (std::size_t b = 0; b < dim; b += 5) {
                if (popcount_parity(a) == popcount_parity(b)) {
                    EXPECT_TRUE(connected_by_free_gates(n, a, b)) << n << ": " << a << " -> " << b;
                }
            }
        }
    }
}

}  // namespace
}  // namespace mgmagic
