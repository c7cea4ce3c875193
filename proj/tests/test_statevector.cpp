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

#include <mgmagic/mgmagic.hpp>

#include "oracles.hpp"

namespace mgmagic {
namespace {

QubitState bell() {
    Amplitudes a = Amplitudes::Zero(4);
    a(0) = a(3) = 1.0 / std::sqrt(2.0);
    return QubitState(2, a);
}

TEST(QubitState, RejectsBadShapesAndNorms) {
    EXPECT_THROW(QubitState(2, Amplitudes::Zero(3)), std::invalid_argument);
    EXPECT_THROW(QubitState(1, Amplitudes::Ones(2)), std::invalid_argument);
    EXPECT_THROW(QubitState::basis(15, 0), std::invalid_argument);
    EXPECT_NO_THROW(QubitState::basis(14, 0));
}

TEST(QubitState, LineOneIsMostSignificant) {
    const QubitState s = QubitState::from_bits("100");
    EXPECT_EQ(std::abs(s[4]), 1.0);
    EXPECT_EQ(line_bit(4, 1, 3), 1);
    EXPECT_EQ(line_bit(4, 3, 3), 0);
}

TEST(Parity, Examples) {
    EXPECT_EQ(parity(QubitState::from_bits("0000")), Parity::kEven);
    EXPECT_EQ(parity(QubitState::from_bits("0100")), Parity::kOdd);
    EXPECT_EQ(parity(plus_state()), Parity::kIndefinite);
    EXPECT_EQ(parity(psi_phi(kPi)), Parity::kEven);
}

TEST(Parity, PreservedByMatchgates) {
    Rng rng(11);
    for (int t = 0; t < 20; ++t) {
        const Parity p = t % 2 == 0 ? Parity::kEven : Parity::kOdd;
        const QubitState s = haar_fermionic(5, p, rng);
        const QubitState out = run_circuit(s, random_circuit(5, 3, rng));
        EXPECT_EQ(parity(out), p);
    }
}

TEST(ApplyTwoQubit, Examples) {
    Rng rng(3);
    const QubitState s = haar_state(3, rng);
    EXPECT_LT(max_distance(apply_two_qubit(s, Matrix4::Identity(), 2), s), 1e-15);

    Matrix4 xx = Matrix4::Zero();
    xx(0, 3) = xx(3, 0) = xx(1, 2) = xx(2, 1) = 1.0;
    EXPECT_NEAR(std::abs(apply_two_qubit(QubitState::from_bits("00"), xx, 1)[3]), 1.0, 1e-15);

    const QubitState b = apply_two_qubit(QubitState::from_bits("00"), gates::ghh().matrix(), 1);
    oracle::Vec e0 = oracle::Vec::Zero(4);
    e0(0) = 1;
    const oracle::Vec expect = oracle::matchgate(oracle::H(), oracle::H()) * e0;
    EXPECT_LT((b.amplitudes() - expect).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT(max_distance(b, bell()), 1e-15);
}

TEST(ApplyTwoQubit, MatchesKroneckerOracle) {
    Rng rng(5);
    for (int n = 2; n <= 6; ++n) {
        for (int j = 1; j < n; ++j) {
            const QubitState s = haar_state(n, rng);
            const Matchgate g = random_matchgate(rng);
            const QubitState out = apply_two_qubit(s, g.matrix(), j);
            const oracle::Vec ref = oracle::embed(g.matrix(), j, n) * s.amplitudes();
            EXPECT_LT((out.amplitudes() - ref).cwiseAbs().maxCoeff(), 1e-12);
            EXPECT_LT(std::abs(out.norm() - 1.0), 1e-10);
        }
    }
}

TEST(ApplyTwoQubit, Errors) {
    const QubitState s = QubitState::from_bits("000");
    EXPECT_THROW((void)apply_two_qubit(s, Matrix4::Identity(), 3), std::out_of_range);
    EXPECT_THROW((void)apply_two_qubit(s, Matrix4::Identity(), 0), std::out_of_range);
    EXPECT_THROW((void)apply_two_qubit(s, 2.0 * Matrix4::Identity(), 1), std::invalid_argument);
}

TEST(Project, Examples) {
    const Projection p1 = project(QubitState::from_bits("01"), 1, 0);
    EXPECT_NEAR(p1.probability, 1.0, 1e-15);
    EXPECT_LT(max_distance(p1.post, QubitState::from_bits("01")), 1e-15);

    const Projection p2 = project(bell(), 1, 1);
    EXPECT_NEAR(p2.probability, 0.5, 1e-15);
    EXPECT_LT(max_distance(p2.post, QubitState::from_bits("11")), 1e-15);

    const Projection p3 = project(psi_phi(kPi), 1, 0);
    EXPECT_NEAR(p3.probability, 0.5, 1e-15);
    Amplitudes want = Amplitudes::Zero(16);
    want(0b0000) = want(0b0011) = 1.0 / std::sqrt(2.0);
    EXPECT_LT((p3.post.amplitudes() - want).cwiseAbs().maxCoeff(), 1e-15);

    const Projection p4 = project(QubitState::from_bits("01"), 2, 0);
    EXPECT_EQ(p4.probability, 0.0);
    EXPECT_TRUE(p4.null());
}

TEST(Project, ProbabilitiesSumToOne) {
    Rng rng(8);
    for (int t = 0; t < 30; ++t) {
        const int n = 1 + t % 6;
        const QubitState s = haar_state(n, rng);
        for (int j = 1; j <= n; ++j) {
            EXPECT_NEAR(project(s, j, 0).probability + project(s, j, 1).probability, 1.0, 1e-10);
        }
    }
}

TEST(Measure, DeterministicAndBornRule) {
    Rng rng(99);
    for (int t = 0; t < 100; ++t) {
        const MeasurementResult r = measure(QubitState::from_bits("1"), 1, rng);
        EXPECT_EQ(r.outcome, 1);
    }
    const int trials = 100000;
    int zeros_bell = 0;
    int zeros_psi = 0;
    const QubitState b = bell();
    const QubitState p = psi_phi(kPi);
    for (int t = 0; t < trials; ++t) {
        zeros_bell += measure(b, 1, rng).outcome == 0 ? 1 : 0;
        zeros_psi += measure(p, 3, rng).outcome == 0 ? 1 : 0;
    }
    EXPECT_NEAR(zeros_bell / double(trials), 0.5, 0.01);
    EXPECT_NEAR(zeros_psi / double(trials), 0.5, 0.01);

    Rng a(5);
    Rng c(5);
    for (int t = 0; t < 50; ++t) {
        EXPECT_EQ(measure(b, 2, a).outcome, measure(b, 2, c).outcome);
    }
}

TEST(Measure, ForcedPolicyRejectsImpossibleOutcome) {
    OutcomePolicy forced(std::vector<int>{0});
    EXPECT_THROW((void)measure(QubitState::from_bits("1"), 1, forced), PreconditionError);
}

TEST(BasisLines, AppendAndRemove) {
    const QubitState s = append_basis_line(bell(), 1);
    EXPECT_EQ(s.num_qubits(), 3);
    EXPECT_LT(max_distance(remove_basis_line(s, 3, 1), bell()), 1e-15);
    EXPECT_THROW((void)remove_basis_line(s, 1, 0), PreconditionError);
}

TEST(Schmidt, Examples) {
    const SchmidtDecomposition p = schmidt(QubitState::from_bits("00"), {1});
    EXPECT_NEAR(p.coeffs(0), 1.0, 1e-12);
    EXPECT_NEAR(p.coeffs(1), 0.0, 1e-12);

    const SchmidtDecomposition b = schmidt(bell(), {1});
    EXPECT_NEAR(b.coeffs(0), 1.0 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(b.coeffs(1), 1.0 / std::sqrt(2.0), 1e-12);

    const SchmidtDecomposition q = schmidt(psi_phi(kPi / 2), {1, 2});
    EXPECT_NEAR(q.coeffs(0) * q.coeffs(0), 0.5 + 0.5 * std::cos(kPi / 4), 1e-12);
    EXPECT_NEAR(q.coeffs(1) * q.coeffs(1), 0.5 - 0.5 * std::cos(kPi / 4), 1e-12);
    EXPECT_NEAR(q.coeffs(0) * q.coeffs(0), 0.8535533905932737, 1e-12);
}

TEST(Schmidt, Reconstruction) {
    Rng rng(21);
    for (int t = 0; t < 100; ++t) {
        const int n = 2 + t % 7;
        const QubitState s = haar_state(n, rng);
        std::vector<int> left;
        for (int l = 1; l <= n; ++l) {
            if (rng.below(2) == 0) left.push_back(l);
        }
        if (left.empty()) left.push_back(1);
        if (static_cast<int>(left.size()) == n) left.pop_back();
        const SchmidtDecomposition sd = schmidt(s, left);
        EXPECT_NEAR(sd.coeffs.squaredNorm(), 1.0, 1e-10);
        for (Eigen::Index k = 1; k < sd.coeffs.size(); ++k) {
            EXPECT_GE(sd.coeffs(k - 1), sd.coeffs(k));
        }
        const Matrix diag = apply_bipartite(s, sd);
        Matrix want = Matrix::Zero(diag.rows(), diag.cols());
        for (Eigen::Index k = 0; k < sd.coeffs.size(); ++k) {
            want(k, k) = sd.coeffs(k);
        }
        EXPECT_LT((diag - want).cwiseAbs().maxCoeff(), 1e-9);
        EXPECT_LT(unitarity_defect(sd.left_unitary), 1e-9);
        EXPECT_LT(unitarity_defect(sd.right_unitary), 1e-9);
    }
}

TEST(Schmidt, DegenerateOrderingIsDeterministic) {
    const SchmidtDecomposition a = schmidt(ghz4(), {1, 2});
    const SchmidtDecomposition b = schmidt(ghz4(), {1, 2});
    EXPECT_LT((a.left_unitary - b.left_unitary).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((a.right_unitary - b.right_unitary).cwiseAbs().maxCoeff(), 1e-15);
}

}  // namespace
}  // namespace mgmagic
