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
 * Reduction of a k-qubit non-Gaussian fermionic state to a 4-qubit magic
 * state by matchgates and single-line measurements.
 *
 * With |v> = Lambda_k |psi>^{(x)2} != 0, a measurement of line j with outcome
 * b keeps the state non-Gaussian whenever (P_b^{(j)})^{(x)2} |v> != 0
 * (case 1). If every such projection vanishes, |v> is supported on pairs
 * |i>|~i>; applying G(H,H) on (j, j+1) first then yields a non-vanishing
 * projection (case 2a). The remaining configuration (case 2b) is impossible
 * for k >= 5 and is kept only as an assertion.
 */
#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/SVD>

#include "canonicalize.hpp"
#include "free_ops.hpp"
#include "jordan_wigner.hpp"
#include "matchgate.hpp"

namespace mgmagic {

enum class CaseTag { kCase1, kCase2a, kCase2bViolation };

[[nodiscard]] inline std::string to_string(CaseTag t) {
    switch (t) {
        case CaseTag::kCase1:
            return "case1";
        case CaseTag::kCase2a:
            return "case2a";
        case CaseTag::kCase2bViolation:
            return "case2b";
    }
    return "?";
}

/// After G(H,H) on (j, j+1): which of the two lines carries the projector.
enum class ProjectorVariant { kNone, kFirst, kSecond };

struct CaseClassification {
    CaseTag tag = CaseTag::kCase1;
    int j = 1;
    int b = 0;
    ProjectorVariant variant = ProjectorVariant::kNone;
    double witness_norm = 0.0;
    /// Rank of the 2^k x 2^k matrix v, filled for case 2b only.
    int rank = -1;

    [[nodiscard]] int measured_line() const noexcept { return variant == ProjectorVariant::kSecond ? j + 1 : j; }
};

namespace detail {

/// sum_{ab} <w_a|w_b>^2 restricted to rows where `line` reads b.
[[nodiscard]] inline double masked_doubled_norm_sq(const Matrix& w, int n, int line, int b) {
    const std::size_t mask = line_mask(line, n);
    const std::size_t want = b == 1 ? mask : 0;
    const Eigen::Index cols = w.cols();
    Matrix gram = Matrix::Zero(cols, cols);
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
        if ((static_cast<std::size_t>(r) & mask) != want) {
            continue;
        }
        const auto row = w.row(r);
        gram.noalias() += row.adjoint() * row;
    }
    Complex s = 0.0;
    for (Eigen::Index i = 0; i < cols; ++i) {
        for (Eigen::Index k = 0; k < cols; ++k) {
            s += gram(i, k) * gram(i, k);
        }
    }
    return s.real();
}

inline void require_fermionic(const QubitState& state, const Tolerances& tol, const char* who) {
    if (parity(state, tol) == Parity::kIndefinite) {
        throw PreconditionError(std::string(who) + ": state is not fermionic");
    }
}

}  // namespace detail

/**
 * ||(P_b^{(line)})^{(x)2} Lambda_k |psi'>^{(x)2}||^2 with psi' = psi, or
 * psi' = G(H,H)_{pre_gate} psi when a pre-gate position is given. Evaluated
 * through the 2k x 2k Gram matrix of w_i = P_b c_i |psi'>.
 */
[[nodiscard]] inline double projected_v_norm_sq(const QubitState& state, int line, int b,
                                                 std::optional<int> pre_gate = std::nullopt,
                                                 const Tolerances& tol = default_tolerances()) {
    detail::require_fermionic(state, tol, "projected_v_norm_sq");
    const int n = state.num_qubits();
    detail::check_line(line, n, n, "projected_v_norm_sq");
    Amplitudes amps = state.amplitudes();
    if (pre_gate) {
        detail::check_line(*pre_gate, n, n - 1, "projected_v_norm_sq");
        detail::apply_two_qubit_inplace(amps, n, gates::ghh().matrix(), *pre_gate);
    }
    return detail::masked_doubled_norm_sq(majorana_images(amps, n), n, line, b);
}

/// Same quantity with the projector moved to the right of c_i
/// (P_b c_i = c_i P_{1-b} when c_i acts on `line` with X or Y).
[[nodiscard]] inline double projected_v_norm_sq_reordered(const QubitState& state, int line, int b,
                                                           std::optional<int> pre_gate = std::nullopt) {
    const int n = state.num_qubits();
    Amplitudes amps = state.amplitudes();
    if (pre_gate) {
        detail::apply_two_qubit_inplace(amps, n, gates::ghh().matrix(), *pre_gate);
    }
    Matrix w(amps.size(), 2 * n);
    for (int l = 1; l <= 2 * n; ++l) {
        const int site = (l + 1) / 2;
        Amplitudes p = amps;
        detail::project_inplace(p, n, line, site == line ? 1 - b : b);
        w.col(l - 1) = detail::apply_pauli_raw(p, jw_operator(n, l));
    }
    return doubled_norm_sq(w);
}

/// v = Lambda_k |psi>^{(x)2} as the 2^k x 2^k matrix sum_l (c_l psi)(c_l psi)^T.
[[nodiscard]] inline Matrix lambda_matrix(const QubitState& state) {
    const Matrix w = majorana_images(state.amplitudes(), state.num_qubits());
    return w * w.transpose();
}

[[nodiscard]] inline int matrix_rank(const Matrix& m, double tol = 1e-9) {
    Eigen::BDCSVD<Matrix> svd(m);
    const auto& s = svd.singularValues();
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) > tol) {
            ++r;
        }
    }
    return r;
}

[[nodiscard]] inline int lambda_matrix_rank(const QubitState& state, double tol = 1e-9) {
    return matrix_rank(lambda_matrix(state), tol);
}

/// Largest |v_{i,i'}| over pairs with i' != ~i; zero when v is supported on
/// the anti-diagonal pairs |i>|~i>.
[[nodiscard]] inline double off_antidiagonal_weight(const Matrix& v) {
    const Eigen::Index d = v.rows();
    double worst = 0.0;
    for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
            if (c != (d - 1 - r)) {
                worst = std::max(worst, std::abs(v(r, c)));
            }
        }
    }
    return worst;
}

/// The case scan without the k >= 5 assertion; k = 4 states may land in
/// case 2b, in which case the rank of v is reported.
[[nodiscard]] inline CaseClassification scan_cases(const QubitState& state,
                                                   const Tolerances& tol = default_tolerances()) {
    detail::require_fermionic(state, tol, "classify_case");
    const int n = state.num_qubits();
    const Matrix w = majorana_images(state.amplitudes(), n);
    for (int j = 1; j <= n; ++j) {
        for (int b = 0; b <= 1; ++b) {
            const double x = detail::masked_doubled_norm_sq(w, n, j, b);
            if (x > tol.gauss) {
                return {CaseTag::kCase1, j, b, ProjectorVariant::kNone, x, -1};
            }
        }
    }
    const Matrix ghh = gates::ghh().matrix();
    for (int j = 1; j < n; ++j) {
        Amplitudes amps = state.amplitudes();
        detail::apply_two_qubit_inplace(amps, n, ghh, j);
        const Matrix wj = majorana_images(amps, n);
        for (int b = 0; b <= 1; ++b) {
            for (ProjectorVariant var : {ProjectorVariant::kFirst, ProjectorVariant::kSecond}) {
                const int line = var == ProjectorVariant::kFirst ? j : j + 1;
                const double x = detail::masked_doubled_norm_sq(wj, n, line, b);
                if (x > tol.gauss) {
                    return {CaseTag::kCase2a, j, b, var, x, -1};
                }
            }
        }
    }
    CaseClassification c;
    c.tag = CaseTag::kCase2bViolation;
    c.rank = lambda_matrix_rank(state);
    return c;
}

/// Case scan for k >= 5; ties go to the smallest j, then b = 0, then the
/// first line of the G(H,H) pair.
[[nodiscard]] inline CaseClassification classify_case(const QubitState& state,
                                                      const Tolerances& tol = default_tolerances()) {
    detail::require_fermionic(state, tol, "classify_case");
    if (state.num_qubits() < 5) {
        throw std::invalid_argument("classify_case: need at least 5 qubits");
    }
    if (lambda_norm_sq(state) < tol.gauss) {
        throw PreconditionError("classify_case: state is Gaussian");
    }
    CaseClassification c = scan_cases(state, tol);
    if (c.tag == CaseTag::kCase2bViolation) {
        std::ostringstream os;
        os << "classify_case: no projector witness on a " << state.num_qubits()
           << "-qubit non-Gaussian state; rank(v) = " << c.rank;
        throw InvariantViolation(os.str(), c.rank);
    }
    return c;
}

// ---------------------------------------------------------------------------

struct ReduceMode {
    enum class Kind { kSample, kForceSuccess };
    Kind kind = Kind::kForceSuccess;
    Rng* rng = nullptr;
    int retry_budget = 20;

    [[nodiscard]] static ReduceMode force_success() { return {}; }
    [[nodiscard]] static ReduceMode sample(Rng& rng, int budget = 20) { return {Kind::kSample, &rng, budget}; }
};

struct ReductionStep {
    int k_in = 0;
    CaseClassification classification;
    std::vector<GateRecord> gates;
    std::vector<MeasurementRecord> measurements;  ///< all attempts
    int attempts = 0;
    int outcome = -1;
    bool success = false;
    QubitState output = QubitState::basis(1, 0);
};

/**
 * One reduction step k -> k-1. Force-success projects onto the witness
 * outcome (simulator privilege). Sample mode measures; any outcome whose
 * projection of v is non-zero is kept, otherwise a fresh copy is used, up to
 * the retry budget.
 */
[[nodiscard]] inline ReductionStep reduce_once(const QubitState& state, const ReduceMode& mode,
                                               const Tolerances& tol = default_tolerances()) {
    const CaseClassification c = classify_case(state, tol);
    ReductionStep step;
    step.k_in = state.num_qubits();
    step.classification = c;
    const int line = c.measured_line();
    const std::optional<int> pre =
        c.tag == CaseTag::kCase2a ? std::optional<int>(c.j) : std::optional<int>();
    bool keep[2] = {false, false};
    keep[c.b] = true;
    keep[1 - c.b] = projected_v_norm_sq(state, line, 1 - c.b, pre, tol) > tol.gauss;

    if (mode.kind == ReduceMode::Kind::kSample && mode.rng == nullptr) {
        throw std::invalid_argument("reduce_once: sample mode needs an rng");
    }
    const int budget = mode.kind == ReduceMode::Kind::kSample ? std::max(1, mode.retry_budget) : 1;
    for (int attempt = 1; attempt <= budget; ++attempt) {
        FreeOpRunner run(state, true, tol);
        if (pre) {
            run.apply(gates::ghh(), *pre);
        }
        int b = 0;
        const std::string label = "reduce.k" + std::to_string(step.k_in) + ".try" + std::to_string(attempt);
        if (mode.kind == ReduceMode::Kind::kForceSuccess) {
            run.project(line, c.b, label);
            b = c.b;
        } else {
            OutcomePolicy policy(*mode.rng);
            b = run.measure(line, policy, label);
        }
        step.attempts = attempt;
        step.measurements.push_back(run.measurements().back());
        if (!keep[b]) {
            step.gates.insert(step.gates.end(), run.gates().begin(), run.gates().end());
            continue;
        }
        run.discard_basis_line(line, b);
        step.gates.insert(step.gates.end(), run.gates().begin(), run.gates().end());
        step.outcome = b;
        step.output = run.state();
        if (lambda_norm_sq(step.output) <= tol.gauss) {
            throw InvariantViolation("reduce_once: reduced state is Gaussian", c.measured_line());
        }
        step.success = true;
        return step;
    }
    return step;
}

struct ReductionChain {
    std::vector<ReductionStep> steps;
    bool success = false;
    QubitState magic4 = QubitState::basis(4, 0);  ///< 4-qubit state before canonicalisation
    CanonicalForm form;
    QubitState canonical = QubitState::basis(4, 0);  ///< psi_phi
};

/// Iterates reduce_once down to four qubits and canonicalises the result.
[[nodiscard]] inline ReductionChain reduce_to_magic4(const QubitState& state, const ReduceMode& mode,
                                                     const Tolerances& tol = default_tolerances()) {
    if (state.num_qubits() < 4) {
        throw std::invalid_argument("reduce_to_magic4: need at least 4 qubits");
    }
    detail::require_fermionic(state, tol, "reduce_to_magic4");
    if (lambda_norm_sq(state) < tol.gauss) {
        throw PreconditionError("reduce_to_magic4: state is Gaussian");
    }
    ReductionChain chain;
    QubitState cur = state;
    while (cur.num_qubits() > 4) {
        ReductionStep step = reduce_once(cur, mode, tol);
        const bool ok = step.success;
        if (ok) {
            cur = step.output;
        }
        chain.steps.push_back(std::move(step));
        if (!ok) {
            return chain;
        }
    }
    chain.magic4 = cur;
    chain.form = canonical_form(cur, tol);
    chain.canonical = apply_canonical(cur, chain.form, tol);
    if (chain.form.phi <= tol.magic_phi) {
        throw InvariantViolation("reduce_to_magic4: canonical phase vanished", 4);
    }
    chain.success = true;
    return chain;
}

}  // namespace mgmagic
