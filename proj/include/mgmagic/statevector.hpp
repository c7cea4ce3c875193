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
 * Dense n-qubit state vectors: parity analysis, nearest-neighbour two-qubit
 * gates, projections, computational-basis measurement and Schmidt
 * decomposition across an arbitrary bipartition of lines.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "config.hpp"

namespace mgmagic {

using Amplitudes = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;

enum class Parity { kEven, kOdd, kIndefinite };

[[nodiscard]] inline std::string to_string(Parity p) {
    switch (p) {
        case Parity::kEven:
            return "even";
        case Parity::kOdd:
            return "odd";
        case Parity::kIndefinite:
            break;
    }
    return "indefinite";
}

/**
 * @brief Amplitude vector of an n-qubit pure state.
 *
 * Normalised states are the default; projection results that are kept
 * unnormalised carry `normalized() == false` instead of being silently
 * rescaled.
 */
class QubitState {
  public:
    QubitState() : QubitState(1, unit_vector(2, 0)) {}

    QubitState(int n, Amplitudes amps, const Tolerances& tol = default_tolerances())
        : n_(n), amps_(std::move(amps)) {
        check_shape();
        if (std::abs(amps_.squaredNorm() - 1.0) > tol.norm) {
            std::ostringstream os;
            os << "QubitState: amplitudes not normalised (norm^2 = " << amps_.squaredNorm() << ")";
            throw std::invalid_argument(os.str());
        }
    }

    /// Wraps an unnormalised intermediate vector (e.g. P_b|psi>).
    [[nodiscard]] static QubitState unnormalized(int n, Amplitudes amps) {
        QubitState s;
        s.n_ = n;
        s.amps_ = std::move(amps);
        s.normalized_ = false;
        s.check_shape();
        return s;
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    [[nodiscard]] static QubitState normalize(int n, Amplitudes amps) {
        const double nrm = amps.norm();
        if (nrm == 0.0) {
            throw std::invalid_argument("QubitState::normalize: zero vector");
        }
        amps /= nrm;
        return QubitState(n, std::move(amps));
    }

    [[nodiscard]] static QubitState basis(int n, std::size_t index) {
        if (n < 1 || n > kMaxQubits) {
            throw std::invalid_argument("QubitState::basis: qubit count out of range");
        }
        const std::size_t dim = std::size_t{1} << static_cast<unsigned>(n);
        if (index >= dim) {
            throw std::out_of_range("QubitState::basis: index out of range");
        }
        return QubitState(n, unit_vector(dim, index));
    }

    /// Basis state from a bitstring such as "0110" (line 1 first).
    [[nodiscard]] static QubitState from_bits(std::string_view bits) {
        std::size_t index = 0;
        for (char c : bits) {
            if (c != '0' && c != '1') {
                throw std::invalid_argument("QubitState::from_bits: expected only 0/1");
            }
            index = (index << 1U) | static_cast<std::size_t>(c - '0');
        }
        return basis(static_cast<int>(bits.size()), index);
    }

    [[nodiscard]] int num_qubits() const noexcept { return n_; }
    [[nodiscard]] std::size_t dim() const noexcept { return static_cast<std::size_t>(amps_.size()); }
    [[nodiscard]] const Amplitudes& amplitudes() const noexcept { return amps_; }
    [[nodiscard]] Complex operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }
    [[nodiscard]] bool normalized() const noexcept { return normalized_; }
    [[nodiscard]] double norm() const { return amps_.norm(); }
    [[nodiscard]] bool is_zero(double tol) const { return amps_.norm() <= tol; }

  private:
    static Amplitudes unit_vector(std::size_t dim, std::size_t index) {
        Amplitudes v = Amplitudes::Zero(static_cast<Eigen::Index>(dim));
        v(static_cast<Eigen::Index>(index)) = 1.0;
        return v;
    }

    void check_shape() const {
        if (n_ < 1 || n_ > kMaxQubits) {
            throw std::invalid_argument("QubitState: qubit count must lie in [1, 14]");
        }
        if (amps_.size() != (Eigen::Index{1} << n_)) {
            throw std::invalid_argument("QubitState: amplitude vector length must be 2^n");
        }
    }

    int n_ = 1;
    Amplitudes amps_;
    bool normalized_ = true;
};

// ---------------------------------------------------------------------------
// small helpers

[[nodiscard]] inline Complex inner(const QubitState& a, const QubitState& b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("inner: qubit count mismatch");
    }
    return a.amplitudes().dot(b.amplitudes());
}

/// |<a|b>|^2 / (<a|a><b|b>); insensitive to global phase.
[[nodiscard]] inline double fidelity(const QubitState& a, const QubitState& b) {
    const double na = a.amplitudes().squaredNorm();
    const double nb = b.amplitudes().squaredNorm();
    return std::norm(inner(a, b)) / (na * nb);
}

/// Max-norm distance between amplitude vectors (phase sensitive).
[[nodiscard]] inline double max_distance(const QubitState& a, const QubitState& b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("max_distance: qubit count mismatch");
    }
    return (a.amplitudes() - b.amplitudes()).cwiseAbs().maxCoeff();
}

/// |a> (x) |b>, with a on the leading lines.
[[nodiscard]] inline QubitState tensor(const QubitState& a, const QubitState& b) {
    const int n = a.num_qubits() + b.num_qubits();
    if (n > kMaxQubits) {
        throw std::invalid_argument("tensor: combined register exceeds 14 qubits");
    }
    Amplitudes out(static_cast<Eigen::Index>(a.dim() * b.dim()));
    for (std::size_t i = 0; i < a.dim(); ++i) {
        out.segment(static_cast<Eigen::Index>(i * b.dim()), static_cast<Eigen::Index>(b.dim())) =
            a[i] * b.amplitudes();
    }
    if (a.normalized() && b.normalized()) {
        return QubitState(n, std::move(out));
    }
    return QubitState::unnormalized(n, std::move(out));
}

[[nodiscard]] inline Matrix2 pauli_x() { return (Matrix2() << 0, 1, 1, 0).finished(); }
[[nodiscard]] inline Matrix2 pauli_y() {
    return (Matrix2() << 0, Complex(0, -1), Complex(0, 1), 0).finished();
}
[[nodiscard]] inline Matrix2 pauli_z() { return (Matrix2() << 1, 0, 0, -1).finished(); }
[[nodiscard]] inline Matrix2 hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    return (Matrix2() << s, s, s, -s).finished();
}

[[nodiscard]] inline double unitarity_defect(const Matrix& u) {
    if (u.rows() != u.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// parity

/// Even/Odd when every amplitude above tol.amp sits on basis strings of one
/// bit-sum parity, Indefinite otherwise.
[[nodiscard]] inline Parity parity(const QubitState& state, const Tolerances& tol = default_tolerances()) {
    bool seen_even = false;
    bool seen_odd = false;
    for (std::size_t i = 0; i < state.dim(); ++i) {
        if (std::abs(state[i]) > tol.amp) {
            (popcount_parity(i) != 0 ? seen_odd : seen_even) = true;
        }
    }
    if (seen_even && seen_odd) {
        return Parity::kIndefinite;
    }
    return seen_odd ? Parity::kOdd : Parity::kEven;
}

[[nodiscard]] inline bool is_fermionic(const QubitState& state, const Tolerances& tol = default_tolerances()) {
    return parity(state, tol) != Parity::kIndefinite;
}

// ---------------------------------------------------------------------------
// gate kernels (in place, no validation)

namespace detail {

inline void check_line(int line, int n, int last_allowed, const char* who) {
    if (line < 1 || line > last_allowed || last_allowed > n) {
        std::ostringstream os;
        os << who << ": line " << line << " out of range for " << n << " qubits";
        throw std::out_of_range(os.str());
    }
}

/// Applies the 4x4 matrix `u` to lines (j, j+1); line j is the high bit of
/// the local 2-qubit index.
inline void apply_two_qubit_inplace(Amplitudes& amps, int n, const Matrix4& u, int j) {
    const std::size_t hi = line_mask(j, n);
    const std::size_t lo = line_mask(j + 1, n);
    const std::size_t dim = static_cast<std::size_t>(amps.size());
    const std::size_t low_mask = lo - 1;
    const std::size_t quarter = dim >> 2U;
    Complex* a = amps.data();
    for (std::size_t k = 0; k < quarter; ++k) {
        // insert two zero bits at positions of lo and hi (adjacent)
        const std::size_t base = ((k & ~low_mask) << 2U) | (k & low_mask);
        const std::size_t i0 = base;
        const std::size_t i1 = base | lo;
        const std::size_t i2 = base | hi;
        const std::size_t i3 = base | hi | lo;
        const Complex v0 = a[i0];
        const Complex v1 = a[i1];
        const Complex v2 = a[i2];
        const Complex v3 = a[i3];
        a[i0] = u(0, 0) * v0 + u(0, 1) * v1 + u(0, 2) * v2 + u(0, 3) * v3;
        a[i1] = u(1, 0) * v0 + u(1, 1) * v1 + u(1, 2) * v2 + u(1, 3) * v3;
        a[i2] = u(2, 0) * v0 + u(2, 1) * v1 + u(2, 2) * v2 + u(2, 3) * v3;
        a[i3] = u(3, 0) * v0 + u(3, 1) * v1 + u(3, 2) * v2 + u(3, 3) * v3;
    }
}

inline void apply_one_qubit_inplace(Amplitudes& amps, int n, const Matrix2& u, int line) {
    const std::size_t m = line_mask(line, n);
    const std::size_t dim = static_cast<std::size_t>(amps.size());
    Complex* a = amps.data();
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & m) != 0) {
            continue;
        }
        const Complex v0 = a[i];
        const Complex v1 = a[i | m];
        a[i] = u(0, 0) * v0 + u(0, 1) * v1;
        a[i | m] = u(1, 0) * v0 + u(1, 1) * v1;
    }
}

/// Zeroes every amplitude whose line `line` differs from b.
inline void project_inplace(Amplitudes& amps, int n, int line, int b) {
    const std::size_t m = line_mask(line, n);
    for (std::size_t i = 0; i < static_cast<std::size_t>(amps.size()); ++i) {
        if (((i & m) != 0) != (b != 0)) {
            amps(static_cast<Eigen::Index>(i)) = 0.0;
        }
    }
}

[[nodiscard]] inline double probability_of(const Amplitudes& amps, int n, int line, int b) {
    const std::size_t m = line_mask(line, n);
    double p = 0.0;
    for (std::size_t i = 0; i < static_cast<std::size_t>(amps.size()); ++i) {
        if (((i & m) != 0) == (b != 0)) {
            p += std::norm(amps(static_cast<Eigen::Index>(i)));
        }
    }
    return p;
}

/// Removes line `line`, keeping the amplitudes whose bit there equals b.
[[nodiscard]] inline Amplitudes remove_line(const Amplitudes& amps, int n, int line, int b) {
    const std::size_t m = line_mask(line, n);
    const std::size_t low_mask = m - 1;
    Amplitudes out(amps.size() / 2);
    for (std::size_t k = 0; k < static_cast<std::size_t>(out.size()); ++k) {
        std::size_t i = ((k & ~low_mask) << 1U) | (k & low_mask);
        if (b != 0) {
            i |= m;
        }
        out(static_cast<Eigen::Index>(k)) = amps(static_cast<Eigen::Index>(i));
    }
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// gates, projection, measurement

/// U applied to lines (j, j+1). Rejects non-unitary U.
[[nodiscard]] inline QubitState apply_two_qubit(const QubitState& state, const Matrix4& u, int j,
                                                const Tolerances& tol = default_tolerances()) {
    detail::check_line(j, state.num_qubits(), state.num_qubits() - 1, "apply_two_qubit");
    if (unitarity_defect(u) > tol.unitary) {
        throw std::invalid_argument("apply_two_qubit: gate is not unitary");
    }
    Amplitudes amps = state.amplitudes();
    detail::apply_two_qubit_inplace(amps, state.num_qubits(), u, j);
    if (!state.normalized()) {
        return QubitState::unnormalized(state.num_qubits(), std::move(amps));
    }
    return QubitState(state.num_qubits(), std::move(amps), tol);
}

struct Projection {
    double probability = 0.0;
    /// Renormalised post-measurement state, or the raw (near-zero) projected
    /// vector flagged unnormalised when the probability vanishes.
    QubitState post;

    [[nodiscard]] bool null() const noexcept { return !post.normalized(); }
};

/// P_b^{(j)}|psi> without renormalisation.
[[nodiscard]] inline QubitState project_unnormalized(const QubitState& state, int j, int b) {
    detail::check_line(j, state.num_qubits(), state.num_qubits(), "project");
    Amplitudes amps = state.amplitudes();
    detail::project_inplace(amps, state.num_qubits(), j, b);
    return QubitState::unnormalized(state.num_qubits(), std::move(amps));
}

[[nodiscard]] inline Projection project(const QubitState& state, int j, int b,
                                        const Tolerances& tol = default_tolerances()) {
    QubitState raw = project_unnormalized(state, j, b);
    const double p = raw.amplitudes().squaredNorm();
    if (p <= tol.prob) {
        return {p, std::move(raw)};
    }
    return {p, QubitState(state.num_qubits(), raw.amplitudes() / std::sqrt(p))};
}

struct MeasurementResult {
    int outcome = 0;
    double probability = 0.0;
    QubitState post;
};

[[nodiscard]] inline MeasurementResult measure(const QubitState& state, int j, OutcomePolicy& policy,
                                               const Tolerances& tol = default_tolerances()) {
    detail::check_line(j, state.num_qubits(), state.num_qubits(), "measure");
    const double p1 = detail::probability_of(state.amplitudes(), state.num_qubits(), j, 1);
    const int b = policy.choose(p1, tol.prob);
    Projection proj = project(state, j, b, tol);
    return {b, proj.probability, std::move(proj.post)};
}

[[nodiscard]] inline MeasurementResult measure(const QubitState& state, int j, Rng& rng,
                                               const Tolerances& tol = default_tolerances()) {
    OutcomePolicy policy(rng);
    return measure(state, j, policy, tol);
}

/// Adds a fresh line in basis state |b> after the last line.
[[nodiscard]] inline QubitState append_basis_line(const QubitState& state, int b) {
    return tensor(state, QubitState::basis(1, static_cast<std::size_t>(b)));
}

/// Removes line j, which must be in product state |b>.
[[nodiscard]] inline QubitState remove_basis_line(const QubitState& state, int j, int b,
                                                  const Tolerances& tol = default_tolerances()) {
    detail::check_line(j, state.num_qubits(), state.num_qubits(), "remove_basis_line");
    if (state.num_qubits() < 2) {
        throw std::invalid_argument("remove_basis_line: cannot remove the only line");
    }
    const double p = detail::probability_of(state.amplitudes(), state.num_qubits(), j, b);
    if (std::abs(p - state.amplitudes().squaredNorm()) > tol.product) {
        throw PreconditionError("remove_basis_line: line is not in the claimed basis state");
    }
    Amplitudes out = detail::remove_line(state.amplitudes(), state.num_qubits(), j, b);
    if (!state.normalized()) {
        return QubitState::unnormalized(state.num_qubits() - 1, std::move(out));
    }
    return QubitState::normalize(state.num_qubits() - 1, std::move(out));
}

/// Single-line Z-parity expectation <Z^{(x)block}> over a contiguous block.
[[nodiscard]] inline double block_parity_expectation(const QubitState& state, int first, int last) {
    std::size_t mask = 0;
    for (int l = first; l <= last; ++l) {
        mask |= line_mask(l, state.num_qubits());
    }
    double e = 0.0;
    for (std::size_t i = 0; i < state.dim(); ++i) {
        const double w = std::norm(state[i]);
        e += popcount_parity(i & mask) != 0 ? -w : w;
    }
    return e / state.amplitudes().squaredNorm();
}

// ---------------------------------------------------------------------------
// Schmidt decomposition

/**
 * @brief Schmidt data of a state across `left | right`.
 *
 * `left_unitary (x) right_unitary` maps the state (with its lines regrouped
 * as left lines followed by right lines, each in increasing order) onto
 * sum_k coeffs[k] |k>_left |k>_right.
 */
struct SchmidtDecomposition {
    std::vector<int> left_lines;
    std::vector<int> right_lines;
    Eigen::VectorXd coeffs;
    Matrix left_unitary;
    Matrix right_unitary;
};

/// Amplitude matrix Psi[a][b] with a indexing the left lines and b the right.
[[nodiscard]] inline Matrix bipartite_matrix(const QubitState& state, std::span<const int> left,
                                             std::span<const int> right) {
    const int n = state.num_qubits();
    const Eigen::Index rows = Eigen::Index{1} << left.size();
    const Eigen::Index cols = Eigen::Index{1} << right.size();
    Matrix psi(rows, cols);
    for (std::size_t i = 0; i < state.dim(); ++i) {
        Eigen::Index a = 0;
        for (int l : left) {
            a = (a << 1) | line_bit(i, l, n);
        }
        Eigen::Index b = 0;
        for (int l : right) {
            b = (b << 1) | line_bit(i, l, n);
        }
        psi(a, b) = state[i];
    }
    return psi;
}

[[nodiscard]] inline SchmidtDecomposition schmidt(const QubitState& state, std::vector<int> left) {
    const int n = state.num_qubits();
    std::sort(left.begin(), left.end());
    left.erase(std::unique(left.begin(), left.end()), left.end());
    if (left.empty() || static_cast<int>(left.size()) >= n || left.front() < 1 || left.back() > n) {
        throw std::invalid_argument("schmidt: left must be a proper nonempty subset of lines");
    }
    std::vector<int> right;
    for (int l = 1; l <= n; ++l) {
        if (!std::binary_search(left.begin(), left.end(), l)) {
            right.push_back(l);
        }
    }
    const Matrix psi = bipartite_matrix(state, left, right);
    Eigen::JacobiSVD<Matrix> svd(psi, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Matrix u = svd.matrixU();
    Matrix v = svd.matrixV();
    const Eigen::VectorXd sv = svd.singularValues();
    const Eigen::Index r = sv.size();

    // Phase-fix each pair (u_k, v_k) so the first significant entry of v_k is
    // real positive; then order degenerate clusters lexicographically by v_k.
    for (Eigen::Index k = 0; k < r; ++k) {
        for (Eigen::Index m = 0; m < v.rows(); ++m) {
            if (std::abs(v(m, k)) > 1e-12) {
                const Complex ph = std::conj(v(m, k)) / std::abs(v(m, k));
                v.col(k) *= ph;
                u.col(k) *= ph;
                break;
            }
        }
    }
    std::vector<Eigen::Index> order(static_cast<std::size_t>(r));
    std::iota(order.begin(), order.end(), 0);
    auto lex_less = [&](Eigen::Index a, Eigen::Index b) {
        for (Eigen::Index m = 0; m < v.rows(); ++m) {
            const Complex x = v(m, a);
            const Complex y = v(m, b);
            if (std::abs(x.real() - y.real()) > 1e-12) {
                return x.real() > y.real();
            }
            if (std::abs(x.imag() - y.imag()) > 1e-12) {
                return x.imag() > y.imag();
            }
        }
        return false;
    };
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        if (std::abs(sv(a) - sv(b)) > 1e-12) {
            return sv(a) > sv(b);
        }
        return lex_less(a, b);
    });
    Matrix u_sorted = u;
    Matrix v_sorted = v;
    Eigen::VectorXd coeffs(r);
    for (Eigen::Index k = 0; k < r; ++k) {
        u_sorted.col(k) = u.col(order[static_cast<std::size_t>(k)]);
        v_sorted.col(k) = v.col(order[static_cast<std::size_t>(k)]);
        coeffs(k) = sv(order[static_cast<std::size_t>(k)]);
    }
    // Psi = U S V^dag  =>  U^dag Psi (V^T)^T = S
    return {std::move(left), std::move(right), coeffs, u_sorted.adjoint(), v_sorted.transpose()};
}

/// (L (x) R) applied to the regrouped amplitude matrix: returns L Psi R^T.
[[nodiscard]] inline Matrix apply_bipartite(const QubitState& state, const SchmidtDecomposition& sd) {
    return sd.left_unitary * bipartite_matrix(state, sd.left_lines, sd.right_lines) *
           sd.right_unitary.transpose();
}

}  // namespace mgmagic
