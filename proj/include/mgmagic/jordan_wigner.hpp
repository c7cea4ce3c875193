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
 * Jordan-Wigner Majorana operators as Pauli strings and the Lambda-operator
 * Gaussianity tests.
 *
 * For a state psi the doubled-space quantity ||Lambda_n |psi>|psi>||^2, with
 * Lambda_n = sum_i c_i (x) c_i, equals sum_{ij} <psi|c_i c_j|psi>^2 and is
 * evaluated from the 2n x 2n correlation matrix in O(n^2 2^n).
 */
#pragma once

#include <string>
#include <vector>

#include "statevector.hpp"

namespace mgmagic {

enum class Pauli : unsigned char { kI, kX, kY, kZ };

/// phase * P_1 (x) ... (x) P_n
class PauliString {
  public:
    PauliString(std::vector<Pauli> letters, Complex phase = 1.0)
        : letters_(std::move(letters)), phase_(phase) {
        const int n = num_qubits();
        if (n < 1 || n > kMaxQubits) {
            throw std::invalid_argument("PauliString: length must lie in [1, 14]");
        }
        for (int l = 1; l <= n; ++l) {
            const std::size_t m = line_mask(l, n);
            switch (letters_[static_cast<std::size_t>(l - 1)]) {
                case Pauli::kX:
                    x_mask_ |= m;
                    break;
                case Pauli::kY:
                    x_mask_ |= m;
                    y_mask_ |= m;
                    break;
                case Pauli::kZ:
                    z_mask_ |= m;
                    break;
                case Pauli::kI:
                    break;
            }
        }
    }

    /// Parses strings such as "ZXI" or "-iZY".
    [[nodiscard]] static PauliString parse(std::string_view text) {
        Complex phase = 1.0;
        if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
            phase = text.front() == '-' ? -1.0 : 1.0;
            text.remove_prefix(1);
        }
        if (!text.empty() && text.front() == 'i') {
            phase *= Complex(0, 1);
            text.remove_prefix(1);
        }
        std::vector<Pauli> letters;
        for (char c : text) {
            switch (c) {
                case 'I':
                    letters.push_back(Pauli::kI);
                    break;
                case 'X':
                    letters.push_back(Pauli::kX);
                    break;
                case 'Y':
                    letters.push_back(Pauli::kY);
                    break;
                case 'Z':
                    letters.push_back(Pauli::kZ);
                    break;
                default:
                    throw std::invalid_argument("PauliString::parse: unexpected character");
            }
        }
        return {std::move(letters), phase};
    }

    [[nodiscard]] int num_qubits() const noexcept { return static_cast<int>(letters_.size()); }
    [[nodiscard]] const std::vector<Pauli>& letters() const noexcept { return letters_; }
    [[nodiscard]] Complex phase() const noexcept { return phase_; }
    [[nodiscard]] std::size_t x_mask() const noexcept { return x_mask_; }

    /// Letters only, e.g. "ZYI".
    [[nodiscard]] std::string letters_string() const {
        std::string s;
        for (Pauli p : letters_) {
            s.push_back("IXYZ"[static_cast<int>(p)]);
        }
        return s;
    }

    /// Coefficient f(i) with P|i> = f(i)|i xor x_mask>.
    [[nodiscard]] Complex coefficient(std::size_t i) const {
        Complex f = phase_;
        const int ny = __builtin_popcountll(y_mask_);
        static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        f *= kIPow[ny & 3];
        if (popcount_parity((i & z_mask_) ^ (i & y_mask_)) != 0) {
            f = -f;
        }
        return f;
    }

    /// Product this * other, tracking the phase from single-qubit algebra.
    [[nodiscard]] PauliString operator*(const PauliString& other) const {
        if (other.num_qubits() != num_qubits()) {
            throw std::invalid_argument("PauliString: length mismatch in product");
        }
        // table[a][b] = (phase, letter) for a*b
        static constexpr int kLetter[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
        // phase exponents of i: XY = iZ, YZ = iX, ZX = iY and reversed = -i
        static constexpr int kPhase[4][4] = {{0, 0, 0, 0}, {0, 0, 1, 3}, {0, 3, 0, 1}, {0, 1, 3, 0}};
        static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        std::vector<Pauli> out(letters_.size());
        int ipow = 0;
        for (std::size_t q = 0; q < letters_.size(); ++q) {
            const int a = static_cast<int>(letters_[q]);
            const int b = static_cast<int>(other.letters_[q]);
            out[q] = static_cast<Pauli>(kLetter[a][b]);
            ipow += kPhase[a][b];
        }
        return {std::move(out), phase_ * other.phase_ * kIPow[ipow & 3]};
    }

    [[nodiscard]] bool operator==(const PauliString& o) const {
        return letters_ == o.letters_ && std::abs(phase_ - o.phase_) < 1e-15;
    }

  private:
    std::vector<Pauli> letters_;
    Complex phase_;
    std::size_t x_mask_ = 0;
    std::size_t y_mask_ = 0;
    std::size_t z_mask_ = 0;
};

/// Majorana operator c_l on n qubits, l in [1, 2n]: Z^{(x) j-1} (x) P_j (x) I...,
/// with j = ceil(l/2) and P = X for odd l, Y for even l.
[[nodiscard]] inline PauliString jw_operator(int n, int l) {
    if (n < 1 || n > kMaxQubits) {
        throw std::invalid_argument("jw_operator: qubit count out of range");
    }
    if (l < 1 || l > 2 * n) {
        throw std::out_of_range("jw_operator: index l must lie in [1, 2n]");
    }
    const int j = (l + 1) / 2;
    std::vector<Pauli> letters(static_cast<std::size_t>(n), Pauli::kI);
    for (int q = 1; q < j; ++q) {
        letters[static_cast<std::size_t>(q - 1)] = Pauli::kZ;
    }
    letters[static_cast<std::size_t>(j - 1)] = (l % 2 == 1) ? Pauli::kX : Pauli::kY;
    return PauliString(std::move(letters));
}

namespace detail {

inline Amplitudes apply_pauli_raw(const Amplitudes& in, const PauliString& p) {
    Amplitudes out(in.size());
    const std::size_t xm = p.x_mask();
    for (std::size_t i = 0; i < static_cast<std::size_t>(in.size()); ++i) {
        out(static_cast<Eigen::Index>(i ^ xm)) = p.coefficient(i) * in(static_cast<Eigen::Index>(i));
    }
    return out;
}

}  // namespace detail

[[nodiscard]] inline QubitState apply_pauli(const QubitState& state, const PauliString& p) {
    if (p.num_qubits() != state.num_qubits()) {
        throw std::invalid_argument("apply_pauli: dimension mismatch");
    }
    Amplitudes out = detail::apply_pauli_raw(state.amplitudes(), p);
    if (!state.normalized()) {
        return QubitState::unnormalized(state.num_qubits(), std::move(out));
    }
    return QubitState(state.num_qubits(), std::move(out));
}

/// The 2n vectors c_l|psi> as columns (l = 1..2n maps to column l-1).
[[nodiscard]] inline Matrix majorana_images(const Amplitudes& amps, int n) {
    Matrix w(amps.size(), 2 * n);
    for (int l = 1; l <= 2 * n; ++l) {
        w.col(l - 1) = detail::apply_pauli_raw(amps, jw_operator(n, l));
    }
    return w;
}

/// M[i][j] = <psi|c_i c_j|psi>.
struct CorrelationMatrix {
    Matrix m;
};

[[nodiscard]] inline CorrelationMatrix correlation_matrix(const QubitState& state) {
    const Matrix w = majorana_images(state.amplitudes(), state.num_qubits());
    return {w.adjoint() * w};
}

/// sum_{ij} <w_i|w_j>^2 for the columns w_i of `w`; this is the squared norm
/// of sum_i w_i (x) w_i.
[[nodiscard]] inline double doubled_norm_sq(const Matrix& w) {
    const Matrix gram = w.adjoint() * w;
    Complex s = 0.0;
    for (Eigen::Index i = 0; i < gram.rows(); ++i) {
        for (Eigen::Index j = 0; j < gram.cols(); ++j) {
            s += gram(i, j) * gram(i, j);
        }
    }
    return s.real();
}

/// ||Lambda_n |psi>^{(x)2}||^2.
[[nodiscard]] inline double lambda_norm_sq(const QubitState& state) {
    return doubled_norm_sq(majorana_images(state.amplitudes(), state.num_qubits()));
}

/// Gaussianity of a fermionic pure state. Indefinite-parity input is refused.
[[nodiscard]] inline bool is_gaussian_state(const QubitState& state, const Tolerances& tol = default_tolerances()) {
    if (parity(state, tol) == Parity::kIndefinite) {
        throw PreconditionError("is_gaussian_state: state has indefinite parity");
    }
    return lambda_norm_sq(state) < tol.gauss;
}

/// Largest amplitude coupling parity sectors, |U_rc| with parity(r) != parity(c).
[[nodiscard]] inline double odd_block_norm(const Matrix& u) {
    double worst = 0.0;
    for (Eigen::Index r = 0; r < u.rows(); ++r) {
        for (Eigen::Index c = 0; c < u.cols(); ++c) {
            if (popcount_parity(static_cast<std::size_t>(r)) != popcount_parity(static_cast<std::size_t>(c))) {
                worst = std::max(worst, std::abs(u(r, c)));
            }
        }
    }
    return worst;
}

/**
 * Max over i of the residual of U c_i U^dag after projecting onto
 * span{c_1..c_2n} (Hilbert-Schmidt orthogonal, tr(c_k c_l) = 2^n delta_kl).
 * Zero exactly for Gaussian (matchgate-generated) unitaries.
 */
[[nodiscard]] inline double majorana_closure_residual(const Matrix& u, int n) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    std::vector<PauliString> c;
    c.reserve(static_cast<std::size_t>(2 * n));
    for (int l = 1; l <= 2 * n; ++l) {
        c.push_back(jw_operator(n, l));
    }
    const Matrix ud = u.adjoint();
    double worst = 0.0;
    for (const PauliString& ci : c) {
        Matrix ci_ud(dim, dim);
        for (Eigen::Index col = 0; col < dim; ++col) {
            ci_ud.col(col) = detail::apply_pauli_raw(ud.col(col), ci);
        }
        Matrix k = u * ci_ud;
        for (const PauliString& ck : c) {
            // r = tr(c_k K) / 2^n ; (c_k)_{s^x, s} = f(s)
            Complex tr = 0.0;
            for (Eigen::Index s = 0; s < dim; ++s) {
                const auto sx = static_cast<Eigen::Index>(static_cast<std::size_t>(s) ^ ck.x_mask());
                tr += ck.coefficient(static_cast<std::size_t>(s)) * k(s, sx);
            }
            const Complex r = tr / static_cast<double>(dim);
            for (Eigen::Index s = 0; s < dim; ++s) {
                const auto sx = static_cast<Eigen::Index>(static_cast<std::size_t>(s) ^ ck.x_mask());
                k(sx, s) -= r * ck.coefficient(static_cast<std::size_t>(s));
            }
        }
        worst = std::max(worst, k.cwiseAbs().maxCoeff());
    }
    return worst;
}

/// Gaussianity of an even unitary on n <= 6 qubits via conjugation closure of
/// the Majorana span.
[[nodiscard]] inline bool is_gaussian_unitary(const Matrix& u, const Tolerances& tol = default_tolerances()) {
    if (u.rows() != u.cols() || u.rows() < 2 || (u.rows() & (u.rows() - 1)) != 0) {
        throw std::invalid_argument("is_gaussian_unitary: expected a 2^n x 2^n matrix");
    }
    int n = 0;
    while ((Eigen::Index{1} << n) < u.rows()) {
        ++n;
    }
    if (n > 6) {
        throw std::invalid_argument("is_gaussian_unitary: supported for n <= 6 only");
    }
    if (unitarity_defect(u) > tol.unitary) {
        throw std::invalid_argument("is_gaussian_unitary: matrix is not unitary");
    }
    if (odd_block_norm(u) > tol.unitary) {
        throw PreconditionError("is_gaussian_unitary: operator is not even");
    }
    return majorana_closure_residual(u, n) < tol.unitary;
}

}  // namespace mgmagic
