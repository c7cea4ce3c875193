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
 * Shared numeric tolerances, error types, bit-indexing helpers and the
 * random-number plumbing used by every other header.
 *
 * Lines (qubits) are numbered from 1. Line 1 is the most significant bit of
 * an amplitude index, so index i of an n-qubit vector encodes the bitstring
 * i_1 i_2 ... i_n read left to right.
 */
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mgmagic {

using Complex = std::complex<double>;

/// Numerical budget of the toolkit. Every comparison against zero or one
/// goes through one of these fields.
struct Tolerances {
    double norm = 1e-10;      ///< |<psi|psi> - 1|
    double amp = 1e-12;       ///< amplitude counted as nonzero
    double prob = 1e-12;      ///< projection probability counted as nonzero
    double unitary = 1e-8;    ///< max-norm of U^dag U - I
    double det = 1e-10;       ///< |det A - det B| for matchgates
    double gauss = 1e-9;      ///< threshold on squared Lambda norms
    double product = 1e-9;    ///< a line is in a basis product state
    double fermionic = 1e-9;  ///< reduced-density parity check
    double magic_phi = 1e-6;  ///< canonical phase comparisons for resources
};

inline const Tolerances& default_tolerances() {
    static const Tolerances tol{};
    return tol;
}

/// A mathematical precondition of an operation does not hold for the given
/// state (Gaussian input to a reduction, non-fermionic block, wrong magic
/// state, ...).
class PreconditionError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// An internal invariant that the underlying theory guarantees was found
/// violated. Carries a numeric witness for diagnostics.
class InvariantViolation : public std::logic_error {
  public:
    InvariantViolation(const std::string& what, double witness)
        : std::logic_error(what), witness_(witness) {}
    [[nodiscard]] double witness() const noexcept { return witness_; }

  private:
    double witness_;
};

inline constexpr int kMaxQubits = 14;

/// Bit mask of line `line` (1-based) in an n-qubit index.
[[nodiscard]] inline std::size_t line_mask(int line, int n) {
    return std::size_t{1} << static_cast<unsigned>(n - line);
}

[[nodiscard]] inline int line_bit(std::size_t index, int line, int n) {
    return static_cast<int>((index >> static_cast<unsigned>(n - line)) & 1U);
}

[[nodiscard]] inline int popcount_parity(std::size_t x) {
    return __builtin_parityll(static_cast<unsigned long long>(x));
}

/// splitmix64 finaliser; derives independent per-trial seeds from a master
/// seed so that trial t always sees the same stream regardless of scheduling.
[[nodiscard]] inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seeded generator. Uniform variates are built from raw engine bits so the
/// stream is identical across standard library implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    [[nodiscard]] double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller.
    [[nodiscard]] double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= std::numeric_limits<double>::min()) {
            u1 = uniform();
        }
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(t);
        has_spare_ = true;
        return r * std::cos(t);
    }

    [[nodiscard]] Complex complex_normal() {
        const double re = normal();
        const double im = normal();
        return {re, im};
    }

    [[nodiscard]] std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound).
    [[nodiscard]] std::uint64_t below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(uniform() * static_cast<double>(bound)) % bound;
    }

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Decides computational-basis measurement outcomes: either sampled from the
/// Born rule or forced from a fixed script (branch enumeration).
class OutcomePolicy {
  public:
    explicit OutcomePolicy(Rng& rng) : rng_(&rng) {}
    explicit OutcomePolicy(std::vector<int> forced) : forced_(std::move(forced)) {}

    [[nodiscard]] bool forced() const noexcept { return rng_ == nullptr; }

    /// Returns the outcome for a measurement whose probability of reading 1
    /// is `p_one`. Forced outcomes with zero probability are rejected.
    int choose(double p_one, double prob_tol) {
        if (rng_ != nullptr) {
            return rng_->uniform() < p_one ? 1 : 0;
        }
        if (next_ >= forced_.size()) {
            throw std::out_of_range("OutcomePolicy: forced outcome script exhausted");
        }
        const int b = forced_[next_++];
        const double p = b == 1 ? p_one : 1.0 - p_one;
        if (p <= prob_tol) {
            throw PreconditionError("OutcomePolicy: forced outcome has zero probability");
        }
        return b;
    }

    [[nodiscard]] Rng* rng() const noexcept { return rng_; }

  private:
    Rng* rng_ = nullptr;
    std::vector<int> forced_;
    std::size_t next_ = 0;
};

}  // namespace mgmagic
