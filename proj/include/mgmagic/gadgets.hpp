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
 * Magic-state protocols built from free operations only:
 *
 *  - swap_through: moves a fermionic block across a neighbouring line with
 *    fSWAP chains (odd blocks borrow a |1> ancilla from the fringe);
 *  - swap_gadget: SWAP by gate teleportation over |phi+>_13 |phi+>_24;
 *  - cphi_round / double_phase_state / cphi_protocol: controlled-phase gate
 *    by teleportation over psi_phi, repeated until success with phase-doubled
 *    resource states.
 *
 * Gadget wiring on a register with targets at lines (j, j+1): the 4-line
 * resource is adjoined at the fringe and swapped through to sit between
 * the targets, giving  a=j, m1..m4=j+1..j+4, b=j+5. Bell measurements
 * (G(H,H) then two computational measurements) act on (a, m1) and (m4, b);
 * the outputs emerge on m2, m3 which then occupy (j, j+1) once the measured
 * lines are transported to the fringe and discarded.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "canonicalize.hpp"
#include "free_ops.hpp"
#include "jordan_wigner.hpp"
#include "matchgate.hpp"
#include "states.hpp"

namespace mgmagic {

/// psi_phi together with its phase.
struct MagicStateSpec {
    double phi = kPi;  ///< in [0, 2 pi)
    QubitState state = psi_phi(kPi);

    [[nodiscard]] static MagicStateSpec psi(double phi) {
        const double w = wrap_angle(phi);
        return {w, psi_phi(w)};
    }

    /// psi_phi is Gaussian exactly when phi = 0 (mod 2 pi).
    [[nodiscard]] bool is_magic(double tol = 1e-9) const { return angle_distance(phi, 0.0) > tol; }
};

struct GadgetTranscript {
    std::vector<MeasurementRecord> outcomes;
    std::vector<GateRecord> corrections;
    std::vector<GateRecord> gates;  ///< every gate applied (when recording)
    long consumed = 0;
    int rounds = 0;
    bool success = false;
    bool supply_exhausted = false;
    /// Per round: implemented phase as a signed integer multiple of phi, and
    /// the corresponding angle.
    std::vector<std::int64_t> applied_multiples;
    std::vector<double> applied_phase;
    /// Base copies consumed while producing the resource of each round.
    std::vector<long> consumed_per_round;

    void absorb_gates(const GadgetTranscript& other) {
        gates.insert(gates.end(), other.gates.begin(), other.gates.end());
    }
};

struct GadgetOptions {
    bool record_gates = true;
    Tolerances tol = default_tolerances();
};

// ---------------------------------------------------------------------------
// swap-through

struct LineBlock {
    int first = 1;
    int last = 1;
    [[nodiscard]] int size() const noexcept { return last - first + 1; }
};

enum class AncillaPolicy {
    kAdjoinFromFringe,  ///< odd blocks borrow |1> from the end of the register
    kRefuseOdd,
};

namespace detail {

inline Parity block_parity(const QubitState& s, LineBlock blk, const Tolerances& tol) {
    const double e = block_parity_expectation(s, blk.first, blk.last);
    if (std::abs(e - 1.0) <= tol.fermionic) {
        return Parity::kEven;
    }
    if (std::abs(e + 1.0) <= tol.fermionic) {
        return Parity::kOdd;
    }
    return Parity::kIndefinite;
}

/// Block and `across` exchanged on the runner; see swap_through.
inline void swap_through_on(FreeOpRunner& run, LineBlock blk, int across, AncillaPolicy policy) {
    const Tolerances& tol = run.tolerances();
    const int n = run.num_lines();
    if (blk.first < 1 || blk.last > n || blk.first > blk.last) {
        throw std::out_of_range("swap_through: block out of range");
    }
    const bool right = across == blk.last + 1;
    if (!right && across != blk.first - 1) {
        throw std::invalid_argument("swap_through: line is not adjacent to the block");
    }
    if (across < 1 || across > n) {
        throw std::out_of_range("swap_through: line out of range");
    }
    const Parity par = block_parity(run.state(), blk, tol);
    if (par == Parity::kIndefinite) {
        std::ostringstream os;
        os << "swap_through: block [" << blk.first << ", " << blk.last
           << "] has indefinite parity; an fSWAP chain would imprint a relative phase (-1) on the |1> "
              "branch of line "
           << across;
        throw PreconditionError(os.str());
    }
    const bool odd = par == Parity::kOdd;
    if (odd && policy == AncillaPolicy::kRefuseOdd) {
        throw PreconditionError("swap_through: odd block and ancillas are disallowed");
    }
    int last = blk.last;
    if (odd) {
        const int anc = run.add_basis_line(1);
        run.move_basis(anc, last + 1, 1);
        ++last;
        if (right) {
            ++across;
        }
    }
    if (right) {
        for (int p = across - 1; p >= blk.first; --p) {
            run.apply(gates::fswap(), p);
        }
        if (odd) {
            run.discard_basis_line(last + 1, 1);
        }
    } else {
        for (int p = across; p < last; ++p) {
            run.apply(gates::fswap(), p);
        }
        if (odd) {
            run.discard_basis_line(last - 1, 1);
        }
    }
}

}  // namespace detail

struct SwapThroughResult {
    QubitState state;
    std::vector<GateRecord> gates;
    bool used_ancilla = false;
};

/**
 * Exchanges a contiguous block with the adjacent line `across` using free
 * gates only. The block must have definite parity (checked on its reduced
 * state). Even blocks use k fSWAPs; odd blocks adjoin |1>, use k+1 fSWAPs and
 * remove the ancilla again. `across` may be entangled with distant lines.
 */
[[nodiscard]] inline SwapThroughResult swap_through(const QubitState& state, LineBlock block, int across,
                                                    AncillaPolicy policy = AncillaPolicy::kAdjoinFromFringe,
                                                    const Tolerances& tol = default_tolerances()) {
    FreeOpRunner run(state, true, tol);
    detail::swap_through_on(run, block, across, policy);
    const bool anc = run.gates().size() > static_cast<std::size_t>(block.size());
    return {run.state(), run.gates(), anc};
}

/// The bare k-gate fSWAP chain without any parity check or ancilla. Correct
/// only for even blocks; used to exhibit the failure on non-fermionic blocks.
[[nodiscard]] inline QubitState naive_fswap_chain(const QubitState& state, LineBlock blk, int across) {
    MatchgateCircuit c(state.num_qubits());
    if (across == blk.last + 1) {
        for (int p = blk.last; p >= blk.first; --p) {
            c.add(gates::fswap(), p);
        }
    } else if (across == blk.first - 1) {
        for (int p = across; p < blk.last; ++p) {
            c.add(gates::fswap(), p);
        }
    } else {
        throw std::invalid_argument("naive_fswap_chain: line is not adjacent to the block");
    }
    return run_circuit(state, c);
}

// ---------------------------------------------------------------------------
// teleportation core

namespace detail {

/// Pauli byproducts X^x Z^z left on the two output lines (first = line j).
struct Byproducts {
    int x_first = 0;
    int z_first = 0;
    int x_second = 0;
    int z_second = 0;
};

enum class ResourceWiring {
    kSwapChoi,   ///< |phi+>_13 |phi+>_24: a -> m3, b -> m2
    kPhaseChoi,  ///< psi_phi: a -> m2, b -> m3
};

inline int drop_measured_pair(FreeOpRunner& run, int line, OutcomePolicy& policy, const char* tag) {
    run.apply(gates::ghh(), line);
    const int u = run.measure(line, policy, std::string(tag) + ".first");
    const int w = run.measure(line + 1, policy, std::string(tag) + ".second");
    run.discard_basis_line(line + 1, w);
    run.discard_basis_line(line, u);
    // z = u, x = u xor w
    return (u << 1) | (u ^ w);
}

/// X on `line` via an ancilla |0> transported in, G(X,X), and the ancilla
/// (now |1>) transported back out.
inline void x_correction(FreeOpRunner& run, int line, GadgetTranscript& t) {
    const std::size_t mark = run.gates().size();
    const int anc = run.add_basis_line(0);
    run.move_basis(anc, line + 1, 0);
    run.apply(gates::gxx(), line);
    run.discard_basis_line(line + 1, 1);
    t.corrections.insert(t.corrections.end(), run.gates().begin() + static_cast<std::ptrdiff_t>(mark),
                         run.gates().end());
    if (run.gates().size() == mark) {
        // not recording: log the logical correction only
        t.corrections.push_back({gates::gxx(), line, run.num_lines() + 1});
    }
}

inline void z_correction(FreeOpRunner& run, int line, GadgetTranscript& t) {
    const std::size_t mark = run.gates().size();
    if (line < run.num_lines()) {
        run.apply(gates::gzz(), line);
    } else {
        run.apply(gates::gz_second(), line - 1);
    }
    if (run.gates().size() > mark) {
        t.corrections.push_back(run.gates().back());
    } else {
        t.corrections.push_back({gates::gzz(), line, run.num_lines()});
    }
}

/// Stages the resource between the targets, performs both Bell measurements
/// and discards the measured lines. Leaves the outputs on (j, j+1) with the
/// byproducts returned.
inline Byproducts teleport(FreeOpRunner& run, int j, const QubitState& resource, ResourceWiring wiring,
                           OutcomePolicy& policy) {
    const int n0 = run.num_lines();
    if (j < 1 || j > n0 - 1) {
        throw std::out_of_range("gadget: target pair out of range");
    }
    if (n0 + 5 > kMaxQubits) {
        throw std::invalid_argument("gadget: register too large to stage the resource");
    }
    const int first = run.add_register(resource);
    LineBlock blk{first, first + 3};
    for (int across = n0; across > j; --across) {
        swap_through_on(run, blk, across, AncillaPolicy::kRefuseOdd);
        --blk.first;
        --blk.last;
    }
    const int ab = drop_measured_pair(run, j, policy, "bell_a");      // (a, m1)
    const int bb = drop_measured_pair(run, j + 2, policy, "bell_b");  // (m4, b)
    Byproducts out;
    const int xa = ab & 1;
    const int za = ab >> 1;
    const int xb = bb & 1;
    const int zb = bb >> 1;
    if (wiring == ResourceWiring::kSwapChoi) {
        out = {xb, zb, xa, za};
    } else {
        out = {xa, za, xb, zb};
    }
    return out;
}

inline void copy_log(const FreeOpRunner& run, GadgetTranscript& t, bool record) {
    t.outcomes.insert(t.outcomes.end(), run.measurements().begin(), run.measurements().end());
    if (record) {
        t.gates.insert(t.gates.end(), run.gates().begin(), run.gates().end());
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// SWAP gadget

struct GadgetResult {
    QubitState state;
    GadgetTranscript transcript;
};

/// Converts any resource matchgate-equivalent to psi_pi into
/// |phi+>_13 |phi+>_24 = fSWAP_{2,3} psi_pi with free gates.
[[nodiscard]] inline QubitState prepare_swap_resource(const QubitState& magic, GadgetTranscript* log = nullptr,
                                                      const Tolerances& tol = default_tolerances()) {
    if (magic.num_qubits() != 4) {
        throw std::invalid_argument("swap_gadget: resource must have 4 qubits");
    }
    if (!is_fermionic(magic, tol)) {
        throw PreconditionError("swap_gadget: resource is not fermionic");
    }
    const CanonicalForm form = canonical_form(magic, tol);
    if (std::abs(form.phi - kPi) > tol.magic_phi) {
        std::ostringstream os;
        os << "swap_gadget: resource has canonical phi = " << form.phi << ", expected pi";
        throw PreconditionError(os.str());
    }
    FreeOpRunner run(magic, log != nullptr, tol);
    if (form.used_ancilla) {
        run.add_basis_line(0);
    }
    run.run(form.circuit);
    if (form.used_ancilla) {
        run.discard_basis_line(5, 1);
    }
    run.apply(gates::fswap(), 2);
    if (log != nullptr) {
        log->gates.insert(log->gates.end(), run.gates().begin(), run.gates().end());
    }
    return run.state();
}

/**
 * SWAP on lines (j, j+1) by gate teleportation. `magic` is any 4-qubit
 * resource with canonical phi = pi; it is first brought to |phi+>_13|phi+>_24
 * with free gates. Deterministic: every measurement branch yields SWAP up to
 * a global phase.
 */
[[nodiscard]] inline GadgetResult swap_gadget(const QubitState& state, int j, const QubitState& magic,
                                              OutcomePolicy& policy, const GadgetOptions& opts = {}) {
    GadgetTranscript t;
    const QubitState resource = prepare_swap_resource(magic, opts.record_gates ? &t : nullptr, opts.tol);
    FreeOpRunner run(state, opts.record_gates, opts.tol);
    const detail::Byproducts bp = detail::teleport(run, j, resource, detail::ResourceWiring::kSwapChoi, policy);
    if (bp.x_first != 0) detail::x_correction(run, j, t);
    if (bp.x_second != 0) detail::x_correction(run, j + 1, t);
    if (bp.z_first != 0) detail::z_correction(run, j, t);
    if (bp.z_second != 0) detail::z_correction(run, j + 1, t);
    detail::copy_log(run, t, opts.record_gates);
    t.consumed = 1;
    t.rounds = 1;
    t.success = true;
    return {run.state(), std::move(t)};
}

// ---------------------------------------------------------------------------
// controlled-phase gadget

struct CphiRoundResult {
    QubitState state;
    int sign = 1;  ///< +1: C_phi implemented, -1: C_{-phi}
    GadgetTranscript transcript;
};

/**
 * One teleportation of C_phi over psi_phi on lines (j, j+1). With X
 * byproducts (x_a, x_b) the teleported gate has its phase on |~x_a ~x_b>;
 * local phase matchgates turn it into C_phi when x_a = x_b and into C_{-phi}
 * otherwise. Z byproducts commute with the diagonal gate.
 */
[[nodiscard]] inline CphiRoundResult cphi_round(const QubitState& state, int j, const MagicStateSpec& magic,
                                                OutcomePolicy& policy, const GadgetOptions& opts = {}) {
    if (!magic.is_magic()) {
        throw PreconditionError("cphi_round: psi_0 is Gaussian and cannot implement a phase gate");
    }
    if (magic.state.num_qubits() != 4) {
        throw std::invalid_argument("cphi_round: resource must have 4 qubits");
    }
    GadgetTranscript t;
    FreeOpRunner run(state, opts.record_gates, opts.tol);
    const detail::Byproducts bp =
        detail::teleport(run, j, magic.state, detail::ResourceWiring::kPhaseChoi, policy);
    if (bp.x_first != 0) detail::x_correction(run, j, t);
    if (bp.x_second != 0) detail::x_correction(run, j + 1, t);
    if (bp.z_first != 0) detail::z_correction(run, j, t);
    if (bp.z_second != 0) detail::z_correction(run, j + 1, t);

    const double phi = magic.phi;
    int sign = 1;
    std::vector<Matchgate> fixes;
    if (bp.x_first == 1 && bp.x_second == 0) {
        fixes.push_back(gates::local_phase(-phi, false));
        sign = -1;
    } else if (bp.x_first == 0 && bp.x_second == 1) {
        fixes.push_back(gates::local_phase(-phi, true));
        sign = -1;
    } else if (bp.x_first == 1 && bp.x_second == 1) {
        fixes.push_back(gates::local_phase(phi, true));
        fixes.push_back(gates::local_phase(phi, false));
    }
    for (const Matchgate& g : fixes) {
        run.apply(g, j);
        t.corrections.push_back({g, j, run.num_lines()});
    }
    detail::copy_log(run, t, opts.record_gates);
    t.consumed = 1;
    t.rounds = 1;
    t.applied_multiples.push_back(sign);
    t.applied_phase.push_back(sign * phi);
    t.success = angle_distance(sign * phi, phi) < 1e-9;
    return {run.state(), sign, std::move(t)};
}

[[nodiscard]] inline CphiRoundResult cphi_round(const QubitState& state, int j, const MagicStateSpec& magic,
                                                Rng& rng, const GadgetOptions& opts = {}) {
    OutcomePolicy policy(rng);
    return cphi_round(state, j, magic, policy, opts);
}

/// Removes the global phase so that the |0...0> amplitude is real positive.
[[nodiscard]] inline QubitState fix_global_phase(const QubitState& s) {
    Amplitudes a = s.amplitudes();
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (std::abs(a(i)) > 1e-9) {
            k = i;
            break;
        }
    }
    a *= std::conj(a(k)) / std::abs(a(k));
    return QubitState(s.num_qubits(), a);
}

struct DoublingResult {
    std::optional<MagicStateSpec> state;
    GadgetTranscript transcript;
};

/**
 * Consumes two copies of psi_theta: the first implements C_{+-theta} on lines
 * (2,3) of the second. Success (C_theta, probability 1/2 unless theta = pi)
 * leaves psi_{2 theta}; failure leaves psi_0, which is discarded.
 */
[[nodiscard]] inline DoublingResult double_phase_state(const MagicStateSpec& resource, const MagicStateSpec& target,
                                                       OutcomePolicy& policy, const GadgetOptions& opts = {},
                                                       bool verify = true) {
    if (angle_distance(resource.phi, target.phi) > 1e-9) {
        throw std::invalid_argument("double_phase_state: copies carry different phases");
    }
    if (verify) {
        const double a = canonical_phi(resource.state, opts.tol);
        const double b = canonical_phi(target.state, opts.tol);
        const double expect = std::min(resource.phi, kTwoPi - resource.phi);
        if (std::abs(a - b) > 1e-8 || std::abs(a - expect) > 1e-8) {
            throw std::invalid_argument("double_phase_state: inputs are not two copies of psi_theta");
        }
    }
    CphiRoundResult r = cphi_round(target.state, 2, resource, policy, opts);
    DoublingResult out;
    out.transcript = std::move(r.transcript);
    out.transcript.consumed = 2;
    if (out.transcript.success) {
        out.state = MagicStateSpec{wrap_angle(2.0 * target.phi), fix_global_phase(r.state)};
    }
    return out;
}

// ---------------------------------------------------------------------------
// repeat-until-success protocol

struct ProtocolConfig {
    double epsilon = 0.1;
    long supply = 400;
    /// Number of rounds L; 0 selects ceil(log2(2 / epsilon)).
    int rounds = 0;
    GadgetOptions gadget;

    [[nodiscard]] int resolved_rounds() const {
        if (rounds > 0) {
            return rounds;
        }
        if (!(epsilon > 0.0 && epsilon < 1.0)) {
            throw std::invalid_argument("ProtocolConfig: epsilon must lie in (0, 1)");
        }
        return static_cast<int>(std::ceil(std::log2(2.0 / epsilon) - 1e-12));
    }

    /// ceil(4 / epsilon^2)
    [[nodiscard]] static long default_supply(double epsilon) {
        return static_cast<long>(std::ceil(4.0 / (epsilon * epsilon) - 1e-9));
    }
};

/// Produces psi_{2^k phi} on demand from a finite stock of psi_phi copies,
/// discarding failed doublings.
class PhaseStateFactory {
  public:
    PhaseStateFactory(double phi, long supply, OutcomePolicy& policy, const GadgetOptions& opts,
                      GadgetTranscript& log)
        : phi_(wrap_angle(phi)), remaining_(supply), policy_(policy), opts_(opts), log_(log) {}

    [[nodiscard]] long consumed() const noexcept { return consumed_; }
    [[nodiscard]] long remaining() const noexcept { return remaining_; }

    std::optional<MagicStateSpec> produce(int level) {
        if (level == 0) {
            if (remaining_ <= 0) {
                return std::nullopt;
            }
            --remaining_;
            ++consumed_;
            return MagicStateSpec::psi(phi_);
        }
        for (;;) {
            std::optional<MagicStateSpec> a = produce(level - 1);
            if (!a) {
                return std::nullopt;
            }
            std::optional<MagicStateSpec> b = produce(level - 1);
            if (!b) {
                return std::nullopt;
            }
            DoublingResult d = double_phase_state(*a, *b, policy_, opts_, false);
            if (opts_.record_gates) {
                log_.absorb_gates(d.transcript);
            }
            if (d.state) {
                return d.state;
            }
        }
    }

  private:
    double phi_;
    long remaining_;
    long consumed_ = 0;
    OutcomePolicy& policy_;
    const GadgetOptions& opts_;
    GadgetTranscript& log_;
};

/**
 * C_phi on lines (j, j+1) with success probability 1 - 2^-L. Round r uses
 * psi_{2^{r-1} phi}; the running phase is tracked as an exact integer
 * multiple of phi. Stops on success, after L rounds, or when the supply of
 * psi_phi copies runs out (transcript.supply_exhausted).
 */
[[nodiscard]] inline GadgetResult cphi_protocol(const QubitState& state, int j, double phi,
                                                const ProtocolConfig& cfg, OutcomePolicy& policy) {
    if (angle_distance(phi, 0.0) < 1e-9) {
        throw PreconditionError("cphi_protocol: phi = 0 has no magic resource");
    }
    if (cfg.supply < 1) {
        throw std::invalid_argument("cphi_protocol: supply must be at least 1");
    }
    const int L = cfg.resolved_rounds();
    GadgetTranscript t;
    PhaseStateFactory factory(phi, cfg.supply, policy, cfg.gadget, t);
    QubitState current = state;
    std::int64_t multiple = 0;
    for (int r = 1; r <= L; ++r) {
        const long before = factory.consumed();
        std::optional<MagicStateSpec> res = factory.produce(r - 1);
        t.consumed_per_round.push_back(factory.consumed() - before);
        if (!res) {
            t.supply_exhausted = true;
            break;
        }
        CphiRoundResult round = cphi_round(current, j, *res, policy, cfg.gadget);
        current = std::move(round.state);
        const std::int64_t step = static_cast<std::int64_t>(round.sign) * (std::int64_t{1} << (r - 1));
        multiple += step;
        t.rounds = r;
        t.applied_multiples.push_back(step);
        t.applied_phase.push_back(static_cast<double>(step) * wrap_angle(phi));
        t.outcomes.insert(t.outcomes.end(), round.transcript.outcomes.begin(), round.transcript.outcomes.end());
        t.corrections.insert(t.corrections.end(), round.transcript.corrections.begin(),
                             round.transcript.corrections.end());
        if (cfg.gadget.record_gates) {
            t.absorb_gates(round.transcript);
        }
        if (angle_distance(static_cast<double>(multiple - 1) * wrap_angle(phi), 0.0) < 1e-9) {
            t.success = true;
            break;
        }
    }
    t.consumed = factory.consumed();
    return {std::move(current), std::move(t)};
}

[[nodiscard]] inline GadgetResult cphi_protocol(const QubitState& state, int j, double phi,
                                                const ProtocolConfig& cfg, Rng& rng) {
    OutcomePolicy policy(rng);
    return cphi_protocol(state, j, phi, cfg, policy);
}

/// C_phi = diag(1, 1, 1, e^{i phi}).
[[nodiscard]] inline Matrix4 controlled_phase(double phi) {
    Matrix4 m = Matrix4::Identity();
    m(3, 3) = std::polar(1.0, phi);
    return m;
}

}  // namespace mgmagic
