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
 * JSON encodings of states, circuits and transcripts. Every document carries
 * "format_version" and "kind". Complex numbers are [re, im] pairs; matrices
 * are row-major lists of rows.
 */
#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "gadgets.hpp"
#include "matchgate.hpp"
#include "reduce.hpp"
#include "statevector.hpp"

namespace mgmagic::io {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

/// Malformed or unreadable input.
class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

[[nodiscard]] inline Json header(const char* kind) {
    Json j;
    j["format_version"] = kFormatVersion;
    j["kind"] = kind;
    return j;
}

inline void check_header(const Json& j, const char* kind) {
    if (!j.is_object()) {
        throw InputError("expected a JSON object");
    }
    if (!j.contains("format_version") || !j["format_version"].is_number_integer() ||
        j["format_version"].get<int>() != kFormatVersion) {
        throw InputError("missing or unsupported format_version");
    }
    if (!j.contains("kind") || j["kind"] != kind) {
        throw InputError(std::string("expected kind '") + kind + "'");
    }
}

[[nodiscard]] inline Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

[[nodiscard]] inline Complex complex_from_json(const Json& j) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw InputError("complex numbers are encoded as [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

[[nodiscard]] inline Json matrix2_to_json(const Matrix2& m) {
    Json rows = Json::array();
    for (int r = 0; r < 2; ++r) {
        rows.push_back(Json::array({complex_to_json(m(r, 0)), complex_to_json(m(r, 1))}));
    }
    return rows;
}

[[nodiscard]] inline Matrix2 matrix2_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 || !j[1].is_array() ||
        j[1].size() != 2) {
        throw InputError("2x2 matrices are encoded as [[a, b], [c, d]]");
    }
    Matrix2 m;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            m(r, c) = complex_from_json(j[r][c]);
        }
    }
    return m;
}

// states --------------------------------------------------------------------

[[nodiscard]] inline Json state_to_json(const QubitState& s) {
    Json j = header("state");
    j["n"] = s.num_qubits();
    Json amps = Json::array();
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(s.dim()); ++i) {
        amps.push_back(complex_to_json(s[static_cast<std::size_t>(i)]));
    }
    j["amps"] = std::move(amps);
    return j;
}

[[nodiscard]] inline QubitState state_from_json(const Json& j, const Tolerances& tol = default_tolerances()) {
    check_header(j, "state");
    if (!j.contains("n") || !j["n"].is_number_integer()) {
        throw InputError("state: missing n");
    }
    const int n = j["n"].get<int>();
    if (n < 1 || n > kMaxQubits) {
        throw InputError("state: n out of range");
    }
    const Json& a = j.contains("amps") ? j["amps"] : Json();
    const std::size_t dim = std::size_t{1} << n;
    if (!a.is_array() || a.size() != dim) {
        throw InputError("state: amps must list 2^n entries");
    }
    Amplitudes amps(static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) {
        amps(static_cast<Eigen::Index>(i)) = complex_from_json(a[i]);
    }
    if (std::abs(amps.norm() - 1.0) > std::max(tol.norm, 1e-8)) {
        throw InputError("state: amps are not normalised");
    }
    if (std::abs(amps.squaredNorm() - 1.0) <= tol.norm) {
        return QubitState(n, std::move(amps), tol);
    }
    return QubitState::normalize(n, amps);
}

// circuits ------------------------------------------------------------------

[[nodiscard]] inline Json gate_to_json(const Matchgate& g, int line) {
    Json j;
    j["j"] = line;
    j["name"] = g.name();
    j["A"] = matrix2_to_json(g.even_block());
    j["B"] = matrix2_to_json(g.odd_block());
    return j;
}

[[nodiscard]] inline Json gate_record_to_json(const GateRecord& r) {
    Json j = gate_to_json(r.gate, r.line);
    j["n"] = r.num_lines;
    return j;
}

[[nodiscard]] inline Json circuit_to_json(const MatchgateCircuit& c) {
    Json j = header("circuit");
    j["n"] = c.num_lines();
    Json gs = Json::array();
    for (const auto& g : c.gates()) {
        gs.push_back(gate_to_json(g.gate, g.line));
    }
    j["gates"] = std::move(gs);
    return j;
}

/// Gates given by explicit blocks "A", "B", or by catalogue "name" (with
/// "param" where needed).
[[nodiscard]] inline MatchgateCircuit circuit_from_json(const Json& j) {
    check_header(j, "circuit");
    if (!j.contains("n") || !j["n"].is_number_integer()) {
        throw InputError("circuit: missing n");
    }
    try {
        MatchgateCircuit c(j["n"].get<int>());
        for (const Json& g : j.value("gates", Json::array())) {
            if (!g.contains("j") || !g["j"].is_number_integer()) {
                throw InputError("circuit: gate without j");
            }
            const int line = g["j"].get<int>();
            const std::string name = g.value("name", std::string("custom"));
            if (g.contains("A") && g.contains("B")) {
                c.add(Matchgate(matrix2_from_json(g["A"]), matrix2_from_json(g["B"]), name), line);
            } else {
                std::optional<double> param;
                if (g.contains("param")) {
                    param = g["param"].get<double>();
                }
                c.add(gates::by_name(name, param), line);
            }
        }
        return c;
    } catch (const InputError&) {
        throw;
    } catch (const std::exception& e) {
        throw InputError(std::string("circuit: ") + e.what());
    }
}

// transcripts ---------------------------------------------------------------

[[nodiscard]] inline Json measurement_to_json(const MeasurementRecord& m) {
    Json j;
    j["label"] = m.label;
    j["line"] = m.line;
    j["outcome"] = m.outcome;
    j["probability"] = m.probability;
    return j;
}

[[nodiscard]] inline Json transcript_to_json(const GadgetTranscript& t, bool with_gates = true) {
    Json j = header("gadget_transcript");
    Json out = Json::array();
    for (const auto& m : t.outcomes) {
        out.push_back(measurement_to_json(m));
    }
    j["outcomes"] = std::move(out);
    Json corr = Json::array();
    for (const auto& g : t.corrections) {
        corr.push_back(gate_record_to_json(g));
    }
    j["corrections"] = std::move(corr);
    if (with_gates) {
        Json gs = Json::array();
        for (const auto& g : t.gates) {
            gs.push_back(gate_record_to_json(g));
        }
        j["gates"] = std::move(gs);
    }
    j["consumed"] = t.consumed;
    j["consumed_per_round"] = t.consumed_per_round;
    j["rounds"] = t.rounds;
    j["success"] = t.success;
    j["supply_exhausted"] = t.supply_exhausted;
    j["applied_multiples"] = t.applied_multiples;
    j["applied_phase"] = t.applied_phase;
    return j;
}

[[nodiscard]] inline Json classification_to_json(const CaseClassification& c) {
    Json j;
    j["case"] = to_string(c.tag);
    j["j"] = c.j;
    j["b"] = c.b;
    j["variant"] = c.variant == ProjectorVariant::kNone ? "none"
                   : c.variant == ProjectorVariant::kFirst ? "first"
                                                           : "second";
    j["witness_norm"] = c.witness_norm;
    if (c.rank >= 0) {
        j["rank"] = c.rank;
    }
    return j;
}

[[nodiscard]] inline Json chain_to_json(const ReductionChain& chain) {
    Json j = header("reduction_chain");
    Json steps = Json::array();
    for (const auto& s : chain.steps) {
        Json js;
        js["k_in"] = s.k_in;
        js["classification"] = classification_to_json(s.classification);
        js["attempts"] = s.attempts;
        js["outcome"] = s.outcome;
        js["success"] = s.success;
        Json ms = Json::array();
        for (const auto& m : s.measurements) {
            ms.push_back(measurement_to_json(m));
        }
        js["measurements"] = std::move(ms);
        Json gs = Json::array();
        for (const auto& g : s.gates) {
            gs.push_back(gate_record_to_json(g));
        }
        js["gates"] = std::move(gs);
        steps.push_back(std::move(js));
    }
    j["steps"] = std::move(steps);
    j["success"] = chain.success;
    if (chain.success) {
        j["phi"] = chain.form.phi;
        j["canonical_circuit"] = circuit_to_json(chain.form.circuit);
        j["canonical_used_ancilla"] = chain.form.used_ancilla;
    }
    return j;
}

// files ---------------------------------------------------------------------

[[nodiscard]] inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open '" + path + "'");
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InputError("'" + path + "': " + e.what());
    }
}

inline void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) {
        throw InputError("cannot write '" + path + "'");
    }
    out << j.dump(2) << '\n';
}

[[nodiscard]] inline QubitState read_state(const std::string& path) { return state_from_json(read_json_file(path)); }

}  // namespace mgmagic::io
