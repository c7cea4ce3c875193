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

// mgmagic: command-line front end.
//
//   mgmagic classify STATE
//   mgmagic canonicalize STATE [-o OUT]
//   mgmagic reduce STATE [--mode sample|force] [--seed S] [-o OUT] [--transcript FILE]
//   mgmagic gadget --gadget swap|cphi [--phi X] [--epsilon E] [--L N] [--trials T] [--seed S] [STATE]
//   mgmagic make-state --kind psi|ghz4|m|basis|random [...] [-o OUT]
//
// Exit codes: 0 success, 2 input error, 3 precondition violation, 1 internal error.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <mgmagic/io.hpp>
#include <mgmagic/mgmagic.hpp>

namespace {

using mgmagic::io::Json;

constexpr int kExitInput = 2;
constexpr int kExitPrecondition = 3;

struct RunConfig {
    std::string input;
    std::string output;
    std::string transcript;
    std::optional<std::uint64_t> seed;
    long trials = 1000;
    double epsilon = 0.1;
    double phi = mgmagic::kPi / 3;
    int rounds = 0;
    long supply = 0;
    int threads = 0;
    int line = 1;
    std::string mode = "force";
    int retry_budget = 20;
    std::string gadget = "swap";
    std::string kind = "psi";
    int n = 4;
    std::string parity = "even";
    std::string bits;
    bool with_gates = false;
};

std::uint64_t resolve_seed(const RunConfig& cfg) {
    if (cfg.seed) {
        return *cfg.seed;
    }
    if (const char* env = std::getenv("MGMAGIC_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw mgmagic::io::InputError("MGMAGIC_SEED is not an unsigned integer");
        }
    }
    return 1;
}

void emit(const Json& j, const std::string& path) {
    if (path.empty()) {
        std::cout << j.dump(2) << '\n';
    } else {
        mgmagic::io::write_json_file(path, j);
    }
}

// --- classify ---------------------------------------------------------------

int cmd_classify(const RunConfig& cfg) {
    const mgmagic::QubitState s = mgmagic::io::read_state(cfg.input);
    const mgmagic::Parity p = mgmagic::parity(s);
    Json out = mgmagic::io::header("classification");
    out["n"] = s.num_qubits();
    out["parity"] = mgmagic::to_string(p);
    out["lambda_norm_sq"] = mgmagic::lambda_norm_sq(s);
    if (p == mgmagic::Parity::kIndefinite) {
        out["gaussian"] = nullptr;
    } else {
        const bool g = mgmagic::is_gaussian_state(s);
        out["gaussian"] = g;
        if (s.num_qubits() == 4) {
            out["phi"] = mgmagic::canonical_phi(s);
        }
        if (!g && s.num_qubits() >= 5) {
            out["case"] = mgmagic::io::classification_to_json(mgmagic::classify_case(s));
        }
    }
    emit(out, cfg.output);
    return 0;
}

// --- canonicalize -------------------------------------------------------------

int cmd_canonicalize(const RunConfig& cfg) {
    const mgmagic::QubitState s = mgmagic::io::read_state(cfg.input);
    const mgmagic::CanonicalForm f = mgmagic::canonical_form(s);
    Json out = mgmagic::io::header("canonical_form");
    out["phi"] = f.phi;
    out["used_ancilla"] = f.used_ancilla;
    out["depth"] = f.circuit.depth();
    out["circuit"] = mgmagic::io::circuit_to_json(f.circuit);
    const mgmagic::QubitState result = mgmagic::apply_canonical(s, f);
    out["fidelity"] = mgmagic::fidelity(result, mgmagic::psi_phi(f.phi));
    if (!cfg.output.empty()) {
        mgmagic::io::write_json_file(cfg.output, mgmagic::io::state_to_json(result));
    }
    emit(out, cfg.transcript);
    return 0;
}

// --- reduce -----------------------------------------------------------------

int cmd_reduce(const RunConfig& cfg) {
    const mgmagic::QubitState s = mgmagic::io::read_state(cfg.input);
    mgmagic::Rng rng(resolve_seed(cfg));
    mgmagic::ReduceMode mode;
    if (cfg.mode == "sample") {
        mode = mgmagic::ReduceMode::sample(rng, cfg.retry_budget);
    } else if (cfg.mode == "force") {
        mode = mgmagic::ReduceMode::force_success();
    } else {
        throw mgmagic::io::InputError("--mode must be 'sample' or 'force'");
    }
    const mgmagic::ReductionChain chain = mgmagic::reduce_to_magic4(s, mode);
    Json out = mgmagic::io::chain_to_json(chain);
    out["mode"] = cfg.mode;
    if (chain.success && !cfg.output.empty()) {
        mgmagic::io::write_json_file(cfg.output, mgmagic::io::state_to_json(chain.magic4));
    }
    emit(out, cfg.transcript);
    return chain.success ? 0 : kExitPrecondition;
}

// --- gadget -------------------------------------------------------------------

struct TrialOutcome {
    bool success = false;
    long consumed = 0;
    int rounds = 0;
    int plus_signs = 0;
    double fidelity = 1.0;
};

template <typename Fn>
std::vector<TrialOutcome> run_trials(long trials, int threads, Fn&& fn) {
    std::vector<TrialOutcome> out(static_cast<std::size_t>(trials));
    std::atomic<long> next{0};
    auto worker = [&] {
        for (long i = next++; i < trials; i = next++) {
            out[static_cast<std::size_t>(i)] = fn(i);
        }
    };
    const int nt = std::max(1, threads);
    std::vector<std::thread> pool;
    for (int t = 1; t < nt; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& th : pool) {
        th.join();
    }
    return out;
}

double percentile(std::vector<long> v, double q) {
    std::sort(v.begin(), v.end());
    const auto idx = static_cast<std::size_t>(std::ceil(q * static_cast<double>(v.size())) - 1);
    return static_cast<double>(v[std::min(idx, v.size() - 1)]);
}

int cmd_gadget(const RunConfig& cfg) {
    if (cfg.trials < 1) {
        throw mgmagic::io::InputError("--trials must be at least 1");
    }
    const std::uint64_t seed = resolve_seed(cfg);
    const int threads = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    mgmagic::QubitState input = cfg.input.empty() ? mgmagic::QubitState::from_bits("01")
                                                  : mgmagic::io::read_state(cfg.input);
    if (cfg.input.empty() && cfg.gadget == "cphi") {
        input = mgmagic::tensor(mgmagic::plus_state(), mgmagic::plus_state());
    }
    const int j = cfg.line;
    if (j < 1 || j >= input.num_qubits()) {
        throw mgmagic::io::InputError("--j must address a line pair of the input");
    }
    auto dense_two_qubit = [&](const mgmagic::Matrix4& u) {
        return mgmagic::apply_two_qubit(input, u, j);
    };

    Json report = mgmagic::io::header("gadget_report");
    report["gadget"] = cfg.gadget;
    report["trials"] = cfg.trials;
    report["seed"] = seed;
    std::vector<TrialOutcome> results;
    std::optional<mgmagic::GadgetTranscript> first;

    if (cfg.gadget == "swap") {
        mgmagic::Matrix4 sw = mgmagic::Matrix4::Zero();
        sw(0, 0) = sw(1, 2) = sw(2, 1) = sw(3, 3) = 1.0;
        const mgmagic::QubitState want = dense_two_qubit(sw);
        mgmagic::GadgetOptions opts;
        opts.record_gates = cfg.with_gates;
        {
            mgmagic::Rng rng(mgmagic::derive_seed(seed, 0));
            mgmagic::OutcomePolicy policy(rng);
            first = mgmagic::swap_gadget(input, j, mgmagic::magic_m(), policy, opts).transcript;
        }
        results = run_trials(cfg.trials, threads, [&](long i) {
            mgmagic::Rng rng(mgmagic::derive_seed(seed, static_cast<std::uint64_t>(i)));
            mgmagic::OutcomePolicy policy(rng);
            const mgmagic::GadgetResult r = mgmagic::swap_gadget(input, j, mgmagic::magic_m(), policy, opts);
            TrialOutcome o;
            o.fidelity = mgmagic::fidelity(r.state, want);
            o.success = o.fidelity > 1.0 - 1e-9;
            o.consumed = r.transcript.consumed;
            o.rounds = r.transcript.rounds;
            return o;
        });
    } else if (cfg.gadget == "cphi") {
        mgmagic::ProtocolConfig pc;
        pc.epsilon = cfg.epsilon;
        pc.rounds = cfg.rounds;
        pc.supply = cfg.supply > 0 ? cfg.supply : mgmagic::ProtocolConfig::default_supply(cfg.epsilon);
        pc.gadget.record_gates = cfg.with_gates;
        report["phi"] = cfg.phi;
        report["rounds_L"] = pc.resolved_rounds();
        report["supply"] = pc.supply;
        report["epsilon"] = cfg.epsilon;
        const mgmagic::QubitState want = dense_two_qubit(mgmagic::controlled_phase(cfg.phi));
        {
            mgmagic::Rng rng(mgmagic::derive_seed(seed, 0));
            first = mgmagic::cphi_protocol(input, j, cfg.phi, pc, rng).transcript;
        }
        results = run_trials(cfg.trials, threads, [&](long i) {
            mgmagic::Rng rng(mgmagic::derive_seed(seed, static_cast<std::uint64_t>(i)));
            const mgmagic::GadgetResult r = mgmagic::cphi_protocol(input, j, cfg.phi, pc, rng);
            TrialOutcome o;
            o.success = r.transcript.success;
            o.consumed = r.transcript.consumed;
            o.rounds = r.transcript.rounds;
            for (auto m : r.transcript.applied_multiples) {
                o.plus_signs += m > 0 ? 1 : 0;
            }
            o.fidelity = r.transcript.success ? mgmagic::fidelity(r.state, want) : 0.0;
            return o;
        });
    } else {
        throw mgmagic::io::InputError("--gadget must be 'swap' or 'cphi'");
    }

    long successes = 0;
    long total_rounds = 0;
    long plus = 0;
    double consumed_sum = 0.0;
    double min_fidelity = 1.0;
    std::vector<long> consumed;
    std::map<int, long> rounds_hist;
    std::map<long, long> consumed_hist;
    for (const TrialOutcome& o : results) {
        successes += o.success ? 1 : 0;
        total_rounds += o.rounds;
        plus += o.plus_signs;
        consumed_sum += static_cast<double>(o.consumed);
        consumed.push_back(o.consumed);
        ++rounds_hist[o.rounds];
        ++consumed_hist[o.consumed];
        if (o.success) {
            min_fidelity = std::min(min_fidelity, o.fidelity);
        }
    }
    const auto n = static_cast<double>(cfg.trials);
    report["success_frequency"] = static_cast<double>(successes) / n;
    report["min_fidelity_on_success"] = min_fidelity;
    report["consumed_mean"] = consumed_sum / n;
    report["consumed_p50"] = percentile(consumed, 0.5);
    report["consumed_p90"] = percentile(consumed, 0.9);
    report["consumed_p99"] = percentile(consumed, 0.99);
    report["consumed_max"] = percentile(consumed, 1.0);
    if (cfg.gadget == "cphi") {
        report["round_plus_frequency"] = total_rounds > 0 ? static_cast<double>(plus) / static_cast<double>(total_rounds) : 0.0;
    }
    Json rh = Json::object();
    for (const auto& [r, c] : rounds_hist) {
        rh[std::to_string(r)] = c;
    }
    report["rounds_histogram"] = std::move(rh);
    Json ch = Json::object();
    for (const auto& [k, c] : consumed_hist) {
        ch[std::to_string(k)] = c;
    }
    report["consumed_histogram"] = std::move(ch);
    if (!cfg.transcript.empty() && first) {
        mgmagic::io::write_json_file(cfg.transcript, mgmagic::io::transcript_to_json(*first, cfg.with_gates));
    }
    emit(report, cfg.output);
    return 0;
}

// --- make-state -----------------------------------------------------------------

int cmd_make_state(const RunConfig& cfg) {
    mgmagic::QubitState s;
    if (cfg.kind == "psi") {
        s = mgmagic::psi_phi(cfg.phi);
    } else if (cfg.kind == "ghz4") {
        s = mgmagic::ghz4();
    } else if (cfg.kind == "m") {
        s = mgmagic::magic_m();
    } else if (cfg.kind == "plus") {
        s = mgmagic::plus_state();
    } else if (cfg.kind == "basis") {
        s = mgmagic::QubitState::from_bits(cfg.bits);
    } else if (cfg.kind == "random" || cfg.kind == "random-non-gaussian") {
        if (cfg.n < 1 || cfg.n > mgmagic::kMaxQubits) {
            throw mgmagic::io::InputError("--n out of range");
        }
        mgmagic::Parity p;
        if (cfg.parity == "even") {
            p = mgmagic::Parity::kEven;
        } else if (cfg.parity == "odd") {
            p = mgmagic::Parity::kOdd;
        } else {
            throw mgmagic::io::InputError("--parity must be 'even' or 'odd'");
        }
        mgmagic::Rng rng(resolve_seed(cfg));
        s = cfg.kind == "random" ? mgmagic::haar_fermionic(cfg.n, p, rng)
                                 : mgmagic::random_non_gaussian(cfg.n, p, rng);
    } else {
        throw mgmagic::io::InputError("unknown --kind '" + cfg.kind + "'");
    }
    emit(mgmagic::io::state_to_json(s), cfg.output);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Matchgate circuits and magic states"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* classify = app.add_subcommand("classify", "Parity, Gaussianity and canonical phase of a state");
    classify->add_option("state", cfg.input, "state file")->required();
    classify->add_option("-o,--output", cfg.output, "report file (default stdout)");

    auto* canon = app.add_subcommand("canonicalize", "Depth-3 matchgate circuit onto psi_phi");
    canon->add_option("state", cfg.input, "state file")->required();
    canon->add_option("-o,--output", cfg.output, "write the canonical state here");
    canon->add_option("--report", cfg.transcript, "report file (default stdout)");

    auto* reduce = app.add_subcommand("reduce", "Reduce a non-Gaussian state to a 4-qubit magic state");
    reduce->add_option("state", cfg.input, "state file")->required();
    reduce->add_option("--mode", cfg.mode, "sample | force")->check(CLI::IsMember({"sample", "force"}));
    reduce->add_option("--seed", cfg.seed, "rng seed (default: MGMAGIC_SEED or 1)");
    reduce->add_option("--retry-budget", cfg.retry_budget, "attempts per step in sample mode");
    reduce->add_option("-o,--output", cfg.output, "write the 4-qubit state here");
    reduce->add_option("--transcript", cfg.transcript, "transcript file (default stdout)");

    auto* gadget = app.add_subcommand("gadget", "Monte Carlo statistics of the SWAP and C_phi gadgets");
    gadget->add_option("state", cfg.input, "input state file (default |01> or |++>)");
    gadget->add_option("--gadget", cfg.gadget, "swap | cphi")->check(CLI::IsMember({"swap", "cphi"}));
    gadget->add_option("--phi", cfg.phi, "phase of C_phi");
    gadget->add_option("--epsilon", cfg.epsilon, "target failure probability");
    gadget->add_option("--L", cfg.rounds, "number of rounds (default ceil(log2(2/epsilon)))");
    gadget->add_option("--supply", cfg.supply, "copies of psi_phi per trial (default ceil(4/epsilon^2))");
    gadget->add_option("--trials", cfg.trials, "number of trials");
    gadget->add_option("--seed", cfg.seed, "rng seed (default: MGMAGIC_SEED or 1)");
    gadget->add_option("--threads", cfg.threads, "worker threads (default: hardware)");
    gadget->add_option("--j", cfg.line, "first target line");
    gadget->add_option("--transcript", cfg.transcript, "write the transcript of trial 0 here");
    gadget->add_flag("--with-gates", cfg.with_gates, "record every applied gate");
    gadget->add_option("-o,--output", cfg.output, "report file (default stdout)");

    auto* make = app.add_subcommand("make-state", "Emit psi_phi, GHZ4, M, basis or random states");
    make->add_option("--kind", cfg.kind, "psi | ghz4 | m | plus | basis | random | random-non-gaussian");
    make->add_option("--phi", cfg.phi, "phase for psi");
    make->add_option("--bits", cfg.bits, "bitstring for basis");
    make->add_option("--n", cfg.n, "qubits for random states");
    make->add_option("--parity", cfg.parity, "even | odd for random states");
    make->add_option("--seed", cfg.seed, "rng seed (default: MGMAGIC_SEED or 1)");
    make->add_option("-o,--output", cfg.output, "state file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (*classify) return cmd_classify(cfg);
        if (*canon) return cmd_canonicalize(cfg);
        if (*reduce) return cmd_reduce(cfg);
        if (*gadget) return cmd_gadget(cfg);
        if (*make) return cmd_make_state(cfg);
    } catch (const mgmagic::io::InputError& e) {
        std::cerr << "mgmagic: input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const mgmagic::PreconditionError& e) {
        std::cerr << "mgmagic: precondition violated: " << e.what() << '\n';
        return kExitPrecondition;
    } catch (const mgmagic::InvariantViolation& e) {
        std::cerr << "mgmagic: internal invariant violated: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "mgmagic: input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::out_of_range& e) {
        std::cerr << "mgmagic: input error: " << e.what() << '\n';
        return kExitInput;
    }
    return 1;
}
