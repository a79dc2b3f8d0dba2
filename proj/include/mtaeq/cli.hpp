#ifndef MTAEQ_CLI_HPP
#define MTAEQ_CLI_HPP

// Command-line front end. Exit codes: 0 equivalent / success, 1 inequivalent
// (or a failed self-check in sat-demo), 2 usage or input error.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mtaeq/automaton.hpp"
#include "mtaeq/equivalence.hpp"
#include "mtaeq/io.hpp"
#include "mtaeq/oracle.hpp"
#include "mtaeq/witness.hpp"

namespace mtaeq::cli {

inline constexpr int exit_equivalent = 0;
inline constexpr int exit_inequivalent = 1;
inline constexpr int exit_error = 2;

/// Environment variable holding the default --seed.
inline constexpr const char* seed_env = "MTAEQ_SEED";

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline MultitapeAutomaton load_automaton(const std::string& path) {
    try {
        return io::parse_automaton(read_file(path));
    } catch (const io::ParseError& e) {
        throw io::ParseError(path + ": " + e.what());
    }
}

inline PrimePolicy parse_prime_policy(const std::string& text, std::uint64_t seed) {
    if (text == "fixed") return {};
    const std::string prefix = "random:";
    if (text.rfind(prefix, 0) == 0) {
        std::size_t pos = 0;
        unsigned long bits = 0;
        try {
            bits = std::stoul(text.substr(prefix.size()), &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != 0 && pos == text.size() - prefix.size() && bits >= 16 && bits <= 61)
            return {PrimeKind::random, static_cast<unsigned>(bits), seed};
    }
    throw InputError("--prime must be 'fixed' or 'random:BITS' with BITS in [16, 61]");
}

inline std::uint64_t default_seed() {
    if (const char* env = std::getenv(seed_env)) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw InputError(std::string(seed_env) + " is not an unsigned integer");
        }
    }
    return 0;
}

struct CheckArgs {
    std::string a_path;
    std::string b_path;
    std::size_t rounds = 2;
    std::string prime = "fixed";
    std::uint64_t seed = 0;
    std::string mode = "fast";
    bool no_timing = false;
    std::size_t attempts = 20;
    std::uint64_t budget = default_enumeration_budget;
};

inline CheckConfig make_config(const CheckArgs& args) {
    CheckConfig cfg;
    if (args.rounds < 1) throw InputError("--rounds must be at least 1");
    cfg.rounds = args.rounds;
    cfg.seed = args.seed;
    cfg.prime = parse_prime_policy(args.prime, args.seed);
    cfg.mode = args.mode == "full" ? CheckMode::full_matrix : CheckMode::first_row;
    return cfg;
}

class Stopwatch {
  public:
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
            .count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline void emit(std::ostream& out, io::OrderedJson report, const Stopwatch& clock,
                 bool no_timing) {
    if (!no_timing) report["timing"] = {{"elapsed_ms", clock.elapsed_ms()}};
    out << report.dump(2) << "\n";
}

inline int run_check(const CheckArgs& args, bool extract, std::ostream& out) {
    Stopwatch clock;
    const auto a = load_automaton(args.a_path);
    const auto b = load_automaton(args.b_path);
    const auto cfg = make_config(args);
    auto verdict = check_equivalence(a, b, cfg);
    io::OrderedJson report;
    if (extract && !verdict.equivalent()) {
        try {
            auto w = extract_counterexample(a, b, cfg, {args.attempts});
            verdict.witness = w.tuple;
            verdict.count_a = w.a_count;
            verdict.count_b = w.b_count;
            report = io::verdict_report("witness", verdict, a.alphabets);
            report["attempts"] = w.attempts;
        } catch (const WitnessError& e) {
            report = io::verdict_report("witness", verdict, a.alphabets);
            report["witness_error"] = e.what();
        }
    } else {
        report = io::verdict_report(extract ? "witness" : "check", verdict, a.alphabets);
    }
    io::attach_config(report, cfg);
    emit(out, std::move(report), clock, args.no_timing);
    return verdict.equivalent() ? exit_equivalent : exit_inequivalent;
}

inline int run_brute(const CheckArgs& args, std::ostream& out) {
    Stopwatch clock;
    const auto a = load_automaton(args.a_path);
    const auto b = load_automaton(args.b_path);
    const auto verdict = brute_force_equivalence(a, b, args.budget);
    auto report = io::verdict_report("brute", verdict, a.alphabets);
    report["budget"] = args.budget;
    emit(out, std::move(report), clock, args.no_timing);
    return verdict.equivalent() ? exit_equivalent : exit_inequivalent;
}

inline void add_check_options(CLI::App& cmd, CheckArgs& args) {
    cmd.add_option("A", args.a_path, "First automaton document")->required();
    cmd.add_option("B", args.b_path, "Second automaton document")->required();
    cmd.add_option("--rounds", args.rounds, "Independent evaluation rounds")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--prime", args.prime, "fixed | random:BITS");
    cmd.add_option("--seed", args.seed, std::string("RNG seed (default $") + seed_env + ")");
    cmd.add_option("--mode", args.mode, "fast (first row) | full (all rows)")
        ->check(CLI::IsMember({"fast", "full"}));
    cmd.add_flag("--no-timing", args.no_timing, "Omit the timing block from the report");
}

}  // namespace detail

/// Runs one CLI invocation; argv[0] is the program name.
inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multiplicity equivalence of multitape automata"};
    app.require_subcommand(1);

    detail::CheckArgs check_args, witness_args, brute_args;
    try {
        check_args.seed = witness_args.seed = detail::default_seed();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_error;
    }

    auto* check = app.add_subcommand("check", "Randomized equivalence check");
    detail::add_check_options(*check, check_args);

    auto* witness = app.add_subcommand("witness", "Check and extract a distinguishing tuple");
    detail::add_check_options(*witness, witness_args);
    witness->add_option("--attempts", witness_args.attempts, "Isolation attempts before giving up")
        ->check(CLI::PositiveNumber);

    std::string eval_path, eval_tuple;
    auto* eval = app.add_subcommand("eval", "Print the exact number of accepting runs on a tuple");
    eval->add_option("A", eval_path, "Automaton document")->required();
    eval->add_option("TUPLE", eval_tuple, "Tuple such as (\"ab\",\"x\")")->required();

    auto* brute = app.add_subcommand("brute", "Exhaustive equivalence check (small inputs)");
    brute->add_option("A", brute_args.a_path, "First automaton document")->required();
    brute->add_option("B", brute_args.b_path, "Second automaton document")->required();
    brute->add_option("--budget", brute_args.budget, "Maximum number of tuples to enumerate");
    brute->add_flag("--no-timing", brute_args.no_timing, "Omit the timing block");

    std::size_t gen_tapes = 1, gen_states = 2;
    std::vector<std::size_t> gen_sizes;
    double gen_density = 0.5;
    std::uint64_t gen_seed = 0;
    std::string gen_output;
    auto* gen = app.add_subcommand("gen", "Write a random automaton document");
    gen->add_option("--tapes", gen_tapes, "Number of tapes")->check(CLI::PositiveNumber);
    gen->add_option("--states", gen_states, "Number of states");
    gen->add_option("--sizes", gen_sizes, "Alphabet size per tape, e.g. 2,2")->delimiter(',');
    gen->add_option("--density", gen_density, "Edge probability")->check(CLI::Range(0.0, 1.0));
    gen->add_option("--seed", gen_seed, "RNG seed");
    gen->add_option("-o,--output", gen_output, "Output file (default stdout)");

    std::string cnf_path;
    std::optional<std::size_t> repetitions;
    auto* sat = app.add_subcommand("sat-demo", "Count satisfying assignments via run counting");
    sat->add_option("CNF", cnf_path, "DIMACS CNF file")->required();
    sat->add_option("--repetitions", repetitions, "Copies of 01 per tape");

    std::vector<const char*> raw;
    for (const auto& a : argv) raw.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(raw.size()), raw.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : exit_error;
    }

    try {
        if (gen->parsed() && !gen->count("--seed")) gen_seed = detail::default_seed();
        if (check->parsed()) return detail::run_check(check_args, false, out);
        if (witness->parsed()) return detail::run_check(witness_args, true, out);
        if (brute->parsed()) return detail::run_brute(brute_args, out);
        if (eval->parsed()) {
            const auto a = detail::load_automaton(eval_path);
            out << count_runs(a, io::parse_tuple(a.alphabets, eval_tuple)).str() << "\n";
            return 0;
        }
        if (gen->parsed()) {
            if (gen_sizes.empty()) gen_sizes.assign(gen_tapes, 2);
            const auto a = random_automaton(gen_tapes, gen_states, gen_sizes, gen_density, gen_seed);
            const auto doc = io::serialize_automaton(a);
            if (gen_output.empty()) {
                out << doc;
            } else {
                std::ofstream file(gen_output, std::ios::binary);
                if (!(file << doc)) throw InputError("cannot write '" + gen_output + "'");
            }
            return 0;
        }
        if (sat->parsed()) {
            const auto f = io::parse_dimacs(detail::read_file(cnf_path));
            const auto enc = encode_sharp_sat(f, repetitions);
            const auto runs = count_runs(enc.automaton, enc.input);
            const auto direct = count_satisfying(f);
            io::OrderedJson report;
            report["command"] = "sat-demo";
            report["variables"] = f.variables;
            report["clauses"] = f.clauses.size();
            report["automaton_states"] = enc.automaton.state_count;
            report["repetitions"] = enc.repetitions;
            report["count_runs"] = runs.str();
            report["satisfying_assignments"] = direct.str();
            report["match"] = runs == direct;
            out << report.dump(2) << "\n";
            return runs == direct ? 0 : 1;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_error;
    }
    return exit_error;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    return run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace mtaeq::cli

#endif  // MTAEQ_CLI_HPP
