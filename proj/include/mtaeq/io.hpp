#ifndef MTAEQ_IO_HPP
#define MTAEQ_IO_HPP

// Automaton documents, tuple syntax, DIMACS input and JSON reports.
//
// Automaton document (JSON, version 1):
//
//   {
//     "version": 1,
//     "tapes": 2,
//     "alphabets": [["a", "b"], ["x"]],
//     "states": 3,
//     "initial": [0],
//     "final": [2],
//     "edges": [[0, 0, "a", 1], [1, 1, "x", 2]]
//   }
//
// Edges are [src, tape, letter, dst] with 0-based indices. Unknown fields and
// duplicate edges are rejected. docs/automaton.schema.json has the schema.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mtaeq/automaton.hpp"
#include "mtaeq/equivalence.hpp"
#include "mtaeq/oracle.hpp"
#include "mtaeq/witness.hpp"

namespace mtaeq::io {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

inline constexpr int document_version = 1;

/// Malformed document or tuple; the message carries a line:column or a
/// field path.
class ParseError : public InputError {
  public:
    using InputError::InputError;
};

namespace detail {

inline std::string line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return std::to_string(line) + ":" + std::to_string(column);
}

inline std::size_t as_index(const Json& v, const std::string& path) {
    if (!v.is_number_unsigned())
        throw ParseError(path + ": expected a non-negative integer");
    return v.get<std::size_t>();
}

inline const Json& member(const Json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end()) throw ParseError(std::string("missing field '") + key + "'");
    return *it;
}

}  // namespace detail

/// Parses and validates an automaton document.
inline MultitapeAutomaton parse_automaton(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("syntax error at " + detail::line_column(text, e.byte) + ": " +
                         e.what());
    }
    if (!doc.is_object()) throw ParseError("document must be a JSON object");
    static const std::vector<std::string> known = {"version", "tapes", "alphabets", "states",
                                                   "initial", "final", "edges"};
    for (const auto& [key, value] : doc.items())
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw ParseError("unknown field '" + key + "'");

    const auto& version = detail::member(doc, "version");
    if (!version.is_number_integer() || version.get<long long>() != document_version)
        throw ParseError("version: unsupported document version");

    MultitapeAutomaton a;
    const std::size_t k = detail::as_index(detail::member(doc, "tapes"), "tapes");
    const auto& alphabets = detail::member(doc, "alphabets");
    if (!alphabets.is_array() || alphabets.size() != k)
        throw ParseError("alphabets: expected one letter list per tape");
    for (std::size_t t = 0; t < k; ++t) {
        const auto& list = alphabets[t];
        const std::string path = "alphabets[" + std::to_string(t) + "]";
        if (!list.is_array()) throw ParseError(path + ": expected an array of letters");
        std::vector<std::string> letters;
        for (std::size_t j = 0; j < list.size(); ++j) {
            if (!list[j].is_string())
                throw ParseError(path + "[" + std::to_string(j) + "]: expected a string");
            letters.push_back(list[j].get<std::string>());
        }
        a.alphabets.letters.push_back(std::move(letters));
    }
    a.state_count = detail::as_index(detail::member(doc, "states"), "states");

    for (const char* key : {"initial", "final"}) {
        const auto& list = detail::member(doc, key);
        if (!list.is_array()) throw ParseError(std::string(key) + ": expected an array");
        auto& target = std::string_view(key) == "initial" ? a.initial_states : a.final_states;
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string path = std::string(key) + "[" + std::to_string(i) + "]";
            if (!target.insert(detail::as_index(list[i], path)).second)
                throw ParseError(path + ": duplicate state");
        }
    }

    const auto& edges = detail::member(doc, "edges");
    if (!edges.is_array()) throw ParseError("edges: expected an array");
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const std::string path = "edges[" + std::to_string(e) + "]";
        const auto& edge = edges[e];
        if (!edge.is_array() || edge.size() != 4 || !edge[2].is_string())
            throw ParseError(path + ": expected [src, tape, letter, dst]");
        a.edges.push_back({detail::as_index(edge[0], path + "[0]"),
                           detail::as_index(edge[1], path + "[1]"), edge[2].get<std::string>(),
                           detail::as_index(edge[3], path + "[3]")});
    }

    auto violations = validate(a);
    if (!violations.empty())
        throw ParseError(violations.front().location + ": " + violations.front().message);
    return a;
}

inline MultitapeAutomaton parse_automaton(std::istream& in) {
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_automaton(buffer.str());
}

/// Canonical document: fixed field order, sorted edges, one edge per line.
inline std::string serialize_automaton(const MultitapeAutomaton& a) {
    auto edges = a.edges;
    std::sort(edges.begin(), edges.end());
    std::ostringstream out;
    out << "{\n";
    out << "  \"version\": " << document_version << ",\n";
    out << "  \"tapes\": " << a.tapes() << ",\n";
    out << "  \"alphabets\": [";
    for (std::size_t t = 0; t < a.tapes(); ++t) {
        out << (t ? ", " : "") << "[";
        for (std::size_t j = 0; j < a.alphabets.letters[t].size(); ++j)
            out << (j ? ", " : "") << Json(a.alphabets.letters[t][j]).dump();
        out << "]";
    }
    out << "],\n";
    out << "  \"states\": " << a.state_count << ",\n";
    auto list = [&](const std::set<std::size_t>& states) {
        std::string s = "[";
        bool first = true;
        for (auto q : states) {
            s += (first ? "" : ", ") + std::to_string(q);
            first = false;
        }
        return s + "]";
    };
    out << "  \"initial\": " << list(a.initial_states) << ",\n";
    out << "  \"final\": " << list(a.final_states) << ",\n";
    out << "  \"edges\": [";
    for (std::size_t e = 0; e < edges.size(); ++e) {
        out << (e ? ",\n    " : "\n    ") << "[" << edges[e].src << ", " << edges[e].tape << ", "
            << Json(edges[e].letter).dump() << ", " << edges[e].dst << "]";
    }
    out << (edges.empty() ? "]\n" : "\n  ]\n");
    out << "}\n";
    return out.str();
}

// Tuple syntax: ("w_1","w_2",...,"w_k"), each component a JSON string. On a
// tape whose letters are all single characters the letters are concatenated;
// otherwise they are separated by whitespace.

inline bool single_character_tape(const Alphabets& sigma, std::size_t tape) {
    const auto& letters = sigma.letters.at(tape);
    return std::all_of(letters.begin(), letters.end(),
                       [](const std::string& x) { return x.size() == 1; });
}

inline std::string format_tuple(const Alphabets& sigma, const TapeTuple& s) {
    std::string out = "(";
    for (std::size_t t = 0; t < s.tapes(); ++t) {
        std::string word;
        const bool compact = t < sigma.tapes() && single_character_tape(sigma, t);
        for (std::size_t i = 0; i < s.words[t].size(); ++i)
            word += (i && !compact ? " " : "") + s.words[t][i];
        out += (t ? "," : "") + Json(word).dump();
    }
    return out + ")";
}

inline TapeTuple parse_tuple(const Alphabets& sigma, std::string_view text) {
    auto first = text.find_first_not_of(" \t\r\n");
    auto last = text.find_last_not_of(" \t\r\n");
    if (first == std::string_view::npos || text[first] != '(' || text[last] != ')')
        throw ParseError("tuple must look like (\"w1\",...,\"wk\")");
    std::string body = "[" + std::string(text.substr(first + 1, last - first - 1)) + "]";
    Json parts;
    try {
        parts = Json::parse(body);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("tuple syntax error at column " + std::to_string(e.byte + first) + ": " +
                         e.what());
    }
    if (parts.size() != sigma.tapes())
        throw ParseError("tuple has " + std::to_string(parts.size()) + " components, expected " +
                         std::to_string(sigma.tapes()));
    TapeTuple s = TapeTuple::empty(sigma.tapes());
    for (std::size_t t = 0; t < sigma.tapes(); ++t) {
        if (!parts[t].is_string())
            throw ParseError("tuple component " + std::to_string(t) + " must be a string");
        const auto word = parts[t].get<std::string>();
        const bool spaced = word.find_first_of(" \t") != std::string::npos;
        if (spaced || !single_character_tape(sigma, t)) {
            std::istringstream in(word);
            std::string letter;
            while (in >> letter) s.words[t].push_back(letter);
        } else {
            for (char c : word) s.words[t].push_back(std::string(1, c));
        }
        for (const auto& x : s.words[t])
            if (!sigma.index_of(t, x))
                throw ParseError("tuple component " + std::to_string(t) + ": unknown letter '" +
                                 x + "'");
    }
    return s;
}

/// DIMACS CNF: "c" comment lines, a "p cnf V C" header, clauses ending in 0.
inline CnfFormula parse_dimacs(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    CnfFormula f;
    bool header = false;
    std::size_t expected_clauses = 0;
    std::vector<int> clause;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream tokens(line);
        std::string first;
        if (!(tokens >> first) || first == "c" || first[0] == '%') continue;
        if (first == "p") {
            std::string kind;
            long long vars = -1, clauses = -1;
            if (header || !(tokens >> kind >> vars >> clauses) || kind != "cnf" || vars < 1 ||
                clauses < 0)
                throw ParseError("line " + std::to_string(line_no) + ": bad problem line");
            f.variables = static_cast<std::size_t>(vars);
            expected_clauses = static_cast<std::size_t>(clauses);
            header = true;
            continue;
        }
        if (!header) throw ParseError("line " + std::to_string(line_no) + ": clause before header");
        std::istringstream all(line);
        long long lit;
        while (all >> lit) {
            if (lit == 0) {
                if (clause.empty())
                    throw ParseError("line " + std::to_string(line_no) + ": empty clause");
                f.clauses.push_back(std::move(clause));
                clause.clear();
            } else {
                if (static_cast<std::size_t>(lit < 0 ? -lit : lit) > f.variables)
                    throw ParseError("line " + std::to_string(line_no) + ": literal " +
                                     std::to_string(lit) + " out of range");
                clause.push_back(static_cast<int>(lit));
            }
        }
        if (!all.eof()) throw ParseError("line " + std::to_string(line_no) + ": bad token");
    }
    if (!header) throw ParseError("missing 'p cnf' header");
    if (!clause.empty()) f.clauses.push_back(std::move(clause));
    if (f.clauses.size() != expected_clauses)
        throw ParseError("header announces " + std::to_string(expected_clauses) +
                         " clauses, found " + std::to_string(f.clauses.size()));
    return f;
}

// Reports

inline const char* mode_name(CheckMode mode) {
    return mode == CheckMode::first_row ? "fast" : "full";
}

inline std::string prime_policy_name(const PrimePolicy& policy) {
    if (policy.kind == PrimeKind::fixed) return "fixed";
    return "random:" + std::to_string(policy.bits);
}

/// Report for check/witness/brute. Multiplicities are decimal strings.
inline OrderedJson verdict_report(const std::string& command, const Verdict& v,
                                  const Alphabets& sigma) {
    OrderedJson r;
    r["command"] = command;
    r["verdict"] = v.equivalent() ? "equivalent" : "inequivalent";
    r["states"] = v.n;
    if (!v.equivalent()) r["level"] = *v.level;
    if (v.witness) {
        r["witness"] = format_tuple(sigma, *v.witness);
        r["witness_words"] = v.witness->words;
        r["witness_length"] = v.witness->length();
        r["count_a"] = v.count_a->str();
        r["count_b"] = v.count_b->str();
    }
    if (v.equivalent() && !v.primes.empty()) r["false_equivalence_bound"] = v.false_equivalence_bound;
    r["rounds"] = v.rounds;
    r["primes"] = v.primes;
    return r;
}

inline void attach_config(OrderedJson& r, const CheckConfig& cfg) {
    r["seed"] = cfg.seed;
    r["prime_policy"] = prime_policy_name(cfg.prime);
    r["mode"] = mode_name(cfg.mode);
}

}  // namespace mtaeq::io

#endif  // MTAEQ_IO_HPP
