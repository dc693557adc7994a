#include "bbqaoa/sat_instance.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "bbqaoa/errors.hpp"
#include "bbqaoa/state_vector.hpp"

namespace bbqaoa {

namespace {

struct TextPosition {
    std::size_t line = 1;
    std::size_t column = 1;
};

TextPosition position_of(std::string_view text, std::size_t offset)
{
    TextPosition pos;
    offset = std::min(offset, text.size());
    for (std::size_t i = 0; i < offset; ++i) {
        if (text[i] == '\n') {
            ++pos.line;
            pos.column = 1;
        } else {
            ++pos.column;
        }
    }
    return pos;
}

// Byte offset of the index-th element of the top-level "clauses" array, found
// by walking bracket depth. Only used to attach a location to semantic errors
// in a document that is already known to be well-formed JSON.
std::size_t locate_clause(std::string_view text, std::size_t index)
{
    const auto key = text.find("\"clauses\"");
    if (key == std::string_view::npos) {
        return 0;
    }
    const auto open = text.find('[', key);
    if (open == std::string_view::npos) {
        return key;
    }
    int depth = 0;
    std::size_t seen = 0;
    bool in_string = false;
    for (std::size_t i = open; i < text.size(); ++i) {
        const char c = text[i];
        if (in_string) {
            if (c == '\\') {
                ++i;
            } else if (c == '"') {
                in_string = false;
            }
            continue;
        }
        if (c == '"') {
            in_string = true;
        } else if (c == '[' || c == '{') {
            ++depth;
            if (depth == 2 && seen++ == index) {
                return i;
            }
        } else if (c == ']' || c == '}') {
            if (--depth == 0) {
                break;
            }
        } else if (depth == 1 && c != ',' && c != ' ' && c != '\t' && c != '\n' && c != '\r'
                   && seen++ == index) {
            // scalar element where a 4-tuple was expected
            return i;
        }
    }
    return open;
}

[[noreturn]] void fail_at(std::string_view text, std::size_t offset, const std::string& what)
{
    const auto pos = position_of(text, offset);
    throw ParseError(what, pos.line, pos.column);
}

std::string clause_text(const Clause& c)
{
    std::ostringstream out;
    out << "[" << c.var_a() << ", " << c.neg_a() << ", " << c.var_b() << ", " << c.neg_b() << "]";
    return out.str();
}

}  // namespace

Clause::Clause(int var_a, bool neg_a, int var_b, bool neg_b)
    : var_a_(var_a), neg_a_(neg_a), var_b_(var_b), neg_b_(neg_b)
{
    if (var_a < 0 || var_b < 0) {
        throw ArgumentError("Clause: variable indices must be nonnegative");
    }
    if (var_a == var_b) {
        throw ArgumentError("Clause: literals must use two distinct variables (both are x_"
                            + std::to_string(var_a) + ")");
    }
    if (var_a_ > var_b_) {
        std::swap(var_a_, var_b_);
        std::swap(neg_a_, neg_b_);
    }
}

bool clause_satisfied(const Clause& clause, std::span<const std::uint8_t> assignment)
{
    if (static_cast<std::size_t>(clause.var_b()) >= assignment.size()) {
        throw ArgumentError("clause_satisfied: assignment of length " + std::to_string(assignment.size())
                            + " does not cover x_" + std::to_string(clause.var_b()));
    }
    // A literal is false when the variable equals its negation flag.
    const bool a_false = (assignment[clause.var_a()] != 0) == clause.neg_a();
    const bool b_false = (assignment[clause.var_b()] != 0) == clause.neg_b();
    return !(a_false && b_false);
}

std::vector<std::uint8_t> decode_assignment(std::uint64_t index, int n_vars)
{
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(n_vars));
    for (int i = 0; i < n_vars; ++i) {
        bits[i] = static_cast<std::uint8_t>((index >> (n_vars - 1 - i)) & 1U);
    }
    return bits;
}

std::uint64_t distinct_clause_count(int n_vars)
{
    if (n_vars < 2) {
        return 0;
    }
    const auto n = static_cast<std::uint64_t>(n_vars);
    return 4 * (n * (n - 1) / 2);
}

ProblemInstance::ProblemInstance(int n_vars, std::vector<Clause> clauses)
    : n_vars_(n_vars), clauses_(std::move(clauses))
{
    if (n_vars_ < 1) {
        throw ArgumentError("ProblemInstance: n_vars must be positive");
    }
    std::set<Clause> seen;
    for (const auto& c : clauses_) {
        if (c.var_b() >= n_vars_) {
            throw ArgumentError("ProblemInstance: clause " + clause_text(c) + " references x_"
                                + std::to_string(c.var_b()) + " but n_vars is " + std::to_string(n_vars_));
        }
        if (!seen.insert(c).second) {
            throw ArgumentError("ProblemInstance: duplicate clause " + clause_text(c));
        }
    }
}

std::vector<Clause> ProblemInstance::sorted_clauses() const
{
    std::vector<Clause> sorted(clauses_.begin(), clauses_.end());
    std::sort(sorted.begin(), sorted.end());
    return sorted;
}

bool operator==(const ProblemInstance& lhs, const ProblemInstance& rhs)
{
    return lhs.n_vars_ == rhs.n_vars_ && lhs.sorted_clauses() == rhs.sorted_clauses();
}

DiagonalHamiltonian build_diagonal(const ProblemInstance& instance)
{
    const int n = instance.n_vars();
    check_qubit_count(n);

    // Per clause: the bit mask of its two variables and the bit pattern of
    // its unique falsifying assignment.
    struct Falsifier {
        std::uint64_t mask;
        std::uint64_t pattern;
    };
    std::vector<Falsifier> falsifiers;
    falsifiers.reserve(instance.size());
    for (const auto& c : instance.clauses()) {
        const std::uint64_t bit_a = std::uint64_t{1} << (n - 1 - c.var_a());
        const std::uint64_t bit_b = std::uint64_t{1} << (n - 1 - c.var_b());
        falsifiers.push_back({bit_a | bit_b, (c.neg_a() ? bit_a : 0) | (c.neg_b() ? bit_b : 0)});
    }

    const auto total = static_cast<DiagonalHamiltonian::value_type>(instance.size());
    std::vector<DiagonalHamiltonian::value_type> values(std::size_t{1} << n, total);
    for (std::size_t x = 0; x < values.size(); ++x) {
        for (const auto& f : falsifiers) {
            values[x] -= static_cast<DiagonalHamiltonian::value_type>((x & f.mask) == f.pattern);
        }
    }
    return DiagonalHamiltonian(n, std::move(values));
}

int brute_force_cmax(const ProblemInstance& instance)
{
    const int n = instance.n_vars();
    check_qubit_count(n);
    int best = 0;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
        const auto assignment = decode_assignment(x, n);
        int count = 0;
        for (const auto& c : instance.clauses()) {
            count += clause_satisfied(c, assignment) ? 1 : 0;
        }
        best = std::max(best, count);
    }
    return best;
}

ProblemInstance random_instance(int n_vars, int n_clauses, Rng& rng)
{
    if (n_vars < 2) {
        throw ArgumentError("random_instance: need at least two variables");
    }
    if (n_clauses < 1) {
        throw ArgumentError("random_instance: n_clauses must be positive");
    }
    const auto available = distinct_clause_count(n_vars);
    if (static_cast<std::uint64_t>(n_clauses) > available) {
        throw InfeasibleError("random_instance: " + std::to_string(n_clauses) + " distinct clauses requested but only "
                              + std::to_string(available) + " exist over " + std::to_string(n_vars) + " variables");
    }

    std::vector<Clause> clauses;
    clauses.reserve(static_cast<std::size_t>(n_clauses));
    std::set<Clause> seen;
    const auto n = static_cast<std::uint64_t>(n_vars);
    while (clauses.size() < static_cast<std::size_t>(n_clauses)) {
        const auto a = static_cast<int>(rng.below(n));
        auto b = static_cast<int>(rng.below(n - 1));
        if (b >= a) {
            ++b;
        }
        const bool neg_a = rng.below(2) == 1;
        const bool neg_b = rng.below(2) == 1;
        Clause clause(a, neg_a, b, neg_b);
        if (seen.insert(clause).second) {
            clauses.push_back(clause);
        }
    }
    return ProblemInstance(n_vars, std::move(clauses));
}

ProblemInstance parse_instance(std::string_view text)
{
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        // byte is 1-based and points just past the offending character
        fail_at(text, e.byte > 0 ? e.byte - 1 : 0, "malformed instance document: " + std::string(e.what()));
    }

    if (!doc.is_object()) {
        fail_at(text, 0, "instance document must be an object");
    }
    for (const auto& [key, value] : doc.items()) {
        if (key != "n_vars" && key != "clauses" && key != "name" && key != "description") {
            fail_at(text, text.find("\"" + key + "\""), "unknown field \"" + key + "\"");
        }
    }
    if (!doc.contains("n_vars") || !doc["n_vars"].is_number_integer()) {
        fail_at(text, text.find("\"n_vars\"") == std::string_view::npos ? 0 : text.find("\"n_vars\""),
                "field \"n_vars\" must be present and an integer");
    }
    if (!doc.contains("clauses") || !doc["clauses"].is_array()) {
        fail_at(text, text.find("\"clauses\"") == std::string_view::npos ? 0 : text.find("\"clauses\""),
                "field \"clauses\" must be present and a list");
    }
    const auto n_vars = doc["n_vars"].get<long long>();
    if (n_vars < 1 || n_vars > 64) {
        fail_at(text, text.find("\"n_vars\""), "n_vars out of range: " + std::to_string(n_vars));
    }

    std::vector<Clause> clauses;
    std::set<Clause> seen;
    const auto& items = doc["clauses"];
    for (std::size_t k = 0; k < items.size(); ++k) {
        const auto& item = items[k];
        const auto where = [&] { return locate_clause(text, k); };
        if (!item.is_array() || item.size() != 4) {
            fail_at(text, where(), "clause " + std::to_string(k) + " must be a 4-tuple [var_a, neg_a, var_b, neg_b]");
        }
        for (const auto& field : item) {
            if (!field.is_number_integer()) {
                fail_at(text, where(), "clause " + std::to_string(k) + " must contain integers only");
            }
        }
        const auto var_a = item[0].get<long long>();
        const auto neg_a = item[1].get<long long>();
        const auto var_b = item[2].get<long long>();
        const auto neg_b = item[3].get<long long>();
        if ((neg_a != 0 && neg_a != 1) || (neg_b != 0 && neg_b != 1)) {
            fail_at(text, where(), "clause " + std::to_string(k) + ": negation flags must be 0 or 1");
        }
        if (var_a < 0 || var_b < 0 || var_a >= n_vars || var_b >= n_vars) {
            fail_at(text, where(), "clause " + std::to_string(k) + ": variable index out of range [0, "
                                       + std::to_string(n_vars) + ")");
        }
        if (var_a == var_b) {
            fail_at(text, where(), "clause " + std::to_string(k) + ": both literals use x_" + std::to_string(var_a));
        }
        Clause clause(static_cast<int>(var_a), neg_a == 1, static_cast<int>(var_b), neg_b == 1);
        if (!seen.insert(clause).second) {
            fail_at(text, where(), "clause " + std::to_string(k) + ": duplicate of an earlier clause " + clause_text(clause));
        }
        clauses.push_back(clause);
    }
    return ProblemInstance(static_cast<int>(n_vars), std::move(clauses));
}

std::string serialize_instance(const ProblemInstance& instance)
{
    std::ostringstream out;
    out << "{\n  \"n_vars\": " << instance.n_vars() << ",\n  \"clauses\": [";
    const auto sorted = instance.sorted_clauses();
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        out << (k == 0 ? "\n" : ",\n") << "    " << clause_text(sorted[k]);
    }
    out << (sorted.empty() ? "]\n}\n" : "\n  ]\n}\n");
    return out.str();
}

ProblemInstance load_instance(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open instance file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_instance(buffer.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.message(), e.line(), e.column());
    }
}

void save_instance(const ProblemInstance& instance, const std::string& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write instance file: " + path);
    }
    out << serialize_instance(instance);
    if (!out.flush()) {
        throw IoError("write failed: " + path);
    }
}

std::string checksum_hex(std::string_view bytes)
{
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (const unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return std::string(buf, 16);
}

}  // namespace bbqaoa
