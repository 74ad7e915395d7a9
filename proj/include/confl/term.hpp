#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace confl {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PositionError : Error {
    using Error::Error;
};

/// First-order term: a variable or a function symbol applied to arguments.
/// Immutable after construction; variable names and function symbols live in
/// disjoint namespaces (enforced at the TRS/parser level).
class Term {
  public:
    /// Placeholder application with an empty symbol; never produced by the
    /// parser.
    Term() = default;

    static Term variable(std::string name);
    static Term application(std::string symbol, std::vector<Term> args = {});

    bool is_variable() const { return variable_; }
    bool is_application() const { return !variable_; }

    /// Variable name or function symbol.
    const std::string& symbol() const { return symbol_; }
    const std::vector<Term>& args() const { return args_; }
    std::size_t arity() const { return args_.size(); }

    std::size_t node_count() const;

    bool operator==(const Term& other) const;
    bool operator!=(const Term& other) const { return !(*this == other); }
    bool operator<(const Term& other) const { return compare(other) < 0; }

    /// Total structural order: variables before applications, then by symbol,
    /// then by arguments lexicographically.
    int compare(const Term& other) const;

  private:
    bool variable_ = false;
    std::string symbol_;
    std::vector<Term> args_;
};

std::string to_string(const Term& t);

/// Path of 1-based child indices; the empty path addresses the root.
class Position {
  public:
    Position() = default;
    explicit Position(std::vector<std::uint32_t> path) : path_(std::move(path)) {}

    bool is_root() const { return path_.empty(); }
    std::size_t length() const { return path_.size(); }
    const std::vector<std::uint32_t>& path() const { return path_; }

    Position descend(std::uint32_t i) const;
    /// Concatenation this·other.
    Position operator/(const Position& other) const;
    Position parent() const;

    bool is_prefix_of(const Position& other) const;
    bool is_strict_prefix_of(const Position& other) const;
    /// Neither position is a prefix of the other.
    bool disjoint_from(const Position& other) const;
    /// Suffix q with prefix / q == *this; requires prefix.is_prefix_of(*this).
    Position suffix_from(const Position& prefix) const;

    auto operator<=>(const Position& other) const = default;

    /// "e" for the root, else indices joined by '.', e.g. "1.1".
    std::string to_string() const;
    static Position parse(const std::string& text);

  private:
    std::vector<std::uint32_t> path_;
};

/// All positions of t in preorder (lexicographic) order.
std::vector<Position> positions(const Term& t);
std::vector<Position> non_variable_positions(const Term& t);

const Term& subterm_at(const Term& t, const Position& p);
Term replace_at(const Term& t, const Position& p, const Term& replacement);

/// Variable names occurring in t.
std::set<std::string> variables(const Term& t);
/// Occurrence count per variable.
std::map<std::string, std::size_t> variable_occurrences(const Term& t);
bool is_linear(const Term& t);

/// Finite map from variable names to terms.
class Substitution {
  public:
    Substitution() = default;
    explicit Substitution(std::map<std::string, Term> bindings)
        : bindings_(std::move(bindings)) {}

    bool empty() const { return bindings_.empty(); }
    std::size_t size() const { return bindings_.size(); }
    const std::map<std::string, Term>& bindings() const { return bindings_; }

    const Term* lookup(const std::string& var) const;
    void bind(const std::string& var, Term t);

    /// Simultaneous application: every variable occurrence replaced once.
    Term apply(const Term& t) const;

    bool operator==(const Substitution& other) const = default;

  private:
    std::map<std::string, Term> bindings_;
};

/// Matching: sigma with pattern·sigma == subject, if one exists. Repeated
/// pattern variables must map to equal subterms.
std::optional<Substitution> match(const Term& pattern, const Term& subject);

/// Most general unifier (idempotent), or absent. Occurs check included; the
/// caller renames variables apart first.
std::optional<Substitution> unify(const Term& s, const Term& t);

/// Pair (number of non-variable symbols, sum over variables of the squared
/// occurrence count), ordered lexicographically. Strictly decreases under
/// strict encompassment.
struct SizeMeasure {
    std::size_t symbol_count = 0;
    std::size_t var_square_sum = 0;

    auto operator<=>(const SizeMeasure&) const = default;
    SizeMeasure operator+(const SizeMeasure& other) const {
        return {symbol_count + other.symbol_count, var_square_sum + other.var_square_sum};
    }
    bool is_zero() const { return symbol_count == 0 && var_square_sum == 0; }
};

SizeMeasure term_measure(const Term& t);

std::string to_string(const SizeMeasure& m);

}  // namespace confl
