#pragma once

#include <chrono>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "confl/term.hpp"

namespace confl {

/// Oriented equation lhs -> rhs with an identifier. The lhs is never a
/// variable and the rhs introduces no variables.
struct Rule {
    std::string id;
    Term lhs;
    Term rhs;

    Rule(std::string id_, Term lhs_, Term rhs_);

    bool left_linear() const { return is_linear(lhs); }
    bool linear() const { return is_linear(lhs) && is_linear(rhs); }
    /// Some variable occurs more often in the rhs than in the lhs.
    bool duplicating() const;

    bool operator==(const Rule& other) const = default;
};

/// Rule with variables freshly renamed, injectively and deterministically in
/// the salt.
Rule rename_apart(const Rule& r, std::size_t salt);

std::string to_string(const Rule& r);

/// Ordered list of rules with derived linearity flags.
class Trs {
  public:
    Trs() = default;
    explicit Trs(std::vector<Rule> rules);

    const std::vector<Rule>& rules() const { return rules_; }
    std::size_t size() const { return rules_.size(); }
    bool empty() const { return rules_.empty(); }

    bool left_linear() const { return left_linear_; }
    bool linear() const { return linear_; }
    const std::set<std::string>& duplicating_ids() const { return duplicating_; }

    const Rule* rule_by_id(const std::string& id) const;
    /// Sub-TRS induced by the given rule ids, in this TRS's order.
    Trs subsystem(const std::set<std::string>& ids) const;

    /// Function symbol -> arity. Arities are consistent by construction.
    const std::map<std::string, std::size_t>& signature() const { return signature_; }
    /// True when every function symbol is nullary.
    bool is_ars() const;

    std::set<std::string> rule_ids() const;

  private:
    std::vector<Rule> rules_;
    bool left_linear_ = true;
    bool linear_ = true;
    std::set<std::string> duplicating_;
    std::map<std::string, std::size_t> signature_;
};

/// COPS-style rendering: (VAR ...) then (RULES ...).
std::string print_trs(const Trs& trs);

/// A rule instance inside a term: rule lhs·matcher sits at the position.
struct RedexOccurrence {
    Position position;
    Rule rule;
    Substitution matcher;

    bool operator==(const RedexOccurrence& other) const = default;
};

/// Bounds for the various searches. All counts are at least 1.
struct SearchConfig {
    std::size_t max_steps = 5;
    std::size_t max_conversion_length = 8;
    std::size_t max_multistep_redexes = 8;
    std::size_t max_subsystem_candidates = 64;
    std::size_t max_precedence_levels = 3;
    std::size_t max_cpcs_depth = 6;
    std::size_t node_budget = 20000;

    /// Optional wall-clock deadline, checked cooperatively at loop heads.
    std::optional<std::chrono::steady_clock::time_point> deadline;

    void validate() const;
    bool expired() const {
        return deadline && std::chrono::steady_clock::now() > *deadline;
    }
};

}  // namespace confl
