#pragma once

#include <map>
#include <optional>
#include <vector>

#include "confl/critical_pairs.hpp"
#include "confl/trs.hpp"

namespace confl {

/// One rewrite step, self-contained for certificates and replay.
struct TermStep {
    Term from;
    std::string rule_id;
    Position position;
    Term to;
    /// false for a step traversed right-to-left inside a conversion
    bool forward = true;

    bool operator==(const TermStep& other) const = default;
};

using StepSeq = std::vector<TermStep>;

/// All redexes of t with respect to the rules, in position-preorder then rule
/// order.
std::vector<RedexOccurrence> redexes(const Term& t, const std::vector<Rule>& rules);

/// Contract the redex; throws if the occurrence does not match.
Term apply(const Term& t, const RedexOccurrence& occ);

/// Breadth-first reachability, deduplicated, with parent links for evidence.
struct Reach {
    struct Entry {
        std::size_t depth = 0;
        // absent for the start term
        std::optional<TermStep> from;
    };
    std::map<Term, Entry> visited;
    bool truncated = false;

    bool contains(const Term& t) const { return visited.count(t) > 0; }
    /// Steps from the start term to target (must be reachable).
    StepSeq path_to(const Term& target) const;
};

Reach bounded_reducts(const Term& t, const std::vector<Rule>& rules, std::size_t k,
                      std::size_t node_budget = SearchConfig{}.node_budget);

/// Result of a bounded search: found value, or absent; `unknown` marks
/// absence that may be due to budget truncation.
template <typename T>
struct SearchResult {
    std::optional<T> value;
    bool unknown = false;

    explicit operator bool() const { return value.has_value(); }
};

struct JoinEvidence {
    Term meet;
    StepSeq from_left;
    StepSeq from_right;
};

/// Common reduct within cfg.max_steps on both sides, with step sequences.
SearchResult<JoinEvidence> joinable(const Term& s, const Term& t, const std::vector<Rule>& rules,
                                    const SearchConfig& cfg);

/// A conversion s <->* t, valley-shaped: forward steps from s, then steps
/// from t traversed backwards. Total length bounded by
/// cfg.max_conversion_length.
struct ConversionEvidence {
    Term meet;
    StepSeq from_left;
    StepSeq from_right;  // forward steps from t; appear reversed in the conversion

    std::size_t length() const { return from_left.size() + from_right.size(); }
    std::set<std::string> rule_ids() const;
};

SearchResult<ConversionEvidence> convertible(const Term& s, const Term& t,
                                             const std::vector<Rule>& rules,
                                             const SearchConfig& cfg);

/// Up to max_alternatives distinct conversions for the pair, shortest first.
std::vector<ConversionEvidence> conversions(const Term& s, const Term& t,
                                            const std::vector<Rule>& rules,
                                            const SearchConfig& cfg,
                                            std::size_t max_alternatives);

/// Multistep reachability t o-> s: s is the complete development of a set of
/// pairwise non-overlapping redexes of t. Requires left-linear rules.
bool develops_to(const Term& t, const Term& s, const std::vector<Rule>& rules);

/// Two distinct normal forms reachable from a critical peak, if any; a direct
/// disproof of confluence.
struct Witness {
    CriticalPeak peak;
    Term nf_left;
    Term nf_right;
    StepSeq steps_left;   // from peak.left to nf_left
    StepSeq steps_right;  // from peak.right to nf_right
};

std::optional<Witness> trivial_nonconfluence_witness(const Trs& trs, const SearchConfig& cfg);

}  // namespace confl
