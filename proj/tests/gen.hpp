#pragma once

// Deterministic random generators shared by the property tests.

#include <random>
#include <string>
#include <vector>

#include "confl/multipattern.hpp"
#include "confl/term.hpp"
#include "confl/trs.hpp"

namespace confl::testgen {

struct SigEntry {
    std::string symbol;
    std::size_t arity;
};

inline std::vector<SigEntry> small_signature(std::mt19937& rng) {
    static const std::vector<std::vector<SigEntry>> choices = {
        {{"f", 2}, {"g", 1}, {"a", 0}},
        {{"f", 1}, {"g", 1}, {"a", 0}, {"b", 0}},
        {{"h", 2}, {"f", 1}, {"a", 0}, {"b", 0}},
        {{"f", 2}, {"g", 2}, {"a", 0}},
    };
    return choices[rng() % choices.size()];
}

/// Random term over the signature; roughly bounded by max_nodes.
inline Term random_term(std::mt19937& rng, const std::vector<SigEntry>& sig,
                        const std::vector<std::string>& vars, std::size_t max_nodes,
                        std::size_t depth = 0) {
    const bool leaf = max_nodes <= 1 || depth > 3 || (rng() % 4 == 0);
    if (leaf) {
        if (!vars.empty() && rng() % 2 == 0) return Term::variable(vars[rng() % vars.size()]);
        // pick a nullary symbol if one exists
        std::vector<SigEntry> nullary;
        for (const auto& e : sig)
            if (e.arity == 0) nullary.push_back(e);
        if (!nullary.empty()) return Term::application(nullary[rng() % nullary.size()].symbol);
        if (!vars.empty()) return Term::variable(vars[rng() % vars.size()]);
        return Term::application(sig.front().symbol,
                                 {Term::variable("x"), Term::variable("y")});
    }
    const SigEntry& e = sig[rng() % sig.size()];
    std::vector<Term> args;
    std::size_t budget = (max_nodes - 1) / (e.arity == 0 ? 1 : e.arity);
    for (std::size_t i = 0; i < e.arity; ++i)
        args.push_back(random_term(rng, sig, vars, budget, depth + 1));
    return Term::application(e.symbol, std::move(args));
}

/// Random left-linear rule: linear lhs with fresh variables, rhs over a subset
/// of them (possibly repeating, to exercise duplication).
inline Rule random_left_linear_rule(std::mt19937& rng, const std::vector<SigEntry>& sig,
                                    const std::string& id, std::size_t max_nodes,
                                    bool allow_duplicating = true) {
    for (int attempt = 0; attempt < 50; ++attempt) {
        Term lhs = random_term(rng, sig, {}, max_nodes);
        if (lhs.is_variable() || lhs.args().empty()) {
            // force at least one non-nullary head now and then
            if (rng() % 2 == 0) continue;
        }
        // sprinkle fresh variables at random leaf positions
        auto pos = positions(lhs);
        std::size_t vcount = 0;
        for (const auto& p : pos) {
            const Term& sub = subterm_at(lhs, p);
            if (sub.is_application() && sub.args().empty() && rng() % 3 == 0) {
                lhs = replace_at(lhs, p, Term::variable("v" + std::to_string(vcount++)));
            }
        }
        if (lhs.is_variable()) continue;
        const auto lhs_vars = variables(lhs);
        std::vector<std::string> lvars(lhs_vars.begin(), lhs_vars.end());
        Term rhs = random_term(rng, sig, lvars, max_nodes);
        if (!allow_duplicating) {
            Rule candidate(id, lhs, rhs);
            if (candidate.duplicating()) continue;
            return candidate;
        }
        return Rule(id, lhs, rhs);
    }
    std::vector<Term> fallback_args;
    for (std::size_t i = 0; i < sig.front().arity; ++i)
        fallback_args.push_back(Term::variable("v" + std::to_string(i)));
    Term fallback_lhs = Term::application(sig.front().symbol, fallback_args);
    Term fallback_rhs = fallback_args.empty() ? fallback_lhs : fallback_args.front();
    return Rule(id, fallback_lhs, fallback_rhs);
}

inline Trs random_left_linear_trs(std::mt19937& rng, std::size_t max_rules,
                                  std::size_t max_lhs_nodes) {
    const auto sig = small_signature(rng);
    std::vector<Rule> rules;
    const std::size_t n = 1 + rng() % max_rules;
    for (std::size_t i = 0; i < n; ++i)
        rules.push_back(random_left_linear_rule(rng, sig, "r" + std::to_string(i + 1),
                                                max_lhs_nodes));
    return Trs(std::move(rules));
}


/// Random multipattern over t: grow convex pattern sets from random roots.
inline confl::Multipattern random_multipattern(std::mt19937& rng, const Term& t) {
    const auto nv = non_variable_positions(t);
    std::vector<PatternSet> patterns;
    std::set<Position> used;
    const std::size_t tries = rng() % 4;
    for (std::size_t k = 0; k <= tries; ++k) {
        const Position& root = nv[rng() % nv.size()];
        if (used.count(root)) continue;
        PatternSet pat{root};
        std::vector<Position> frontier{root};
        while (!frontier.empty() && rng() % 3 != 0) {
            const Position p = frontier.back();
            frontier.pop_back();
            const Term& sub = subterm_at(t, p);
            for (std::uint32_t i = 1; i <= sub.args().size(); ++i) {
                const Position child = p.descend(i);
                if (subterm_at(t, child).is_variable() || used.count(child)) continue;
                if (rng() % 2 == 0) continue;
                pat.insert(child);
                frontier.push_back(child);
            }
        }
        bool clash = false;
        for (const Position& p : pat)
            if (used.count(p)) clash = true;
        if (clash) continue;
        for (const Position& p : pat) used.insert(p);
        patterns.push_back(std::move(pat));
    }
    return Multipattern(t, std::move(patterns));
}

}  // namespace confl::testgen
