#include "confl/rewriting.hpp"

#include <algorithm>
#include <deque>

namespace confl {

std::vector<RedexOccurrence> redexes(const Term& t, const std::vector<Rule>& rules) {
    std::vector<RedexOccurrence> out;
    for (const Position& p : non_variable_positions(t)) {
        const Term& sub = subterm_at(t, p);
        for (const Rule& r : rules) {
            if (auto sigma = match(r.lhs, sub))
                out.push_back(RedexOccurrence{p, r, std::move(*sigma)});
        }
    }
    return out;
}

Term apply(const Term& t, const RedexOccurrence& occ) {
    const Term& sub = subterm_at(t, occ.position);
    if (occ.matcher.apply(occ.rule.lhs) != sub)
        throw Error("invalid-occurrence: rule " + occ.rule.id + " does not match at " +
                    occ.position.to_string() + " in " + to_string(t));
    return replace_at(t, occ.position, occ.matcher.apply(occ.rule.rhs));
}

StepSeq Reach::path_to(const Term& target) const {
    StepSeq steps;
    Term cur = target;
    for (;;) {
        auto it = visited.find(cur);
        if (it == visited.end()) throw Error("path_to: unreachable term " + to_string(cur));
        if (!it->second.from) break;
        steps.push_back(*it->second.from);
        cur = it->second.from->from;
    }
    std::reverse(steps.begin(), steps.end());
    return steps;
}

Reach bounded_reducts(const Term& t, const std::vector<Rule>& rules, std::size_t k,
                      std::size_t node_budget) {
    Reach reach;
    reach.visited.emplace(t, Reach::Entry{0, std::nullopt});
    std::deque<Term> frontier{t};
    while (!frontier.empty()) {
        const Term cur = frontier.front();
        frontier.pop_front();
        const std::size_t depth = reach.visited.at(cur).depth;
        if (depth >= k) continue;
        for (const RedexOccurrence& occ : redexes(cur, rules)) {
            Term next = apply(cur, occ);
            if (reach.visited.count(next)) continue;
            if (reach.visited.size() >= node_budget) {
                reach.truncated = true;
                return reach;
            }
            reach.visited.emplace(
                next, Reach::Entry{depth + 1,
                                   TermStep{cur, occ.rule.id, occ.position, next, true}});
            frontier.push_back(next);
        }
    }
    return reach;
}

namespace {

// Level-by-level reachability, so joins can stop as soon as the two sides
// meet.
struct Grower {
    Reach reach;
    std::vector<Term> frontier;

    explicit Grower(const Term& start) {
        reach.visited.emplace(start, Reach::Entry{0, std::nullopt});
        frontier.push_back(start);
    }

    // Expands one level; returns false when nothing new was added.
    bool grow(const std::vector<Rule>& rules, std::size_t node_budget) {
        std::vector<Term> next;
        for (const Term& cur : frontier) {
            const std::size_t depth = reach.visited.at(cur).depth;
            for (const RedexOccurrence& occ : redexes(cur, rules)) {
                Term reduct = apply(cur, occ);
                if (reach.visited.count(reduct)) continue;
                if (reach.visited.size() >= node_budget) {
                    reach.truncated = true;
                    frontier = std::move(next);
                    return !frontier.empty();
                }
                reach.visited.emplace(
                    reduct, Reach::Entry{depth + 1, TermStep{cur, occ.rule.id, occ.position,
                                                             reduct, true}});
                next.push_back(std::move(reduct));
            }
        }
        frontier = std::move(next);
        return !frontier.empty();
    }
};

std::optional<Term> pick_meet(const Reach& rs, const Reach& rt) {
    const Term* best = nullptr;
    std::size_t best_dist = 0;
    for (const auto& [u, entry] : rs.visited) {
        auto it = rt.visited.find(u);
        if (it == rt.visited.end()) continue;
        const std::size_t dist = entry.depth + it->second.depth;
        if (!best || dist < best_dist || (dist == best_dist && u < *best)) {
            best = &u;
            best_dist = dist;
        }
    }
    if (!best) return std::nullopt;
    return *best;
}

}  // namespace

SearchResult<JoinEvidence> joinable(const Term& s, const Term& t, const std::vector<Rule>& rules,
                                    const SearchConfig& cfg) {
    Grower gs(s), gt(t);
    bool more_s = true, more_t = true;
    for (std::size_t level = 0;; ++level) {
        if (auto meet = pick_meet(gs.reach, gt.reach))
            return {JoinEvidence{*meet, gs.reach.path_to(*meet), gt.reach.path_to(*meet)},
                    false};
        if (level >= cfg.max_steps || (!more_s && !more_t)) break;
        if (more_s) more_s = gs.grow(rules, cfg.node_budget);
        if (more_t) more_t = gt.grow(rules, cfg.node_budget);
    }
    return {std::nullopt, gs.reach.truncated || gt.reach.truncated};
}

SearchResult<ConversionEvidence> convertible(const Term& s, const Term& t,
                                             const std::vector<Rule>& rules,
                                             const SearchConfig& cfg) {
    auto found = conversions(s, t, rules, cfg, 1);
    if (!found.empty()) return {std::move(found.front()), false};
    // recompute truncation status for the unknown flag
    const std::size_t bound = cfg.max_conversion_length;
    const Reach rs = bounded_reducts(s, rules, bound, cfg.node_budget);
    const Reach rt = bounded_reducts(t, rules, bound, cfg.node_budget);
    return {std::nullopt, rs.truncated || rt.truncated};
}

std::vector<ConversionEvidence> conversions(const Term& s, const Term& t,
                                            const std::vector<Rule>& rules,
                                            const SearchConfig& cfg,
                                            std::size_t max_alternatives) {
    const std::size_t bound = cfg.max_conversion_length;
    const Reach rs = bounded_reducts(s, rules, bound, cfg.node_budget);
    const Reach rt = bounded_reducts(t, rules, bound, cfg.node_budget);
    std::vector<std::pair<std::size_t, Term>> meets;
    for (const auto& [u, entry] : rs.visited) {
        auto it = rt.visited.find(u);
        if (it == rt.visited.end()) continue;
        const std::size_t len = entry.depth + it->second.depth;
        if (len <= bound) meets.emplace_back(len, u);
    }
    std::sort(meets.begin(), meets.end(),
              [](const auto& a, const auto& b) {
                  if (a.first != b.first) return a.first < b.first;
                  return a.second < b.second;
              });
    std::vector<ConversionEvidence> out;
    for (const auto& [len, u] : meets) {
        if (out.size() >= max_alternatives) break;
        out.push_back(ConversionEvidence{u, rs.path_to(u), rt.path_to(u)});
    }
    return out;
}

std::set<std::string> ConversionEvidence::rule_ids() const {
    std::set<std::string> ids;
    for (const TermStep& st : from_left) ids.insert(st.rule_id);
    for (const TermStep& st : from_right) ids.insert(st.rule_id);
    return ids;
}

namespace {

bool develops_to_impl(const Term& t, const Term& s, const std::vector<Rule>& rules,
                      std::map<std::pair<Term, Term>, bool>& memo) {
    if (t == s) return true;
    if (t.is_variable()) return false;
    auto key = std::make_pair(t, s);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    bool ok = false;
    // congruence: same head, argumentwise developments
    if (s.is_application() && t.symbol() == s.symbol() &&
        t.args().size() == s.args().size()) {
        ok = true;
        for (std::size_t i = 0; i < t.args().size(); ++i)
            if (!develops_to_impl(t.args()[i], s.args()[i], rules, memo)) {
                ok = false;
                break;
            }
    }
    // root rule: t = l·sigma, s = r·sigma' with sigma(x) o-> sigma'(x)
    if (!ok) {
        for (const Rule& r : rules) {
            auto sigma = match(r.lhs, t);
            if (!sigma) continue;
            auto sigma_prime = match(r.rhs, s);
            if (!sigma_prime) continue;
            bool all = true;
            for (const auto& x : variables(r.rhs)) {
                if (!develops_to_impl(*sigma->lookup(x), *sigma_prime->lookup(x), rules, memo)) {
                    all = false;
                    break;
                }
            }
            if (all) {
                ok = true;
                break;
            }
        }
    }
    memo[key] = ok;
    return ok;
}

}  // namespace

bool develops_to(const Term& t, const Term& s, const std::vector<Rule>& rules) {
    for (const Rule& r : rules)
        if (!r.left_linear())
            throw Error("non-left-linear-rule " + r.id + " in multistep reachability");
    std::map<std::pair<Term, Term>, bool> memo;
    return develops_to_impl(t, s, rules, memo);
}

std::optional<Witness> trivial_nonconfluence_witness(const Trs& trs, const SearchConfig& cfg) {
    for (const CriticalPeak& peak : critical_peaks(trs, /*include_trivial=*/false)) {
        const Reach rl = bounded_reducts(peak.left, trs.rules(), cfg.max_steps, cfg.node_budget);
        const Reach rr = bounded_reducts(peak.right, trs.rules(), cfg.max_steps, cfg.node_budget);
        auto normal_forms = [&](const Reach& reach) {
            std::vector<Term> nfs;
            for (const auto& [u, entry] : reach.visited)
                if (redexes(u, trs.rules()).empty()) nfs.push_back(u);
            return nfs;
        };
        for (const Term& nl : normal_forms(rl))
            for (const Term& nr : normal_forms(rr)) {
                if (nl == nr) continue;
                // two distinct normal forms of the same source term
                return Witness{peak, nl, nr, rl.path_to(nl), rr.path_to(nr)};
            }
    }
    return std::nullopt;
}

}  // namespace confl
