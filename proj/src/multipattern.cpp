#include "confl/multipattern.hpp"

#include <algorithm>

#include "confl/rewriting.hpp"

namespace confl {

namespace {

bool sets_overlap(const PatternSet& a, const PatternSet& b) {
    const PatternSet& small = a.size() <= b.size() ? a : b;
    const PatternSet& large = a.size() <= b.size() ? b : a;
    for (const Position& p : small)
        if (large.count(p)) return true;
    return false;
}

void check_pattern(const PatternSet& pat, const Term& base) {
    if (pat.empty()) throw Error("empty pattern set");
    const std::set<Position> nonvar = [&] {
        auto v = non_variable_positions(base);
        return std::set<Position>(v.begin(), v.end());
    }();
    for (const Position& p : pat)
        if (!nonvar.count(p))
            throw Error("pattern position " + p.to_string() + " is not a non-variable position");
    // convex = connected: every position except the minimal one has its parent
    // in the set
    const Position& root = *pat.begin();
    for (const Position& p : pat) {
        if (p == root) continue;
        if (!root.is_prefix_of(p) || !pat.count(p.parent()))
            throw Error("pattern is not convex");
    }
}

std::vector<PatternSet> canonical(std::vector<PatternSet> patterns) {
    std::sort(patterns.begin(), patterns.end(),
              [](const PatternSet& a, const PatternSet& b) { return *a.begin() < *b.begin(); });
    return patterns;
}

}  // namespace

Multipattern::Multipattern(Term base, std::vector<PatternSet> patterns)
    : base_(std::move(base)), patterns_(canonical(std::move(patterns))) {
    for (std::size_t i = 0; i < patterns_.size(); ++i) {
        check_pattern(patterns_[i], base_);
        for (std::size_t j = i + 1; j < patterns_.size(); ++j)
            if (sets_overlap(patterns_[i], patterns_[j]))
                throw Error("pattern sets are not pairwise disjoint");
    }
}

Multipattern bottom(const Term& base) { return Multipattern(base, {}); }

Multipattern top(const Term& base) {
    if (base.is_variable()) throw Error("top of a variable base");
    auto nv = non_variable_positions(base);
    return Multipattern(base, {PatternSet(nv.begin(), nv.end())});
}

bool refines(const Multipattern& a, const Multipattern& b) {
    if (a.base() != b.base()) throw Error("base-mismatch");
    for (const PatternSet& p : a.patterns()) {
        bool contained = false;
        for (const PatternSet& q : b.patterns()) {
            if (std::includes(q.begin(), q.end(), p.begin(), p.end())) {
                contained = true;
                break;
            }
        }
        if (!contained) return false;
    }
    return true;
}

Multipattern meet(const Multipattern& a, const Multipattern& b) {
    if (a.base() != b.base()) throw Error("base-mismatch");
    std::vector<PatternSet> out;
    for (const PatternSet& p : a.patterns())
        for (const PatternSet& q : b.patterns()) {
            PatternSet inter;
            std::set_intersection(p.begin(), p.end(), q.begin(), q.end(),
                                  std::inserter(inter, inter.begin()));
            if (!inter.empty()) out.push_back(std::move(inter));
        }
    return Multipattern(a.base(), std::move(out));
}

Multipattern join(const Multipattern& a, const Multipattern& b) {
    if (a.base() != b.base()) throw Error("base-mismatch");
    std::vector<PatternSet> nodes;
    for (const PatternSet& p : a.patterns()) nodes.push_back(p);
    for (const PatternSet& q : b.patterns())
        if (std::find(nodes.begin(), nodes.end(), q) == nodes.end()) nodes.push_back(q);

    // union-find over the overlap relation
    std::vector<std::size_t> parent(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) parent[i] = i;
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j)
            if (sets_overlap(nodes[i], nodes[j])) parent[find(i)] = find(j);

    std::map<std::size_t, PatternSet> components;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        components[find(i)].insert(nodes[i].begin(), nodes[i].end());
    std::vector<PatternSet> out;
    for (auto& [root, set] : components) out.push_back(std::move(set));
    return Multipattern(a.base(), std::move(out));
}

namespace {

std::size_t fringe_slots(const PatternSet& pat, const Term& base) {
    std::size_t slots = 0;
    for (const Position& p : pat) {
        const Term& sub = subterm_at(base, p);
        for (std::uint32_t i = 1; i <= sub.args().size(); ++i)
            if (!pat.count(p.descend(i))) ++slots;
    }
    return slots;
}

}  // namespace

SizeMeasure pattern_size(const Multipattern& m) {
    SizeMeasure total{0, 0};
    for (const PatternSet& pat : m.patterns())
        total = total + SizeMeasure{pat.size(), fringe_slots(pat, m.base())};
    return total;
}

namespace {

// Body of the multipattern: collapse each pattern, rooted at its minimal
// position, to a fresh node whose children are the (recursively collapsed)
// fringe subtrees.
Term collapse(const Term& t, const Position& here, const Multipattern& m, std::size_t& counter) {
    for (const PatternSet& pat : m.patterns()) {
        if (*pat.begin() != here) continue;
        std::vector<Term> children;
        for (const Position& p : pat) {
            const Term& sub = subterm_at(m.base(), p);
            for (std::uint32_t i = 1; i <= sub.args().size(); ++i) {
                const Position child = p.descend(i);
                if (!pat.count(child))
                    children.push_back(
                        collapse(subterm_at(m.base(), child), child, m, counter));
            }
        }
        return Term::application("$hole" + std::to_string(counter++), std::move(children));
    }
    if (t.is_variable()) return t;
    std::vector<Term> args;
    for (std::uint32_t i = 1; i <= t.args().size(); ++i)
        args.push_back(collapse(t.args()[i - 1], here.descend(i), m, counter));
    return Term::application(t.symbol(), std::move(args));
}

}  // namespace

SizeMeasure body_size(const Multipattern& m) {
    std::size_t counter = 0;
    return term_measure(collapse(m.base(), Position(), m, counter));
}

PatternSet redex_pattern(const RedexOccurrence& occ) {
    PatternSet pat;
    for (const Position& q : non_variable_positions(occ.rule.lhs))
        pat.insert(occ.position / q);
    return pat;
}

Multistep::Multistep(Term base, std::vector<RedexOccurrence> redexes)
    : base_(std::move(base)), redexes_(std::move(redexes)) {
    std::sort(redexes_.begin(), redexes_.end(),
              [](const RedexOccurrence& a, const RedexOccurrence& b) {
                  if (a.position != b.position) return a.position < b.position;
                  return a.rule.id < b.rule.id;
              });
    for (const RedexOccurrence& occ : redexes_)
        if (occ.matcher.apply(occ.rule.lhs) != subterm_at(base_, occ.position))
            throw Error("redex does not match at " + occ.position.to_string());
    // disjointness of the redex patterns, via the induced multipattern
    std::vector<PatternSet> pats;
    for (const RedexOccurrence& occ : redexes_) pats.push_back(redex_pattern(occ));
    Multipattern check(base_, std::move(pats));
    (void)check;
}

Multipattern pattern_of(const Multistep& ms) {
    std::vector<PatternSet> pats;
    for (const RedexOccurrence& occ : ms.redexes()) pats.push_back(redex_pattern(occ));
    return Multipattern(ms.base(), std::move(pats));
}

SizeMeasure overlap_amount(const Multistep& a, const Multistep& b) {
    return pattern_size(meet(pattern_of(a), pattern_of(b)));
}

SizeMeasure nonoverlap_amount(const Multistep& a, const Multistep& b) {
    return body_size(join(pattern_of(a), pattern_of(b)));
}

bool overlapping(const Multistep& a, const Multistep& b) {
    return !overlap_amount(a, b).is_zero();
}

namespace {

std::vector<RedexOccurrence> innermost_first(std::vector<RedexOccurrence> occs) {
    std::sort(occs.begin(), occs.end(), [](const RedexOccurrence& a, const RedexOccurrence& b) {
        if (a.position.length() != b.position.length())
            return a.position.length() > b.position.length();
        return a.position < b.position;
    });
    return occs;
}

Term contract(const Term& t, const RedexOccurrence& occ) {
    // re-match: contractions below may have changed the substitution images
    auto sigma = match(occ.rule.lhs, subterm_at(t, occ.position));
    if (!sigma) throw Error("development lost a redex at " + occ.position.to_string());
    return replace_at(t, occ.position, sigma->apply(occ.rule.rhs));
}

}  // namespace

Term develop(const Multistep& ms) {
    Term current = ms.base();
    for (const RedexOccurrence& occ : innermost_first(ms.redexes()))
        current = contract(current, occ);
    return current;
}

Multistep join_multisteps(const Multistep& a, const Multistep& b) {
    if (a.base() != b.base()) throw Error("base-mismatch");
    if (overlapping(a, b)) throw Error("overlapping-multisteps");
    std::vector<RedexOccurrence> all = a.redexes();
    all.insert(all.end(), b.redexes().begin(), b.redexes().end());
    return Multistep(a.base(), std::move(all));
}

Multistep residual(const Multistep& phi, const Multistep& psi) {
    if (phi.base() != psi.base()) throw Error("base-mismatch");
    if (overlapping(phi, psi)) throw Error("overlapping-multisteps");

    struct Tracked {
        Position pos;
        Rule rule;
    };
    std::vector<Tracked> tracked;
    for (const RedexOccurrence& occ : phi.redexes()) tracked.push_back({occ.position, occ.rule});

    Term current = psi.base();
    for (const RedexOccurrence& occ : innermost_first(psi.redexes())) {
        // variable positions of the contracted rule's lhs and rhs
        std::vector<std::pair<Position, std::string>> lhs_vars, rhs_vars;
        for (const Position& q : positions(occ.rule.lhs)) {
            const Term& sub = subterm_at(occ.rule.lhs, q);
            if (sub.is_variable()) lhs_vars.emplace_back(q, sub.symbol());
        }
        for (const Position& q : positions(occ.rule.rhs)) {
            const Term& sub = subterm_at(occ.rule.rhs, q);
            if (sub.is_variable()) rhs_vars.emplace_back(q, sub.symbol());
        }

        std::vector<Tracked> next;
        for (const Tracked& tr : tracked) {
            if (!occ.position.is_strict_prefix_of(tr.pos)) {
                next.push_back(tr);  // disjoint from or above the contraction
                continue;
            }
            const Position w = tr.pos.suffix_from(occ.position);
            const std::pair<Position, std::string>* through = nullptr;
            for (const auto& lv : lhs_vars)
                if (lv.first.is_prefix_of(w)) {
                    through = &lv;
                    break;
                }
            if (!through) throw Error("overlapping-multisteps");
            const Position below_var = w.suffix_from(through->first);
            for (const auto& rv : rhs_vars)
                if (rv.second == through->second)
                    next.push_back({occ.position / rv.first / below_var, tr.rule});
        }
        tracked = std::move(next);
        current = contract(current, occ);
    }

    std::vector<RedexOccurrence> out;
    for (const Tracked& tr : tracked) {
        auto sigma = match(tr.rule.lhs, subterm_at(current, tr.pos));
        if (!sigma) throw Error("residual lost a redex at " + tr.pos.to_string());
        out.push_back(RedexOccurrence{tr.pos, tr.rule, std::move(*sigma)});
    }
    return Multistep(std::move(current), std::move(out));
}

std::vector<Multistep> enumerate_multisteps(const Term& t, const std::vector<Rule>& rules,
                                            std::size_t max_redexes) {
    const std::vector<RedexOccurrence> all = redexes(t, rules);
    std::vector<PatternSet> pats;
    for (const RedexOccurrence& occ : all) pats.push_back(redex_pattern(occ));

    std::vector<Multistep> out;
    std::vector<std::size_t> chosen;
    auto emit = [&] {
        std::vector<RedexOccurrence> occs;
        for (std::size_t i : chosen) occs.push_back(all[i]);
        out.push_back(Multistep(t, std::move(occs)));
    };
    // depth-first over index subsets with pairwise-disjoint patterns
    auto rec = [&](auto&& self, std::size_t from) -> void {
        emit();
        if (chosen.size() >= max_redexes) return;
        for (std::size_t i = from; i < all.size(); ++i) {
            bool compatible = true;
            for (std::size_t j : chosen)
                if (sets_overlap(pats[i], pats[j])) {
                    compatible = false;
                    break;
                }
            if (!compatible) continue;
            chosen.push_back(i);
            self(self, i + 1);
            chosen.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

}  // namespace confl
