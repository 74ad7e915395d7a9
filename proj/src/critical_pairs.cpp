#include "confl/critical_pairs.hpp"

#include <algorithm>

namespace confl {

namespace {

// Renames the variables of the peak terms to x1, x2, ... (in first-occurrence
// order of the source), skipping names already used as function symbols, so
// peaks print and compare deterministically.
struct Canonicalizer {
    const std::map<std::string, std::size_t>& signature;
    std::map<std::string, Term> renaming;
    std::size_t next = 1;

    Term fresh_var() {
        for (;;) {
            std::string name = "x" + std::to_string(next++);
            if (!signature.count(name)) return Term::variable(name);
        }
    }

    Term canon(const Term& t) {
        if (t.is_variable()) {
            auto it = renaming.find(t.symbol());
            if (it == renaming.end()) it = renaming.emplace(t.symbol(), fresh_var()).first;
            return it->second;
        }
        std::vector<Term> args;
        args.reserve(t.args().size());
        for (const Term& a : t.args()) args.push_back(canon(a));
        return Term::application(t.symbol(), std::move(args));
    }
};

}  // namespace

std::vector<CriticalPeak> critical_peaks(const Trs& trs, bool include_trivial) {
    std::vector<CriticalPeak> peaks;
    for (const Rule& outer_orig : trs.rules()) {
        const Rule outer = rename_apart(outer_orig, 1);
        for (const Rule& inner_orig : trs.rules()) {
            const Rule inner = rename_apart(inner_orig, 2);
            for (const Position& p : non_variable_positions(outer.lhs)) {
                auto mgu = unify(subterm_at(outer.lhs, p), inner.lhs);
                if (!mgu) continue;

                Canonicalizer canon{trs.signature(), {}, 1};
                const Term source = canon.canon(mgu->apply(outer.lhs));
                const Term left = canon.canon(mgu->apply(outer.rhs));
                const Term right = canon.canon(
                    replace_at(mgu->apply(outer.lhs), p, mgu->apply(inner.rhs)));
                const bool trivial = left == right;
                if (trivial && !include_trivial) continue;

                // matchers over the original rules' variables
                Substitution outer_sigma, inner_sigma;
                for (const auto& v : variables(outer_orig.lhs))
                    outer_sigma.bind(v, canon.canon(mgu->apply(Term::variable(v + "#1"))));
                for (const auto& v : variables(inner_orig.lhs))
                    inner_sigma.bind(v, canon.canon(mgu->apply(Term::variable(v + "#2"))));

                peaks.push_back(CriticalPeak{
                    source,
                    RedexOccurrence{Position(), outer_orig, std::move(outer_sigma)},
                    RedexOccurrence{p, inner_orig, std::move(inner_sigma)},
                    left,
                    right,
                    p.is_root() ? CriticalPeak::Kind::Overlay : CriticalPeak::Kind::OuterInner,
                    trivial,
                });
            }
        }
    }
    return peaks;
}

std::vector<CriticalPeak> peaks_within(const Trs& trs, const std::set<std::string>& ids,
                                       bool include_trivial) {
    return critical_peaks(trs.subsystem(ids), include_trivial);
}

std::size_t peak_count_up_to_symmetry(const std::vector<CriticalPeak>& peaks) {
    std::set<std::set<Term>> classes;
    for (const CriticalPeak& p : peaks) {
        if (p.trivial) continue;
        classes.insert({p.source, p.left, p.right});
    }
    return classes.size();
}

std::string to_string(const CriticalPeak& peak) {
    return to_string(peak.left) + " <-[" + peak.outer.rule.id + " @ e]- " +
           to_string(peak.source) + " -[" + peak.inner.rule.id + " @ " +
           peak.inner.position.to_string() + "]-> " + to_string(peak.right);
}

}  // namespace confl
