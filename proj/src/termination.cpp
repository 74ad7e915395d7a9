#include "confl/termination.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace confl {

LinearForm evaluate(const LinearPolyInterpretation& interp, const Term& t) {
    if (t.is_variable()) {
        LinearForm f;
        f.coeff[t.symbol()] = 1;
        return f;
    }
    auto it = interp.coefficients.find(t.symbol());
    if (it == interp.coefficients.end() || it->second.size() != t.args().size() + 1)
        throw Error("interpretation missing symbol " + t.symbol());
    const std::vector<unsigned>& c = it->second;
    LinearForm f;
    f.constant = c[0];
    for (std::size_t i = 0; i < t.args().size(); ++i) {
        const LinearForm sub = evaluate(interp, t.args()[i]);
        f.constant += c[i + 1] * sub.constant;
        for (const auto& [v, k] : sub.coeff) f.coeff[v] += c[i + 1] * k;
    }
    return f;
}

bool weakly_greater(const LinearForm& l, const LinearForm& r) {
    if (l.constant < r.constant) return false;
    for (const auto& [v, k] : r.coeff) {
        auto it = l.coeff.find(v);
        if ((it == l.coeff.end() ? 0u : it->second) < k) return false;
    }
    return true;
}

bool strictly_greater(const LinearForm& l, const LinearForm& r) {
    return weakly_greater(l, r) && l.constant > r.constant;
}

namespace {

std::map<std::string, std::size_t> signature_of(const std::vector<Rule>& rules) {
    std::map<std::string, std::size_t> sig;
    auto scan = [&](const Term& t, auto&& self) -> void {
        if (t.is_variable()) return;
        sig.emplace(t.symbol(), t.args().size());
        for (const Term& a : t.args()) self(a, self);
    };
    for (const Rule& r : rules) {
        scan(r.lhs, scan);
        scan(r.rhs, scan);
    }
    return sig;
}

std::set<std::string> rule_symbols(const Rule& r) {
    std::set<std::string> syms;
    auto scan = [&](const Term& t, auto&& self) -> void {
        if (t.is_variable()) return;
        syms.insert(t.symbol());
        for (const Term& a : t.args()) self(a, self);
    };
    scan(r.lhs, scan);
    scan(r.rhs, scan);
    return syms;
}

struct SearchBudget {
    std::size_t remaining;
    bool spend(std::size_t n = 1) {
        if (remaining < n) return false;
        remaining -= n;
        return true;
    }
};

// Depth-first search over bounded coefficient assignments, one symbol at a
// time. A rule's weak decrease is checked as soon as all its symbols are
// assigned, which prunes most of the space.
struct InterpSearch {
    const std::vector<std::pair<std::string, std::size_t>> symbols;  // (symbol, arity)
    const std::vector<Rule>& weak_rules;
    const std::vector<const Rule*>& strict_candidates;
    const TerminationLimits& limits;
    SearchBudget& budget;

    LinearPolyInterpretation interp;
    // weak_rules index -> index of the last symbol it needs
    std::vector<std::vector<std::size_t>> ready_at;

    InterpSearch(std::vector<std::pair<std::string, std::size_t>> syms,
                 const std::vector<Rule>& weak, const std::vector<const Rule*>& strict,
                 const TerminationLimits& lims, SearchBudget& b)
        : symbols(std::move(syms)),
          weak_rules(weak),
          strict_candidates(strict),
          limits(lims),
          budget(b),
          ready_at(symbols.size() + 1) {
        for (std::size_t r = 0; r < weak_rules.size(); ++r) {
            std::size_t last = 0;
            for (const auto& sym : rule_symbols(weak_rules[r]))
                for (std::size_t i = 0; i < symbols.size(); ++i)
                    if (symbols[i].first == sym) last = std::max(last, i + 1);
            ready_at[last].push_back(r);
        }
    }

    std::optional<LinearPolyInterpretation> run() { return descend(0); }

    std::optional<LinearPolyInterpretation> descend(std::size_t idx) {
        for (std::size_t r : ready_at[idx]) {
            if (!budget.spend()) return std::nullopt;
            const Rule& rule = weak_rules[r];
            if (!weakly_greater(evaluate(interp, rule.lhs), evaluate(interp, rule.rhs)))
                return std::nullopt;
        }
        if (idx == symbols.size()) {
            if (!budget.spend()) return std::nullopt;
            for (const Rule* rule : strict_candidates)
                if (strictly_greater(evaluate(interp, rule->lhs), evaluate(interp, rule->rhs)))
                    return interp;
            return std::nullopt;
        }
        const auto& [sym, arity] = symbols[idx];
        std::vector<unsigned> coeffs(arity + 1, 1);
        // enumerate (c0, c1..cn); argument coefficients start at 1 so strict
        // decreases survive arbitrary contexts
        std::vector<unsigned> lo(arity + 1, 1), hi(arity + 1, limits.max_arg_coeff);
        lo[0] = 0;
        hi[0] = limits.max_const_coeff;
        coeffs = lo;
        for (;;) {
            interp.coefficients[sym] = coeffs;
            if (budget.remaining == 0) return std::nullopt;
            if (auto found = descend(idx + 1)) return found;
            // next assignment
            std::size_t i = 0;
            while (i <= arity && coeffs[i] == hi[i]) {
                coeffs[i] = lo[i];
                ++i;
            }
            if (i > arity) break;
            ++coeffs[i];
        }
        interp.coefficients.erase(sym);
        return std::nullopt;
    }
};

std::optional<LinearPolyInterpretation> find_removal_interpretation(
    const std::map<std::string, std::size_t>& sig, const std::vector<Rule>& weak_rules,
    const std::vector<const Rule*>& strict_candidates, const TerminationLimits& limits,
    SearchBudget& budget) {
    std::vector<std::pair<std::string, std::size_t>> symbols(sig.begin(), sig.end());
    InterpSearch search(std::move(symbols), weak_rules, strict_candidates, limits, budget);
    return search.run();
}

}  // namespace

std::optional<TerminationCertificate> relatively_terminating(const std::vector<Rule>& d,
                                                             const std::vector<Rule>& r,
                                                             const TerminationLimits& limits) {
    for (const Rule& rule : d)
        if (std::find(r.begin(), r.end(), rule) == r.end())
            throw Error("relative termination requires d to be a subset of r");
    if (d.empty()) return TerminationCertificate{VacuousCert{}};

    const auto sig = signature_of(r);
    SearchBudget budget{limits.max_interpretations};
    std::vector<Rule> remaining = d;
    PolyRemovalCert cert;
    while (!remaining.empty()) {
        std::vector<const Rule*> strict;
        for (const Rule& rule : remaining) strict.push_back(&rule);
        auto interp = find_removal_interpretation(sig, r, strict, limits, budget);
        if (!interp) return std::nullopt;
        PolyRemovalStep step;
        step.interpretation = *interp;
        std::vector<Rule> still;
        for (const Rule& rule : remaining) {
            if (strictly_greater(evaluate(*interp, rule.lhs), evaluate(*interp, rule.rhs)))
                step.removed_ids.push_back(rule.id);
            else
                still.push_back(rule);
        }
        cert.steps.push_back(std::move(step));
        remaining = std::move(still);
    }
    return TerminationCertificate{std::move(cert)};
}

bool lpo_greater(const std::vector<std::string>& precedence, const Term& s, const Term& t) {
    auto rank = [&](const std::string& sym) {
        for (std::size_t i = 0; i < precedence.size(); ++i)
            if (precedence[i] == sym) return static_cast<long>(precedence.size() - i);
        return 0L;
    };
    if (s.is_variable()) return false;
    if (t.is_variable()) return variables(s).count(t.symbol()) > 0;
    // subterm: some argument of s is >= t
    for (const Term& si : s.args())
        if (si == t || lpo_greater(precedence, si, t)) return true;
    const long fs = rank(s.symbol()), ft = rank(t.symbol());
    if (fs > ft) {
        for (const Term& tj : t.args())
            if (!lpo_greater(precedence, s, tj)) return false;
        return true;
    }
    if (s.symbol() == t.symbol() && s.args().size() == t.args().size()) {
        for (const Term& tj : t.args())
            if (!lpo_greater(precedence, s, tj)) return false;
        for (std::size_t i = 0; i < s.args().size(); ++i) {
            if (s.args()[i] == t.args()[i]) continue;
            return lpo_greater(precedence, s.args()[i], t.args()[i]);
        }
    }
    return false;
}

std::optional<TerminationCertificate> terminating(const std::vector<Rule>& rules,
                                                  const TerminationLimits& limits) {
    if (rules.empty()) return TerminationCertificate{VacuousCert{}};
    if (auto poly = relatively_terminating(rules, rules, limits)) return poly;

    const auto sig = signature_of(rules);
    if (sig.size() <= limits.max_lpo_symbols) {
        std::vector<std::string> symbols;
        for (const auto& [sym, arity] : sig) symbols.push_back(sym);
        std::sort(symbols.begin(), symbols.end());
        do {
            bool all = true;
            for (const Rule& rule : rules)
                if (!lpo_greater(symbols, rule.lhs, rule.rhs)) {
                    all = false;
                    break;
                }
            if (all) return TerminationCertificate{LpoCert{symbols}};
        } while (std::next_permutation(symbols.begin(), symbols.end()));
    }
    return std::nullopt;
}

bool replay_termination(const TerminationCertificate& cert, const std::vector<Rule>& d,
                        const std::vector<Rule>& r) {
    if (std::holds_alternative<VacuousCert>(cert.method)) return d.empty();
    if (const auto* lpo = std::get_if<LpoCert>(&cert.method)) {
        for (const Rule& rule : r)
            if (!lpo_greater(lpo->precedence, rule.lhs, rule.rhs)) return false;
        return true;
    }
    const auto& poly = std::get<PolyRemovalCert>(cert.method);
    std::set<std::string> pending;
    for (const Rule& rule : d) pending.insert(rule.id);
    for (const PolyRemovalStep& step : poly.steps) {
        for (const Rule& rule : r) {
            const LinearForm l = evaluate(step.interpretation, rule.lhs);
            const LinearForm rhs = evaluate(step.interpretation, rule.rhs);
            if (!weakly_greater(l, rhs)) return false;
            const bool removed = std::find(step.removed_ids.begin(), step.removed_ids.end(),
                                           rule.id) != step.removed_ids.end();
            if (removed && !strictly_greater(l, rhs)) return false;
        }
        // argument coefficients must keep strict decreases context-closed
        for (const auto& [sym, coeffs] : step.interpretation.coefficients)
            for (std::size_t i = 1; i < coeffs.size(); ++i)
                if (coeffs[i] < 1) return false;
        for (const std::string& id : step.removed_ids) pending.erase(id);
    }
    return pending.empty();
}

std::string to_string(const TerminationCertificate& cert) {
    std::ostringstream os;
    if (std::holds_alternative<VacuousCert>(cert.method)) {
        os << "vacuous";
    } else if (const auto* lpo = std::get_if<LpoCert>(&cert.method)) {
        os << "lpo";
        for (const auto& sym : lpo->precedence) os << ' ' << sym;
    } else {
        const auto& poly = std::get<PolyRemovalCert>(cert.method);
        os << "poly";
        for (const PolyRemovalStep& step : poly.steps) {
            os << " [";
            bool first = true;
            for (const auto& [sym, coeffs] : step.interpretation.coefficients) {
                if (!first) os << ' ';
                first = false;
                os << sym << '=';
                for (std::size_t i = 0; i < coeffs.size(); ++i)
                    os << (i ? "," : "") << coeffs[i];
            }
            os << " removes";
            for (const auto& id : step.removed_ids) os << ' ' << id;
            os << ']';
        }
    }
    return os.str();
}

}  // namespace confl
