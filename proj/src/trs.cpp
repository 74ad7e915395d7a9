#include "confl/trs.hpp"

#include <algorithm>

namespace confl {

Rule::Rule(std::string id_, Term lhs_, Term rhs_)
    : id(std::move(id_)), lhs(std::move(lhs_)), rhs(std::move(rhs_)) {
    if (lhs.is_variable()) throw Error("variable-lhs in rule " + id);
    const auto lhs_vars = variables(lhs);
    for (const auto& v : variables(rhs))
        if (!lhs_vars.count(v))
            throw Error("rhs-introduces-variable " + v + " in rule " + id);
}

bool Rule::duplicating() const {
    const auto l = variable_occurrences(lhs);
    for (const auto& [v, n] : variable_occurrences(rhs)) {
        auto it = l.find(v);
        if (it == l.end() || it->second < n) return true;
    }
    return false;
}

namespace {

Term rename_term(const Term& t, std::size_t salt) {
    if (t.is_variable()) return Term::variable(t.symbol() + "#" + std::to_string(salt));
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const Term& a : t.args()) args.push_back(rename_term(a, salt));
    return Term::application(t.symbol(), std::move(args));
}

}  // namespace

Rule rename_apart(const Rule& r, std::size_t salt) {
    return Rule(r.id, rename_term(r.lhs, salt), rename_term(r.rhs, salt));
}

std::string to_string(const Rule& r) {
    return r.id + ": " + to_string(r.lhs) + " -> " + to_string(r.rhs);
}

namespace {

void collect_signature(const Term& t, std::map<std::string, std::size_t>& sig,
                       const std::string& rule_id) {
    if (t.is_variable()) return;
    auto [it, inserted] = sig.emplace(t.symbol(), t.args().size());
    if (!inserted && it->second != t.args().size())
        throw Error("arity-inconsistency for symbol " + t.symbol() + " in rule " + rule_id);
    for (const Term& a : t.args()) collect_signature(a, sig, rule_id);
}

}  // namespace

Trs::Trs(std::vector<Rule> rules) : rules_(std::move(rules)) {
    std::set<std::string> seen;
    for (const Rule& r : rules_) {
        if (!seen.insert(r.id).second) throw Error("duplicate rule id " + r.id);
        collect_signature(r.lhs, signature_, r.id);
        collect_signature(r.rhs, signature_, r.id);
        if (!r.left_linear()) left_linear_ = false;
        if (!r.linear()) linear_ = false;
        if (r.duplicating()) duplicating_.insert(r.id);
    }
}

const Rule* Trs::rule_by_id(const std::string& id) const {
    for (const Rule& r : rules_)
        if (r.id == id) return &r;
    return nullptr;
}

Trs Trs::subsystem(const std::set<std::string>& ids) const {
    std::vector<Rule> sub;
    for (const Rule& r : rules_)
        if (ids.count(r.id)) sub.push_back(r);
    return Trs(std::move(sub));
}

bool Trs::is_ars() const {
    for (const auto& [sym, arity] : signature_)
        if (arity != 0) return false;
    return true;
}

std::set<std::string> Trs::rule_ids() const {
    std::set<std::string> ids;
    for (const Rule& r : rules_) ids.insert(r.id);
    return ids;
}

std::string print_trs(const Trs& trs) {
    std::set<std::string> vars;
    for (const Rule& r : trs.rules())
        for (const auto& v : variables(r.lhs)) vars.insert(v);
    std::string out = "(VAR";
    for (const auto& v : vars) out += " " + v;
    out += ")\n(RULES\n";
    for (const Rule& r : trs.rules())
        out += "  " + to_string(r.lhs) + " -> " + to_string(r.rhs) + "\n";
    out += ")\n";
    return out;
}

void SearchConfig::validate() const {
    if (max_steps < 1 || max_conversion_length < 1 || max_multistep_redexes < 1 ||
        max_subsystem_candidates < 1 || max_precedence_levels < 1 || max_cpcs_depth < 1 ||
        node_budget < 1)
        throw Error("all search bounds must be at least 1");
}

}  // namespace confl
