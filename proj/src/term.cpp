#include "confl/term.hpp"

#include <algorithm>
#include <sstream>

namespace confl {

Term Term::variable(std::string name) {
    Term t;
    t.variable_ = true;
    t.symbol_ = std::move(name);
    return t;
}

Term Term::application(std::string symbol, std::vector<Term> args) {
    Term t;
    t.variable_ = false;
    t.symbol_ = std::move(symbol);
    t.args_ = std::move(args);
    return t;
}

std::size_t Term::node_count() const {
    std::size_t n = 1;
    for (const Term& a : args_) n += a.node_count();
    return n;
}

bool Term::operator==(const Term& other) const {
    return variable_ == other.variable_ && symbol_ == other.symbol_ && args_ == other.args_;
}

int Term::compare(const Term& other) const {
    if (variable_ != other.variable_) return variable_ ? -1 : 1;
    if (int c = symbol_.compare(other.symbol_); c != 0) return c < 0 ? -1 : 1;
    if (args_.size() != other.args_.size()) return args_.size() < other.args_.size() ? -1 : 1;
    for (std::size_t i = 0; i < args_.size(); ++i)
        if (int c = args_[i].compare(other.args_[i]); c != 0) return c;
    return 0;
}

std::string to_string(const Term& t) {
    if (t.is_variable() || t.args().empty()) return t.symbol();
    std::string out = t.symbol();
    out += '(';
    for (std::size_t i = 0; i < t.args().size(); ++i) {
        if (i > 0) out += ',';
        out += to_string(t.args()[i]);
    }
    out += ')';
    return out;
}

Position Position::descend(std::uint32_t i) const {
    std::vector<std::uint32_t> p = path_;
    p.push_back(i);
    return Position(std::move(p));
}

Position Position::operator/(const Position& other) const {
    std::vector<std::uint32_t> p = path_;
    p.insert(p.end(), other.path_.begin(), other.path_.end());
    return Position(std::move(p));
}

Position Position::parent() const {
    if (path_.empty()) throw PositionError("root position has no parent");
    return Position(std::vector<std::uint32_t>(path_.begin(), path_.end() - 1));
}

bool Position::is_prefix_of(const Position& other) const {
    if (path_.size() > other.path_.size()) return false;
    return std::equal(path_.begin(), path_.end(), other.path_.begin());
}

bool Position::is_strict_prefix_of(const Position& other) const {
    return path_.size() < other.path_.size() && is_prefix_of(other);
}

bool Position::disjoint_from(const Position& other) const {
    return !is_prefix_of(other) && !other.is_prefix_of(*this);
}

Position Position::suffix_from(const Position& prefix) const {
    if (!prefix.is_prefix_of(*this)) throw PositionError("not a prefix");
    return Position(std::vector<std::uint32_t>(path_.begin() + prefix.path_.size(), path_.end()));
}

std::string Position::to_string() const {
    if (path_.empty()) return "e";
    std::string out;
    for (std::size_t i = 0; i < path_.size(); ++i) {
        if (i > 0) out += '.';
        out += std::to_string(path_[i]);
    }
    return out;
}

Position Position::parse(const std::string& text) {
    if (text == "e") return Position();
    std::vector<std::uint32_t> path;
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t j = text.find('.', i);
        if (j == std::string::npos) j = text.size();
        const std::string part = text.substr(i, j - i);
        if (part.empty()) throw PositionError("bad position: " + text);
        for (char c : part)
            if (c < '0' || c > '9') throw PositionError("bad position: " + text);
        const unsigned long v = std::stoul(part);
        if (v == 0) throw PositionError("positions are 1-based: " + text);
        path.push_back(static_cast<std::uint32_t>(v));
        i = j + 1;
    }
    return Position(std::move(path));
}

namespace {

void collect_positions(const Term& t, Position here, bool non_var_only,
                       std::vector<Position>& out) {
    if (!non_var_only || t.is_application()) out.push_back(here);
    for (std::size_t i = 0; i < t.args().size(); ++i)
        collect_positions(t.args()[i], here.descend(static_cast<std::uint32_t>(i + 1)),
                          non_var_only, out);
}

}  // namespace

std::vector<Position> positions(const Term& t) {
    std::vector<Position> out;
    collect_positions(t, Position(), false, out);
    return out;
}

std::vector<Position> non_variable_positions(const Term& t) {
    std::vector<Position> out;
    collect_positions(t, Position(), true, out);
    return out;
}

const Term& subterm_at(const Term& t, const Position& p) {
    const Term* cur = &t;
    for (std::uint32_t i : p.path()) {
        if (i == 0 || i > cur->args().size())
            throw PositionError("invalid position " + p.to_string() + " in " + to_string(t));
        cur = &cur->args()[i - 1];
    }
    return *cur;
}

Term replace_at(const Term& t, const Position& p, const Term& replacement) {
    if (p.is_root()) return replacement;
    const std::uint32_t i = p.path().front();
    if (t.is_variable() || i == 0 || i > t.args().size())
        throw PositionError("invalid position " + p.to_string() + " in " + to_string(t));
    std::vector<Term> args = t.args();
    Position rest(std::vector<std::uint32_t>(p.path().begin() + 1, p.path().end()));
    args[i - 1] = replace_at(args[i - 1], rest, replacement);
    return Term::application(t.symbol(), std::move(args));
}

namespace {

void collect_vars(const Term& t, std::map<std::string, std::size_t>& occ) {
    if (t.is_variable()) {
        ++occ[t.symbol()];
        return;
    }
    for (const Term& a : t.args()) collect_vars(a, occ);
}

}  // namespace

std::set<std::string> variables(const Term& t) {
    std::map<std::string, std::size_t> occ;
    collect_vars(t, occ);
    std::set<std::string> out;
    for (const auto& [v, n] : occ) out.insert(v);
    return out;
}

std::map<std::string, std::size_t> variable_occurrences(const Term& t) {
    std::map<std::string, std::size_t> occ;
    collect_vars(t, occ);
    return occ;
}

bool is_linear(const Term& t) {
    for (const auto& [v, n] : variable_occurrences(t))
        if (n > 1) return false;
    return true;
}

const Term* Substitution::lookup(const std::string& var) const {
    auto it = bindings_.find(var);
    return it == bindings_.end() ? nullptr : &it->second;
}

void Substitution::bind(const std::string& var, Term t) {
    bindings_.insert_or_assign(var, std::move(t));
}

Term Substitution::apply(const Term& t) const {
    if (t.is_variable()) {
        if (const Term* bound = lookup(t.symbol())) return *bound;
        return t;
    }
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const Term& a : t.args()) args.push_back(apply(a));
    return Term::application(t.symbol(), std::move(args));
}

namespace {

bool match_into(const Term& pattern, const Term& subject, Substitution& sigma) {
    if (pattern.is_variable()) {
        if (const Term* bound = sigma.lookup(pattern.symbol())) return *bound == subject;
        sigma.bind(pattern.symbol(), subject);
        return true;
    }
    if (subject.is_variable() || pattern.symbol() != subject.symbol() ||
        pattern.args().size() != subject.args().size())
        return false;
    for (std::size_t i = 0; i < pattern.args().size(); ++i)
        if (!match_into(pattern.args()[i], subject.args()[i], sigma)) return false;
    return true;
}

bool occurs_in(const std::string& var, const Term& t) {
    if (t.is_variable()) return t.symbol() == var;
    for (const Term& a : t.args())
        if (occurs_in(var, a)) return true;
    return false;
}

}  // namespace

std::optional<Substitution> match(const Term& pattern, const Term& subject) {
    Substitution sigma;
    if (!match_into(pattern, subject, sigma)) return std::nullopt;
    return sigma;
}

std::optional<Substitution> unify(const Term& s, const Term& t) {
    Substitution sigma;
    std::vector<std::pair<Term, Term>> work{{s, t}};
    while (!work.empty()) {
        auto [a, b] = std::move(work.back());
        work.pop_back();
        a = sigma.apply(a);
        b = sigma.apply(b);
        if (a == b) continue;
        if (a.is_variable() || b.is_variable()) {
            if (!a.is_variable()) std::swap(a, b);
            if (occurs_in(a.symbol(), b)) return std::nullopt;
            // Compose {x -> b} into sigma, keeping it idempotent.
            Substitution single;
            single.bind(a.symbol(), b);
            Substitution next;
            for (const auto& [v, img] : sigma.bindings()) next.bind(v, single.apply(img));
            next.bind(a.symbol(), b);
            sigma = std::move(next);
            continue;
        }
        if (a.symbol() != b.symbol() || a.args().size() != b.args().size())
            return std::nullopt;
        for (std::size_t i = 0; i < a.args().size(); ++i)
            work.emplace_back(a.args()[i], b.args()[i]);
    }
    return sigma;
}

SizeMeasure term_measure(const Term& t) {
    SizeMeasure m;
    std::size_t non_var = 0;
    std::map<std::string, std::size_t> occ;
    std::vector<const Term*> stack{&t};
    while (!stack.empty()) {
        const Term* cur = stack.back();
        stack.pop_back();
        if (cur->is_variable()) {
            ++occ[cur->symbol()];
        } else {
            ++non_var;
            for (const Term& a : cur->args()) stack.push_back(&a);
        }
    }
    m.symbol_count = non_var;
    for (const auto& [v, n] : occ) m.var_square_sum += n * n;
    return m;
}

std::string to_string(const SizeMeasure& m) {
    std::ostringstream os;
    os << '(' << m.symbol_count << ',' << m.var_square_sum << ')';
    return os.str();
}

}  // namespace confl
