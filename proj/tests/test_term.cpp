#include "doctest.h"

#include <random>

#include "confl/term.hpp"
#include "confl/trs.hpp"
#include "gen.hpp"

using namespace confl;

namespace {

Term v(const std::string& n) { return Term::variable(n); }
Term app(const std::string& s, std::vector<Term> args = {}) {
    return Term::application(s, std::move(args));
}

// inc(tl(nats))
Term inc_tl_nats() { return app("inc", {app("tl", {app("nats")})}); }
// cons(0, inc(nats))
Term zero_cons() { return app("cons", {app("0"), app("inc", {app("nats")})}); }

}  // namespace

TEST_CASE("subterm_at") {
    CHECK(subterm_at(inc_tl_nats(), Position({1, 1})) == app("nats"));
    const Term t = app("f", {app("g", {v("x")})});
    CHECK(subterm_at(t, Position()) == t);
    CHECK_THROWS_AS(subterm_at(app("f", {app("a")}), Position({2})), PositionError);
}

TEST_CASE("replace_at") {
    CHECK(replace_at(inc_tl_nats(), Position({1, 1}), zero_cons()) ==
          app("inc", {app("tl", {zero_cons()})}));
    const Term s = app("g", {v("y")});
    CHECK(replace_at(app("f", {app("a")}), Position(), s) == s);
    // root contraction of f(f(x)) -> g(x) inside f(f(f(f(a))))
    Term f4 = app("a");
    for (int i = 0; i < 4; ++i) f4 = app("f", {f4});
    Term g_ffa = app("g", {app("f", {app("f", {app("a")})})});
    CHECK(replace_at(f4, Position(), g_ffa) == g_ffa);
}

TEST_CASE("replace/subterm roundtrip") {
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        const auto sig = testgen::small_signature(rng);
        const Term t = testgen::random_term(rng, sig, {"x", "y"}, 8);
        for (const Position& p : positions(t))
            CHECK(replace_at(t, p, subterm_at(t, p)) == t);
    }
}

TEST_CASE("match") {
    Term f4 = app("a");
    for (int i = 0; i < 4; ++i) f4 = app("f", {f4});
    const Term pat = app("f", {app("f", {v("x")})});
    auto sigma = match(pat, f4);
    REQUIRE(sigma.has_value());
    CHECK(*sigma->lookup("x") == app("f", {app("f", {app("a")})}));
    CHECK(sigma->apply(pat) == f4);

    auto whole = match(v("x"), f4);
    REQUIRE(whole.has_value());
    CHECK(*whole->lookup("x") == f4);

    CHECK(!match(app("f", {v("x")}), app("g", {app("a")})).has_value());
}

TEST_CASE("match roundtrip on random linear patterns") {
    std::mt19937 rng(11);
    for (int i = 0; i < 300; ++i) {
        const auto sig = testgen::small_signature(rng);
        Term pat = testgen::random_term(rng, sig, {}, 6);
        // make it linear by planting distinct fresh variables
        auto pos = positions(pat);
        std::size_t k = 0;
        for (const auto& p : pos) {
            if (subterm_at(pat, p).is_application() && subterm_at(pat, p).args().empty() &&
                rng() % 2 == 0)
                pat = replace_at(pat, p, v("w" + std::to_string(k++)));
        }
        if (!is_linear(pat)) continue;
        Substitution sigma;
        for (const auto& name : variables(pat))
            sigma.bind(name, testgen::random_term(rng, sig, {"x"}, 4));
        const Term subject = sigma.apply(pat);
        auto found = match(pat, subject);
        REQUIRE(found.has_value());
        CHECK(found->apply(pat) == subject);
    }
}

TEST_CASE("unify") {
    // identical ground terms unify with the empty mgu
    auto empty = unify(app("nats"), app("nats"));
    REQUIRE(empty.has_value());
    CHECK(empty->empty());

    // q(x,y) with q(x', h(r(y')))
    const Term l = app("q", {v("x"), v("y")});
    const Term r = app("q", {v("x'"), app("h", {app("r", {v("y'")})})});
    auto mgu = unify(l, r);
    REQUIRE(mgu.has_value());
    CHECK(mgu->apply(l) == mgu->apply(r));
    CHECK(*mgu->lookup("y") == app("h", {app("r", {v("y'")})}));

    // occurs check
    CHECK(!unify(v("x"), app("f", {v("x")})).has_value());
}

namespace {

// Independent unification oracle: exhaustive Robinson — try every binding of a
// variable to a subterm of the current pair, recursing until the sides match.
void subterms_of(const Term& t, std::vector<Term>& out) {
    out.push_back(t);
    for (const Term& a : t.args()) subterms_of(a, out);
}

bool occurs(const std::string& var, const Term& t) {
    if (t.is_variable()) return t.symbol() == var;
    for (const Term& a : t.args())
        if (occurs(var, a)) return true;
    return false;
}

bool brute_unifiable(const Term& s, const Term& t, int depth) {
    if (s == t) return true;
    if (depth <= 0) return false;
    std::vector<Term> pool;
    subterms_of(s, pool);
    subterms_of(t, pool);
    std::set<std::string> vars = variables(s);
    for (const auto& x : variables(t)) vars.insert(x);
    for (const auto& x : vars) {
        for (const Term& u : pool) {
            if (occurs(x, u)) continue;
            Substitution b;
            b.bind(x, u);
            if (brute_unifiable(b.apply(s), b.apply(t), depth - 1)) return true;
        }
    }
    return false;
}

}  // namespace

TEST_CASE("unify agrees with brute-force oracle on small pairs") {
    std::mt19937 rng(13);
    int unifiable = 0;
    for (int i = 0; i < 250; ++i) {
        const auto sig = testgen::small_signature(rng);
        const Term s = testgen::random_term(rng, sig, {"x", "y"}, 5);
        const Term t = testgen::random_term(rng, sig, {"x", "z"}, 5);
        auto mgu = unify(s, t);
        if (mgu) {
            ++unifiable;
            CHECK(mgu->apply(s) == mgu->apply(t));
            // idempotent: no domain variable occurs in any image
            for (const auto& [var, img] : mgu->bindings())
                for (const auto& [var2, img2] : mgu->bindings()) CHECK(!occurs(var2, img));
        }
        const int nvars = static_cast<int>(variables(s).size() + variables(t).size());
        CHECK(brute_unifiable(s, t, nvars + 1) == mgu.has_value());
    }
    CHECK(unifiable > 10);
}

TEST_CASE("rename_apart") {
    const Rule r("r1", app("f", {v("x")}), app("g", {v("x")}));
    const Rule renamed = rename_apart(r, 1);
    CHECK(renamed.lhs == app("f", {v("x#1")}));
    CHECK(renamed.rhs == app("g", {v("x#1")}));

    const Rule r2 = rename_apart(r, 2);
    std::set<std::string> inter;
    for (const auto& a : variables(renamed.lhs))
        if (variables(r2.lhs).count(a)) inter.insert(a);
    CHECK(inter.empty());

    const Rule ground("g1", app("a"), app("b"));
    CHECK(rename_apart(ground, 5) == ground);
}

TEST_CASE("term_measure") {
    CHECK(term_measure(app("g", {app("a"), app("a")})) == SizeMeasure{3, 0});
    CHECK(term_measure(app("g", {v("x"), v("x")})) == SizeMeasure{1, 4});
    CHECK(term_measure(app("g", {v("x"), v("y")})) == SizeMeasure{1, 2});
}

TEST_CASE("term_measure decreases under strict encompassment") {
    std::mt19937 rng(17);
    int checked = 0;
    for (int i = 0; i < 300; ++i) {
        const auto sig = testgen::small_signature(rng);
        const Term t = testgen::random_term(rng, sig, {"x", "y"}, 8);
        const auto nv = non_variable_positions(t);
        if (nv.empty()) continue;
        const Position& p = nv[rng() % nv.size()];
        const Term s = replace_at(t, p, Term::variable("fresh_var"));
        if (s == t) continue;
        CHECK(term_measure(t) > term_measure(s));
        ++checked;
    }
    CHECK(checked > 100);
}

TEST_CASE("canonical printing") {
    CHECK(to_string(inc_tl_nats()) == "inc(tl(nats))");
    CHECK(to_string(v("x")) == "x");
    CHECK(to_string(app("a")) == "a");
    CHECK(to_string(app("f", {v("x"), app("b")})) == "f(x,b)");
}
