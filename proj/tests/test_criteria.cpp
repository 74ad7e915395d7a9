#include "doctest.h"

#include <random>

#include "confl/certificate_io.hpp"
#include "confl/cops.hpp"
#include "confl/criteria.hpp"
#include "gen.hpp"

using namespace confl;

namespace {

Term v(const std::string& n) { return Term::variable(n); }
Term app(const std::string& s, std::vector<Term> args = {}) {
    return Term::application(s, std::move(args));
}

Trs nats() {
    return parse_cops(
        "(VAR x y)(RULES"
        "  nats -> cons(0, inc(nats))"
        "  d(x) -> cons(x, cons(x, d(x)))"
        "  inc(cons(x, y)) -> cons(s(x), inc(y))"
        "  inc(tl(nats)) -> tl(inc(nats))"
        "  hd(cons(x, y)) -> x"
        "  tl(cons(x, y)) -> y)");
}

Trs running() {
    return parse_cops("(VAR x)(RULES f(x) -> f(f(x)) f(x) -> g(x) g(x) -> f(x))");
}

Trs seven_rule_linear() {
    return parse_cops(
        "(VAR x y z)(RULES"
        "  h(f(x, y)) -> f(h(r(x)), y)"
        "  f(x, k(y, z)) -> g(p(y), q(z, x))"
        "  h(q(x, y)) -> q(x, h(r(y)))"
        "  q(x, h(r(y))) -> h(q(x, y))"
        "  h(g(x, y)) -> g(x, h(y))"
        "  a(x, y, z) -> h(f(x, k(y, z)))"
        "  a(x, y, z) -> g(p(y), q(z, h(r(x)))))");
}

Trs half_levy() {
    return parse_cops(
        "(VAR x)(RULES"
        "  f(a, a) -> b"
        "  a -> c"
        "  f(c, x) -> f(x, x)"
        "  f(x, c) -> f(x, x)"
        "  f(c, c) -> f(a, c))");
}

Trs half_levy_prime() {
    return parse_cops(
        "(VAR x)(RULES"
        "  f(a, a) -> b"
        "  a -> c"
        "  f(c, x) -> f(x, x)"
        "  f(x, c) -> f(x, x))");
}

Trs cpcs_ars() { return parse_cops("(RULES c -> a1 a1 -> a a -> b a -> a1 a1 -> c)"); }

}  // namespace

TEST_CASE("hot_less") {
    const Trs trs = nats();
    SearchConfig cfg;
    const std::set<std::string> sigma;
    Precedence prec;
    prec.level = {{"r1", 0}, {"r2", 0}, {"r3", 0}, {"r4", 1}, {"r5", 0}, {"r6", 0}};

    const HotLabel l1 = HotLabel::levels({0});
    const HotLabel l4 = HotLabel::levels({1});
    CHECK(hot_less(l1, l4, sigma, prec, trs, cfg) == HotCmp::Below);
    CHECK(hot_less(l4, l1, sigma, prec, trs, cfg) == HotCmp::NotBelow);
    CHECK(hot_less(l4, l4, sigma, prec, trs, cfg) == HotCmp::BelowOrEqual);

    // term labels compare by subsystem reachability
    const std::set<std::string> sig_all{"r1", "r2", "r3", "r4", "r5", "r6"};
    const Term t = app("tl", {app("cons", {app("0"), app("nats")})});
    const Term u = app("nats");
    const HotLabel lt = HotLabel::term(t);
    const HotLabel lu = HotLabel::term(u);
    CHECK(hot_less(lu, lt, sig_all, prec, trs, cfg) == HotCmp::Below);
    CHECK(hot_less(lt, lt, sig_all, prec, trs, cfg) == HotCmp::BelowOrEqual);
    // terms below sets, never the other way around
    CHECK(hot_less(lt, l4, sig_all, prec, trs, cfg) == HotCmp::Below);
    CHECK(hot_less(l4, lt, sig_all, prec, trs, cfg) == HotCmp::NotBelow);

    // multiset comparison: {1} above {0,0,0}
    CHECK(hot_less(HotLabel::levels({0, 0, 0}), HotLabel::levels({1}), sigma, prec, trs, cfg) ==
          HotCmp::Below);
    CHECK(hot_less(HotLabel::levels({1}), HotLabel::levels({1, 0}), sigma, prec, trs, cfg) ==
          HotCmp::Below);
}

TEST_CASE("hot_less is a strict partial order on run labels") {
    const Trs trs = running();
    SearchConfig cfg;
    const std::set<std::string> sigma;
    Precedence prec;
    prec.level = {{"r1", 0}, {"r2", 1}, {"r3", 2}};
    std::vector<HotLabel> labels{HotLabel::levels({0}),    HotLabel::levels({1}),
                                 HotLabel::levels({2}),    HotLabel::levels({0, 1}),
                                 HotLabel::levels({2, 2}), HotLabel::levels({})};
    auto below = [&](const HotLabel& a, const HotLabel& b) {
        return hot_less(a, b, sigma, prec, trs, cfg) == HotCmp::Below;
    };
    for (const HotLabel& a : labels) CHECK(!below(a, a));
    for (const HotLabel& a : labels)
        for (const HotLabel& b : labels)
            for (const HotLabel& c : labels)
                if (below(a, b) && below(b, c)) CHECK(below(a, c));
}

TEST_CASE("check_knuth_bendix") {
    SearchConfig cfg;
    CHECK(check_knuth_bendix(parse_cops("(VAR x)(RULES f(f(x)) -> f(x))"), cfg).yes());
    CHECK(check_knuth_bendix(nats(), cfg).verdict == Verdict::Maybe);
    CHECK(check_knuth_bendix(parse_cops("(RULES )"), cfg).yes());
    // kb works for non-left-linear systems too
    CHECK(check_knuth_bendix(parse_cops("(VAR x)(RULES f(x, x) -> a)"), cfg).yes());
}

TEST_CASE("check_strongly_closed") {
    SearchConfig cfg;
    const ProofOutcome seven = check_strongly_closed(
        parse_cops(
            "(VAR x y z)(RULES"
            "  h(f(x, y)) -> f(h(r(x)), y)"
            "  f(x, k(y, z)) -> g(p(y), q(z, x))"
            "  h(q(x, y)) -> q(x, h(r(y)))"
            "  q(x, h(r(y))) -> h(q(x, y))"
            "  h(g(x, y)) -> g(x, h(y)))"),
        cfg);
    CHECK(seven.yes());

    CHECK(check_strongly_closed(running(), cfg).verdict == Verdict::Maybe);
    // the full seven-rule system is linear but not strongly closed
    CHECK(check_strongly_closed(seven_rule_linear(), cfg).verdict == Verdict::Maybe);
    // orthogonal linear
    CHECK(check_strongly_closed(parse_cops("(VAR x)(RULES f(x) -> g(x))"), cfg).yes());
    // non-linear systems are rejected with a reason
    const ProofOutcome nl = check_strongly_closed(half_levy(), cfg);
    CHECK(nl.verdict == Verdict::Maybe);
    CHECK(nl.reason.find("linear") != std::string::npos);
}

TEST_CASE("check_development_closed") {
    SearchConfig cfg;
    CHECK(check_development_closed(parse_cops("(VAR x)(RULES f(x) -> g(x) a -> b)"), cfg).yes());
    CHECK(check_development_closed(parse_cops("(RULES f(a) -> b a -> c f(c) -> b)"), cfg).yes());
    CHECK(check_development_closed(half_levy(), cfg).verdict == Verdict::Maybe);
}

TEST_CASE("check_hot_decreasing on the stream system") {
    SearchConfig cfg;
    const ProofOutcome out = check_hot_decreasing(nats(), cfg);
    REQUIRE(out.yes());
    const HotCert& cert = std::get<HotCert>(out.certificate->kind);
    CHECK(cert.sigma.empty());
    CHECK(cert.precedence.level.at("r4") > cert.precedence.level.at("r1"));
    CHECK(cert.precedence.level.at("r4") > cert.precedence.level.at("r3"));
    CHECK(cert.precedence.level.at("r4") > cert.precedence.level.at("r6"));
    CHECK(replay_certificate(*out.certificate, nats(), cfg));
}

TEST_CASE("hot subsumes development closedness with the empty subsystem") {
    SearchConfig cfg;
    const Trs dc = parse_cops("(RULES f(a) -> b a -> c f(c) -> b)");
    REQUIRE(check_development_closed(dc, cfg).yes());
    const ProofOutcome hot = check_hot_decreasing(dc, cfg);
    REQUIRE(hot.yes());
    const HotCert& cert = std::get<HotCert>(hot.certificate->kind);
    CHECK(cert.sigma.empty());
    // the constant precedence is found first
    std::set<unsigned> levels;
    for (const auto& [id, lv] : cert.precedence.level) levels.insert(lv);
    CHECK(levels == std::set<unsigned>{0});
}

TEST_CASE("check_hot_decreasing abstains on the half-Levy systems") {
    SearchConfig cfg;
    CHECK(check_hot_decreasing(half_levy(), cfg).verdict == Verdict::Maybe);
    CHECK(check_hot_decreasing(half_levy_prime(), cfg).verdict == Verdict::Maybe);
}

TEST_CASE("check_cpcs on the running example") {
    SearchConfig cfg;
    const ProofOutcome out = check_cpcs(running(), cfg);
    REQUIRE(out.yes());
    const CpcsCert& cert = std::get<CpcsCert>(out.certificate->kind);
    CHECK(cert.sigma == std::vector<std::string>{"r1", "r3"});
    CHECK(cert.relative_termination.is_vacuous());
    CHECK(replay_certificate(*out.certificate, running(), cfg));
}

TEST_CASE("check_cpcs on the stream system recurses to the empty subsystem") {
    SearchConfig cfg;
    const ProofOutcome out = check_cpcs(nats(), cfg);
    REQUIRE(out.yes());
    const CpcsCert& cert = std::get<CpcsCert>(out.certificate->kind);
    CHECK(cert.sigma == std::vector<std::string>{"r1", "r3", "r6"});
    REQUIRE(cert.subsystem_proof);
    const CpcsCert& inner = std::get<CpcsCert>(cert.subsystem_proof->kind);
    CHECK(inner.sigma.empty());
    CHECK(replay_certificate(*out.certificate, nats(), cfg));
}

TEST_CASE("check_cpcs abstains when relative termination fails") {
    SearchConfig cfg;
    CHECK(check_cpcs(half_levy_prime(), cfg).verdict == Verdict::Maybe);
    CHECK(check_cpcs(half_levy(), cfg).verdict == Verdict::Maybe);
}

TEST_CASE("check_gsc") {
    SearchConfig cfg;
    const ProofOutcome out = check_gsc(seven_rule_linear(), cfg);
    REQUIRE(out.yes());
    const GscCert& cert = std::get<GscCert>(out.certificate->kind);
    // smallest-first enumeration settles on a part of the five linear rules
    const std::set<std::string> five{"r1", "r2", "r3", "r4", "r5"};
    for (const auto& id : cert.sigma) CHECK(five.count(id) == 1);
    CHECK(replay_certificate(*out.certificate, seven_rule_linear(), cfg));

    CHECK(check_gsc(parse_cops("(VAR x)(RULES f(x) -> g(x))"), cfg).yes());
    CHECK(check_gsc(half_levy(), cfg).verdict == Verdict::Maybe);
}

TEST_CASE("check_ars_cpcs") {
    SearchConfig cfg;
    const ProofOutcome out = check_ars_cpcs(cpcs_ars(), cfg);
    REQUIRE(out.yes());
    const CpcsCert& cert = std::get<CpcsCert>(out.certificate->kind);
    CHECK(cert.sigma == std::vector<std::string>{"r1", "r2", "r3"});
    CHECK(cert.ars);
    CHECK(replay_certificate(*out.certificate, cpcs_ars(), cfg));

    CHECK(check_ars_cpcs(parse_cops("(RULES a -> b)"), cfg).yes());

    // the locally-confluent-but-not-confluent subsystem is rejected for itself
    const Trs kleene = cpcs_ars().subsystem({"r2", "r3", "r4", "r5"});
    CHECK(check_ars_cpcs(kleene, cfg).verdict == Verdict::Maybe);

    CHECK_THROWS_AS(check_ars_cpcs(running(), cfg), Error);
}

TEST_CASE("prove drives the criteria in order") {
    SearchConfig cfg;
    CHECK(prove(nats(), cfg).yes());
    CHECK(prove(running(), cfg).yes());
    CHECK(prove(seven_rule_linear(), cfg).yes());
    CHECK(prove(cpcs_ars(), cfg).yes());

    const ProofOutcome no = prove(parse_cops("(RULES a -> b a -> c)"), cfg);
    CHECK(no.verdict == Verdict::No);
    REQUIRE(no.witness.has_value());
    CHECK(verify_witness(*no.witness, parse_cops("(RULES a -> b a -> c)"), cfg));

    CHECK(prove(half_levy_prime(), cfg).verdict != Verdict::Yes);

    const ProofOutcome orth = prove(parse_cops("(VAR x)(RULES f(x) -> g(x))"), cfg);
    CHECK(orth.yes());
    CHECK(orth.criterion == "orthogonal");
}

TEST_CASE("widening the bounds never loses a YES") {
    SearchConfig cfg;
    SearchConfig wide = cfg;
    wide.max_steps = 7;
    wide.max_conversion_length = 10;
    for (const Trs& trs : {nats(), running(), seven_rule_linear()}) {
        CHECK(prove(trs, cfg).yes());
        CHECK(prove(trs, wide).yes());
    }
}

TEST_CASE("certificates survive the text roundtrip") {
    SearchConfig cfg;
    struct Case {
        Trs trs;
        ProofOutcome out;
    };
    std::vector<Case> cases;
    cases.push_back({nats(), check_hot_decreasing(nats(), cfg)});
    cases.push_back({nats(), check_cpcs(nats(), cfg)});
    cases.push_back({running(), check_cpcs(running(), cfg)});
    cases.push_back({seven_rule_linear(), check_gsc(seven_rule_linear(), cfg)});
    cases.push_back({parse_cops("(VAR x)(RULES f(f(x)) -> f(x))"),
                     check_knuth_bendix(parse_cops("(VAR x)(RULES f(f(x)) -> f(x))"), cfg)});
    cases.push_back({cpcs_ars(), check_ars_cpcs(cpcs_ars(), cfg)});
    for (const Case& c : cases) {
        REQUIRE(c.out.yes());
        const std::string text = render_certificate(*c.out.certificate);
        const Certificate back = parse_certificate(text, c.trs);
        CHECK(render_certificate(back) == text);
        CHECK(replay_certificate(back, c.trs, cfg));
    }
    // a witness roundtrip
    const Trs bad = parse_cops("(RULES a -> b a -> c)");
    const ProofOutcome no = prove(bad, cfg);
    REQUIRE(no.witness.has_value());
    const std::string wtext = render_witness(*no.witness);
    const Witness back = parse_witness(wtext, bad);
    CHECK(render_witness(back) == wtext);
    CHECK(verify_witness(back, bad, cfg));
}

TEST_CASE("tampered certificates are rejected on replay") {
    SearchConfig cfg;
    const ProofOutcome out = check_cpcs(nats(), cfg);
    REQUIRE(out.yes());
    // replaying against a different system fails
    CHECK(!replay_certificate(*out.certificate, running(), cfg));
    // corrupting the subsystem fails
    CpcsCert broken = std::get<CpcsCert>(out.certificate->kind);
    broken.sigma = {"r1"};
    CHECK(!replay_certificate(Certificate{broken}, nats(), cfg));
}

TEST_CASE("soundness fuzz: every YES instance has joinable bounded peaks") {
    std::mt19937 rng(67);
    SearchConfig cfg;
    cfg.node_budget = 4000;
    SearchConfig wide = cfg;
    wide.max_steps = 8;
    int yes_instances = 0;
    int attempts = 0;
    while (yes_instances < 8 && attempts < 300) {
        ++attempts;
        const Trs trs = testgen::random_left_linear_trs(rng, 3, 4);
        const ProofOutcome out = prove(trs, cfg);
        if (!out.yes()) continue;
        ++yes_instances;
        if (out.certificate) CHECK(replay_certificate(*out.certificate, trs, cfg));
        const auto sig = testgen::small_signature(rng);
        for (int k = 0; k < 40; ++k) {
            const Term s = testgen::random_term(rng, sig, {"x"}, 5);
            const Reach reach = bounded_reducts(s, trs.rules(), 3, 200);
            std::vector<Term> reducts;
            for (const auto& [t, e] : reach.visited) reducts.push_back(t);
            const Term& t1 = reducts[rng() % reducts.size()];
            const Term& t2 = reducts[rng() % reducts.size()];
            CHECK(joinable(t1, t2, trs.rules(), wide).value.has_value());
        }
    }
    CHECK(yes_instances >= 8);
}

TEST_CASE("gsc on an orthogonal linear system uses the empty subsystem") {
    SearchConfig cfg;
    const ProofOutcome out = check_gsc(parse_cops("(VAR x)(RULES f(x) -> g(x))"), cfg);
    REQUIRE(out.yes());
    CHECK(std::get<GscCert>(out.certificate->kind).sigma.empty());
}

TEST_CASE("cpcs depth limit cuts recursion") {
    SearchConfig cfg;
    CHECK(check_cpcs(nats(), cfg, cfg.max_cpcs_depth + 1).verdict == Verdict::Maybe);
    CHECK(check_cpcs(nats(), cfg, cfg.max_cpcs_depth + 1).reason == "depth-exceeded");
}

TEST_CASE("expired deadline turns checks into MAYBE") {
    SearchConfig cfg;
    cfg.deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
    const ProofOutcome out = check_hot_decreasing(nats(), cfg);
    CHECK(out.verdict == Verdict::Maybe);
    CHECK(out.reason == "timeout");
}

TEST_CASE("orthogonality certificate rendering names the criterion") {
    SearchConfig cfg;
    const Trs orth = parse_cops("(VAR x)(RULES f(x) -> g(x))");
    const ProofOutcome out = prove(orth, cfg);
    REQUIRE(out.yes());
    const std::string text = render_certificate(*out.certificate);
    CHECK(text.find("YES by orthogonality (no critical pairs)") != std::string::npos);
    CHECK(replay_certificate(parse_certificate(text, orth), orth, cfg));
}

TEST_CASE("a TRS without non-trivial peaks is development closed") {
    std::mt19937 rng(73);
    int orthogonal_seen = 0;
    for (int i = 0; i < 150; ++i) {
        const Trs trs = testgen::random_left_linear_trs(rng, 3, 4);
        SearchConfig cfg;
        if (!critical_peaks(trs, false).empty()) continue;
        ++orthogonal_seen;
        CHECK(check_development_closed(trs, cfg).yes());
    }
    CHECK(orthogonal_seen > 10);
}
