#include "confl/criteria.hpp"

#include <algorithm>
#include <chrono>
#include <functional>

namespace confl {

namespace {

std::vector<Rule> rules_of(const Trs& trs, const std::set<std::string>& ids) {
    std::vector<Rule> out;
    for (const Rule& r : trs.rules())
        if (ids.count(r.id)) out.push_back(r);
    return out;
}

std::vector<std::pair<Term, std::size_t>> sorted_reducts(const Reach& reach) {
    std::vector<std::pair<Term, std::size_t>> out;
    for (const auto& [t, entry] : reach.visited) out.emplace_back(t, entry.depth);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second < b.second;
        return a.first < b.first;
    });
    return out;
}

ProofOutcome maybe(std::string criterion, std::string reason) {
    ProofOutcome out;
    out.verdict = Verdict::Maybe;
    out.criterion = std::move(criterion);
    out.reason = std::move(reason);
    return out;
}

ProofOutcome yes(std::string criterion, Certificate cert) {
    ProofOutcome out;
    out.verdict = Verdict::Yes;
    out.criterion = std::move(criterion);
    out.certificate = std::move(cert);
    return out;
}

}  // namespace

PeakRef peak_ref(const CriticalPeak& peak) {
    return PeakRef{peak.source,        peak.outer.rule.id, peak.inner.rule.id,
                   peak.inner.position, peak.left,         peak.right};
}

// ---------------------------------------------------------------------------
// hot labels

namespace {

bool multiset_less(const std::multiset<unsigned>& a, const std::multiset<unsigned>& b) {
    if (a == b) return false;
    // compare descending sequences lexicographically; running out first means
    // smaller
    auto ia = a.rbegin();
    auto ib = b.rbegin();
    while (ia != a.rend() && ib != b.rend()) {
        if (*ia != *ib) return *ia < *ib;
        ++ia;
        ++ib;
    }
    return ia == a.rend();
}

}  // namespace

HotCmp hot_less(const HotLabel& a, const HotLabel& b, const std::set<std::string>& sigma,
                const Precedence& prec, const Trs& trs, const SearchConfig& cfg) {
    (void)prec;
    const bool a_term = a.is_term(), b_term = b.is_term();
    if (a_term && !b_term) return HotCmp::Below;   // every term below every set
    if (!a_term && b_term) return HotCmp::NotBelow;
    if (!a_term && !b_term) {
        const auto& as = std::get<std::multiset<unsigned>>(a.value);
        const auto& bs = std::get<std::multiset<unsigned>>(b.value);
        if (multiset_less(as, bs)) return HotCmp::Below;
        return as == bs ? HotCmp::BelowOrEqual : HotCmp::NotBelow;
    }
    const Term& ta = std::get<Term>(a.value);
    const Term& tb = std::get<Term>(b.value);
    const Reach reach = bounded_reducts(tb, rules_of(trs, sigma), cfg.max_steps, cfg.node_budget);
    auto it = reach.visited.find(ta);
    if (it != reach.visited.end() && it->second.depth >= 1) return HotCmp::Below;
    return ta == tb ? HotCmp::BelowOrEqual : HotCmp::NotBelow;
}

// ---------------------------------------------------------------------------
// step verification (shared by the replay paths)

namespace {

bool verify_steps(const Term& from, const Term& to, const StepSeq& steps, const Trs& trs,
                  const std::set<std::string>* allowed) {
    Term cur = from;
    for (const TermStep& st : steps) {
        if (st.from != cur) return false;
        const Rule* rule = trs.rule_by_id(st.rule_id);
        if (!rule) return false;
        if (allowed && !allowed->count(st.rule_id)) return false;
        Term sub;
        try {
            sub = subterm_at(cur, st.position);
        } catch (const PositionError&) {
            return false;
        }
        auto sigma = match(rule->lhs, sub);
        if (!sigma) return false;
        const Term next = replace_at(cur, st.position, sigma->apply(rule->rhs));
        if (next != st.to) return false;
        cur = next;
    }
    return cur == to;
}

bool verify_one_step(const TermStep& st, const Trs& trs) {
    return verify_steps(st.from, st.to, {st}, trs, nullptr);
}

}  // namespace

// ---------------------------------------------------------------------------
// Knuth-Bendix: terminating and all critical pairs joinable

ProofOutcome check_knuth_bendix(const Trs& trs, const SearchConfig& cfg, RunStats* stats) {
    auto term_cert = terminating(trs.rules());
    if (!term_cert) return maybe("kb", "termination not shown");
    KnuthBendixCert cert;
    cert.termination = std::move(*term_cert);
    for (const CriticalPeak& peak : critical_peaks(trs, false)) {
        if (stats) ++stats->peaks_examined;
        if (cfg.expired()) return maybe("kb", "timeout");
        auto join = joinable(peak.left, peak.right, trs.rules(), cfg);
        if (!join)
            return maybe("kb", "critical pair not joined within bounds: " + to_string(peak));
        cert.joins.emplace_back(peak_ref(peak),
                                JoinProof{join.value->from_left, join.value->from_right,
                                          join.value->meet});
    }
    return yes("kb", Certificate{std::move(cert)});
}

// ---------------------------------------------------------------------------
// strong closedness (Huet): s ->* u <-= t and s =-> v *<- t for all pairs

namespace {

std::optional<ScPeakProof> close_strongly(const CriticalPeak& peak, const Trs& trs,
                                          const SearchConfig& cfg) {
    ScPeakProof proof{peak_ref(peak), {}, std::nullopt, {}, std::nullopt};
    const Reach rs = bounded_reducts(peak.left, trs.rules(), cfg.max_steps, cfg.node_budget);
    bool found = false;
    for (const auto& [u, depth] : sorted_reducts(rs)) {
        if (u == peak.right) {
            proof.left_reduction = rs.path_to(u);
            found = true;
            break;
        }
        for (const RedexOccurrence& occ : redexes(peak.right, trs.rules())) {
            if (apply(peak.right, occ) == u) {
                proof.left_reduction = rs.path_to(u);
                proof.right_step = TermStep{peak.right, occ.rule.id, occ.position, u, true};
                found = true;
                break;
            }
        }
        if (found) break;
    }
    if (!found) return std::nullopt;

    const Reach rt = bounded_reducts(peak.right, trs.rules(), cfg.max_steps, cfg.node_budget);
    found = false;
    for (const auto& [v, depth] : sorted_reducts(rt)) {
        if (v == peak.left) {
            proof.right_reduction = rt.path_to(v);
            found = true;
            break;
        }
        for (const RedexOccurrence& occ : redexes(peak.left, trs.rules())) {
            if (apply(peak.left, occ) == v) {
                proof.right_reduction = rt.path_to(v);
                proof.left_step = TermStep{peak.left, occ.rule.id, occ.position, v, true};
                found = true;
                break;
            }
        }
        if (found) break;
    }
    if (!found) return std::nullopt;
    return proof;
}

}  // namespace

ProofOutcome check_strongly_closed(const Trs& trs, const SearchConfig& cfg, RunStats* stats) {
    if (!trs.linear()) return maybe("sc", "not linear");
    StronglyClosedCert cert;
    for (const CriticalPeak& peak : critical_peaks(trs, false)) {
        if (stats) ++stats->peaks_examined;
        if (cfg.expired()) return maybe("sc", "timeout");
        auto proof = close_strongly(peak, trs, cfg);
        if (!proof) return maybe("sc", "pair not strongly closed: " + to_string(peak));
        cert.peaks.push_back(std::move(*proof));
    }
    return yes("sc", Certificate{std::move(cert)});
}

// ---------------------------------------------------------------------------
// development closedness: right o-> left for every pair with the left term
// from the outer step

ProofOutcome check_development_closed(const Trs& trs, const SearchConfig& cfg, RunStats* stats) {
    if (!trs.left_linear()) return maybe("dc", "not left-linear");
    DevClosedCert cert;
    for (const CriticalPeak& peak : critical_peaks(trs, false)) {
        if (stats) ++stats->peaks_examined;
        if (cfg.expired()) return maybe("dc", "timeout");
        if (!develops_to(peak.right, peak.left, trs.rules()))
            return maybe("dc", "pair not development closed: " + to_string(peak));
        cert.peaks.push_back(peak_ref(peak));
    }
    return yes("dc", Certificate{std::move(cert)});
}

// ---------------------------------------------------------------------------
// hot-decreasingness

namespace {

// Enumerates subsets of the rule ids in increasing size, lexicographic within
// one size, capped by the configured candidate count.
std::vector<std::set<std::string>> subset_candidates(const Trs& trs, std::size_t cap) {
    std::vector<std::string> ids;
    for (const Rule& r : trs.rules()) ids.push_back(r.id);
    std::vector<std::set<std::string>> out;
    const std::size_t n = ids.size();
    for (std::size_t size = 0; size <= n && out.size() < cap; ++size) {
        std::vector<std::size_t> pick(size);
        for (std::size_t i = 0; i < size; ++i) pick[i] = i;
        for (;;) {
            std::set<std::string> subset;
            for (std::size_t i : pick) subset.insert(ids[i]);
            out.push_back(std::move(subset));
            if (out.size() >= cap) break;
            // next combination
            std::size_t i = size;
            while (i > 0 && pick[i - 1] == n - size + i - 1) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    return out;
}

// Dense level maps over the given ids: every used level below the maximum is
// occupied, so order-isomorphic maps are enumerated once. Lexicographic in
// rule order; the constant map comes first.
class PrecedenceEnum {
  public:
    PrecedenceEnum(std::vector<std::string> ids, unsigned levels)
        : ids_(std::move(ids)), levels_(levels), current_(ids_.size(), 0), done_(false) {}

    std::optional<Precedence> next() {
        while (!done_) {
            std::vector<unsigned> map = current_;
            advance();
            if (!dense(map)) continue;
            Precedence prec;
            for (std::size_t i = 0; i < ids_.size(); ++i) prec.level[ids_[i]] = map[i];
            return prec;
        }
        return std::nullopt;
    }

  private:
    void advance() {
        std::size_t i = current_.size();
        while (i > 0) {
            if (current_[i - 1] + 1 < levels_) {
                ++current_[i - 1];
                std::fill(current_.begin() + i, current_.end(), 0);
                return;
            }
            --i;
        }
        done_ = true;
    }

    static bool dense(const std::vector<unsigned>& map) {
        unsigned top = 0;
        for (unsigned v : map) top = std::max(top, v);
        for (unsigned l = 0; l < top; ++l)
            if (std::find(map.begin(), map.end(), l) == map.end()) return false;
        return true;
    }

    std::vector<std::string> ids_;
    unsigned levels_;
    std::vector<unsigned> current_;
    bool done_;
};

struct HotContext {
    const Trs& trs;
    const SearchConfig& cfg;
    std::set<std::string> sigma;
    Precedence prec;
    std::vector<Rule> sigma_rules;

    std::vector<Rule> rules_below(unsigned level) const {
        std::vector<Rule> out = sigma_rules;
        for (const Rule& r : trs.rules())
            if (!sigma.count(r.id) && prec.level.at(r.id) < level) out.push_back(r);
        return out;
    }
    std::vector<Rule> rules_below_eq(unsigned level) const {
        std::vector<Rule> out = sigma_rules;
        for (const Rule& r : trs.rules())
            if (!sigma.count(r.id) && prec.level.at(r.id) <= level) out.push_back(r);
        return out;
    }
    static std::vector<std::string> ids_of(const std::vector<Rule>& rules) {
        std::vector<std::string> ids;
        for (const Rule& r : rules) ids.push_back(r.id);
        return ids;
    }
};

// One orientation of a peak: s obtained by the rule `left_rule`, t by
// `right_rule`; for outer-inner peaks s must come from the outer step.
struct Orientation {
    const Term& source;
    const Term& s;
    const Term& t;
    const std::string& left_rule;
    const std::string& right_rule;
    bool mirrored;
};

std::optional<HotPeakProof> close_hot_orientation(const HotContext& ctx, const CriticalPeak& peak,
                                                  const Orientation& o) {
    const SearchConfig& cfg = ctx.cfg;
    const bool left_in = ctx.sigma.count(o.left_rule) > 0;
    const bool right_in = ctx.sigma.count(o.right_rule) > 0;
    const bool overlay = peak.classification == CriticalPeak::Kind::Overlay;

    HotPeakProof proof;
    proof.peak = peak_ref(peak);
    proof.mirrored = o.mirrored;

    if (left_in && right_in) {
        auto join = joinable(o.s, o.t, ctx.sigma_rules, cfg);
        if (!join) return std::nullopt;
        proof.shape = HotShape::SigmaJoin;
        proof.steps = join.value->from_left;
        proof.right_steps = join.value->from_right;
        proof.meet = join.value->meet;
        return proof;
    }

    if (!left_in) {
        const unsigned lv = ctx.prec.level.at(o.left_rule);
        const std::vector<Rule> below = ctx.rules_below(lv);
        const std::vector<Rule> below_eq = ctx.rules_below_eq(lv);
        const Reach down = bounded_reducts(o.s, below, cfg.max_steps, cfg.node_budget);
        for (const auto& [u, depth] : sorted_reducts(down)) {
            if (develops_to(o.t, u, below_eq)) {
                proof.shape = HotShape::BelowThenDev;
                proof.steps = down.path_to(u);
                proof.meet = u;
                proof.dev_rules = HotContext::ids_of(below_eq);
                return proof;
            }
        }
        if (!overlay) {
            const Reach sig = bounded_reducts(o.s, ctx.sigma_rules, cfg.max_steps,
                                              cfg.node_budget);
            for (const auto& [u, depth] : sorted_reducts(sig)) {
                if (develops_to(o.t, u, below_eq)) {
                    proof.shape = HotShape::SigmaThenDev;
                    proof.steps = sig.path_to(u);
                    proof.meet = u;
                    proof.dev_rules = HotContext::ids_of(below_eq);
                    return proof;
                }
            }
        } else {
            auto join = joinable(o.s, o.t, ctx.sigma_rules, cfg);
            if (join) {
                proof.shape = HotShape::SigmaJoin;
                proof.steps = join.value->from_left;
                proof.right_steps = join.value->from_right;
                proof.meet = join.value->meet;
                return proof;
            }
        }
        return std::nullopt;
    }

    // left rule inside the subsystem, right rule outside: the left step is
    // term-labelled, so the closing conversion may only use subsystem steps
    // whose sources are reducts of the peak source.
    if (!overlay) {
        const Reach sig = bounded_reducts(o.s, ctx.sigma_rules, cfg.max_steps, cfg.node_budget);
        if (sig.contains(o.t)) {
            proof.shape = HotShape::SigmaReach;
            proof.steps = sig.path_to(o.t);
            proof.meet = o.t;
            return proof;
        }
        const Reach src = bounded_reducts(o.source, ctx.sigma_rules, cfg.max_steps,
                                          cfg.node_budget);
        auto it = src.visited.find(o.t);
        if (it != src.visited.end() && it->second.depth >= 1) {
            auto join = joinable(o.s, o.t, ctx.sigma_rules, cfg);
            if (join) {
                proof.shape = HotShape::GuardedSigmaJoin;
                proof.guard = src.path_to(o.t);
                proof.steps = join.value->from_left;
                proof.right_steps = join.value->from_right;
                proof.meet = join.value->meet;
                return proof;
            }
        }
        return std::nullopt;
    }
    auto join = joinable(o.s, o.t, ctx.sigma_rules, cfg);
    if (join) {
        proof.shape = HotShape::SigmaJoin;
        proof.steps = join.value->from_left;
        proof.right_steps = join.value->from_right;
        proof.meet = join.value->meet;
        return proof;
    }
    {
        const unsigned right_lv = ctx.prec.level.at(o.right_rule);
        const std::vector<Rule> strict = ctx.rules_below(right_lv);
        const Reach sig = bounded_reducts(o.s, ctx.sigma_rules, cfg.max_steps, cfg.node_budget);
        for (const auto& [u, depth] : sorted_reducts(sig)) {
            if (develops_to(o.t, u, strict)) {
                proof.shape = HotShape::SigmaThenDevStrict;
                proof.steps = sig.path_to(u);
                proof.meet = u;
                proof.dev_rules = HotContext::ids_of(strict);
                return proof;
            }
        }
    }
    return std::nullopt;
}

std::optional<HotPeakProof> close_hot_peak(const HotContext& ctx, const CriticalPeak& peak) {
    const Orientation direct{peak.source,          peak.left,          peak.right,
                             peak.outer.rule.id,   peak.inner.rule.id, false};
    if (auto proof = close_hot_orientation(ctx, peak, direct)) return proof;
    if (peak.classification == CriticalPeak::Kind::Overlay) {
        // a decreasing diagram for the swapped orientation closes the peak too
        const Orientation mirror{peak.source,        peak.right,          peak.left,
                                 peak.inner.rule.id, peak.outer.rule.id,  true};
        if (auto proof = close_hot_orientation(ctx, peak, mirror)) return proof;
    }
    return std::nullopt;
}

}  // namespace

ProofOutcome check_hot_decreasing(const Trs& trs, const SearchConfig& cfg, RunStats* stats) {
    if (!trs.left_linear()) return maybe("hot", "not left-linear");
    const std::vector<CriticalPeak> peaks = critical_peaks(trs, false);
    std::map<std::set<std::string>, std::optional<TerminationCertificate>> term_cache;

    for (const std::set<std::string>& sigma :
         subset_candidates(trs, cfg.max_subsystem_candidates)) {
        if (cfg.expired()) return maybe("hot", "timeout");
        if (stats) ++stats->subsystems_tried;
        auto cached = term_cache.find(sigma);
        if (cached == term_cache.end()) {
            cached = term_cache.emplace(sigma, terminating(rules_of(trs, sigma))).first;
        }
        if (!cached->second) continue;

        HotContext ctx{trs, cfg, sigma, Precedence{}, rules_of(trs, sigma)};
        std::vector<std::string> outside;
        for (const Rule& r : trs.rules())
            if (!sigma.count(r.id)) outside.push_back(r.id);

        PrecedenceEnum prec_enum(outside, static_cast<unsigned>(cfg.max_precedence_levels));
        std::size_t tried = 0;
        while (auto prec = prec_enum.next()) {
            if (cfg.expired()) return maybe("hot", "timeout");
            if (++tried > 20000) break;
            ctx.prec = *prec;
            std::vector<HotPeakProof> proofs;
            bool all = true;
            for (const CriticalPeak& peak : peaks) {
                if (stats) ++stats->peaks_examined;
                auto proof = close_hot_peak(ctx, peak);
                if (!proof) {
                    all = false;
                    break;
                }
                proofs.push_back(std::move(*proof));
            }
            if (all) {
                HotCert cert;
                cert.sigma.assign(sigma.begin(), sigma.end());
                cert.sigma_termination = *cached->second;
                cert.precedence = *prec;
                cert.peaks = std::move(proofs);
                return yes("hot", Certificate{std::move(cert)});
            }
        }
    }
    return maybe("hot", "no subsystem and precedence close all critical peaks");
}

// ---------------------------------------------------------------------------
// critical-pair-closing subsystems

namespace {

// Candidate subsystems: unions over per-peak choices of closing-conversion
// rule sets, smallest first.
std::vector<std::set<std::string>> seeded_candidates(const Trs& trs,
                                                     const std::vector<CriticalPeak>& peaks,
                                                     const SearchConfig& cfg,
                                                     bool strict_subset) {
    std::vector<std::set<std::string>> acc{{}};
    for (const CriticalPeak& peak : peaks) {
        std::vector<std::set<std::string>> alternatives;
        for (const ConversionEvidence& conv :
             conversions(peak.left, peak.right, trs.rules(), cfg, 6)) {
            std::set<std::string> ids = conv.rule_ids();
            if (std::find(alternatives.begin(), alternatives.end(), ids) == alternatives.end())
                alternatives.push_back(std::move(ids));
        }
        if (alternatives.empty()) return {};
        std::vector<std::set<std::string>> next;
        for (const auto& base : acc)
            for (const auto& alt : alternatives) {
                std::set<std::string> u = base;
                u.insert(alt.begin(), alt.end());
                if (std::find(next.begin(), next.end(), u) == next.end())
                    next.push_back(std::move(u));
            }
        std::sort(next.begin(), next.end(), [](const auto& a, const auto& b) {
            if (a.size() != b.size()) return a.size() < b.size();
            return a < b;
        });
        if (next.size() > cfg.max_subsystem_candidates * 4)
            next.resize(cfg.max_subsystem_candidates * 4);
        acc = std::move(next);
    }
    std::sort(acc.begin(), acc.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    if (strict_subset) {
        const std::set<std::string> all = trs.rule_ids();
        std::erase_if(acc, [&](const std::set<std::string>& s) { return s == all; });
    }
    if (acc.size() > cfg.max_subsystem_candidates) acc.resize(cfg.max_subsystem_candidates);
    return acc;
}

ProofOutcome check_cpcs_impl(const Trs& trs, const SearchConfig& cfg, std::size_t depth,
                             RunStats* stats, bool ars_mode) {
    const std::string name = ars_mode ? "cpcs-ars" : "cpcs";
    if (!trs.left_linear()) return maybe(name, "not left-linear");
    if (depth > cfg.max_cpcs_depth) return maybe(name, "depth-exceeded");

    const std::vector<CriticalPeak> peaks = critical_peaks(trs, false);
    if (stats) stats->peaks_examined += peaks.size();

    for (const std::set<std::string>& sigma : seeded_candidates(trs, peaks, cfg, true)) {
        if (cfg.expired()) return maybe(name, "timeout");
        if (stats) ++stats->subsystems_tried;
        const std::vector<Rule> sigma_rules = rules_of(trs, sigma);

        std::vector<ConvProof> closes;
        bool all_closed = true;
        for (const CriticalPeak& peak : peaks) {
            auto conv = convertible(peak.left, peak.right, sigma_rules, cfg);
            if (!conv) {
                all_closed = false;
                break;
            }
            closes.push_back(ConvProof{peak_ref(peak), std::move(*conv.value)});
        }
        if (!all_closed) continue;

        TerminationCertificate rel{VacuousCert{}};
        if (!ars_mode) {
            std::vector<Rule> duplicating;
            for (const Rule& r : sigma_rules)
                if (r.duplicating()) duplicating.push_back(r);
            auto found = relatively_terminating(duplicating, trs.rules());
            if (!found) continue;
            rel = std::move(*found);
        }

        // confluence of the subsystem itself
        const Trs sub = trs.subsystem(sigma);
        std::optional<Certificate> sub_cert;
        if (sub.empty()) {
            sub_cert = Certificate{OrthogonalCert{}};
        } else {
            ProofOutcome rec = check_cpcs_impl(sub, cfg, depth + 1, stats, ars_mode);
            if (rec.yes()) {
                sub_cert = std::move(rec.certificate);
            } else if (sub.linear()) {
                ProofOutcome sc = check_strongly_closed(sub, cfg, stats);
                if (sc.yes()) sub_cert = std::move(sc.certificate);
            }
            if (!sub_cert) {
                ProofOutcome hot = check_hot_decreasing(sub, cfg, stats);
                if (hot.yes()) sub_cert = std::move(hot.certificate);
            }
        }
        if (!sub_cert) continue;

        CpcsCert cert;
        cert.sigma.assign(sigma.begin(), sigma.end());
        cert.relative_termination = std::move(rel);
        cert.closes = std::move(closes);
        cert.subsystem_proof = std::make_shared<Certificate>(std::move(*sub_cert));
        cert.ars = ars_mode;
        return yes(name, Certificate{std::move(cert)});
    }
    return maybe(name, "no critical-pair-closing subsystem found");
}

}  // namespace

ProofOutcome check_cpcs(const Trs& trs, const SearchConfig& cfg, std::size_t depth,
                        RunStats* stats) {
    return check_cpcs_impl(trs, cfg, depth, stats, false);
}

ProofOutcome check_ars_cpcs(const Trs& trs, const SearchConfig& cfg, RunStats* stats) {
    if (!trs.is_ars()) throw Error("not-an-ars: some function symbol has positive arity");
    return check_cpcs_impl(trs, cfg, 0, stats, true);
}

ProofOutcome check_gsc(const Trs& trs, const SearchConfig& cfg, RunStats* stats) {
    if (!trs.left_linear()) return maybe("gsc", "not left-linear");
    const std::vector<CriticalPeak> peaks = critical_peaks(trs, false);
    if (stats) stats->peaks_examined += peaks.size();

    for (const std::set<std::string>& sigma : seeded_candidates(trs, peaks, cfg, false)) {
        if (cfg.expired()) return maybe("gsc", "timeout");
        if (stats) ++stats->subsystems_tried;
        const Trs sub = trs.subsystem(sigma);
        if (!sub.linear()) continue;

        std::vector<ConvProof> closes;
        bool all_closed = true;
        for (const CriticalPeak& peak : peaks) {
            auto conv = convertible(peak.left, peak.right, sub.rules(), cfg);
            if (!conv) {
                all_closed = false;
                break;
            }
            closes.push_back(ConvProof{peak_ref(peak), std::move(*conv.value)});
        }
        if (!all_closed) continue;

        ProofOutcome sc = check_strongly_closed(sub, cfg, stats);
        if (!sc.yes()) continue;

        GscCert cert;
        cert.sigma.assign(sigma.begin(), sigma.end());
        cert.closes = std::move(closes);
        cert.strongly_closed = std::get<StronglyClosedCert>(sc.certificate->kind);
        return yes("gsc", Certificate{std::move(cert)});
    }
    return maybe("gsc", "no linear strongly closed critical-pair-closing subsystem");
}

// ---------------------------------------------------------------------------
// driver

ProofOutcome prove(const Trs& trs, const SearchConfig& cfg, RunStats* stats) {
    const auto start = std::chrono::steady_clock::now();
    auto finish = [&](ProofOutcome out) {
        if (stats)
            stats->elapsed_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return out;
    };

    if (auto witness = trivial_nonconfluence_witness(trs, cfg)) {
        ProofOutcome out;
        out.verdict = Verdict::No;
        out.criterion = "normal-form-witness";
        out.witness = std::move(*witness);
        return finish(out);
    }
    if (trs.left_linear() && critical_peaks(trs, false).empty())
        return finish(yes("orthogonal", Certificate{OrthogonalCert{}}));

    for (auto check : {check_knuth_bendix, check_development_closed, check_strongly_closed,
                       check_gsc}) {
        ProofOutcome out = check(trs, cfg, stats);
        if (out.verdict != Verdict::Maybe) return finish(out);
        if (cfg.expired()) return finish(maybe("auto", "timeout"));
    }
    {
        ProofOutcome out = check_cpcs(trs, cfg, 0, stats);
        if (out.verdict != Verdict::Maybe) return finish(out);
    }
    if (cfg.expired()) return finish(maybe("auto", "timeout"));
    {
        ProofOutcome out = check_hot_decreasing(trs, cfg, stats);
        if (out.verdict != Verdict::Maybe) return finish(out);
    }
    return finish(maybe("auto", "no criterion applied"));
}

// ---------------------------------------------------------------------------
// certificate replay

namespace {

std::set<std::string> id_set(const std::vector<std::string>& ids) {
    return std::set<std::string>(ids.begin(), ids.end());
}

bool replay_join(const PeakRef& peak, const JoinProof& join, const Trs& trs,
                 const std::set<std::string>* allowed) {
    return verify_steps(peak.left, join.meet, join.from_left, trs, allowed) &&
           verify_steps(peak.right, join.meet, join.from_right, trs, allowed);
}

// recomputed non-trivial peaks, keyed for lookup
std::vector<CriticalPeak> recompute_peaks(const Trs& trs) { return critical_peaks(trs, false); }

const CriticalPeak* find_peak(const std::vector<CriticalPeak>& peaks, const PeakRef& ref) {
    for (const CriticalPeak& p : peaks)
        if (peak_ref(p) == ref) return &p;
    return nullptr;
}

bool replay_hot_peak(const HotPeakProof& proof, const CriticalPeak& peak, const HotCert& cert,
                     const Trs& trs, const SearchConfig& cfg) {
    const std::set<std::string> sigma = id_set(cert.sigma);
    const bool overlay = peak.classification == CriticalPeak::Kind::Overlay;
    if (proof.mirrored && !overlay) return false;

    const Term& s = proof.mirrored ? peak.right : peak.left;
    const Term& t = proof.mirrored ? peak.left : peak.right;
    const std::string& left_rule = proof.mirrored ? peak.inner.rule.id : peak.outer.rule.id;
    const std::string& right_rule = proof.mirrored ? peak.outer.rule.id : peak.inner.rule.id;
    const bool left_in = sigma.count(left_rule) > 0;
    const bool right_in = sigma.count(right_rule) > 0;

    auto level_of = [&](const std::string& id) -> std::optional<unsigned> {
        auto it = cert.precedence.level.find(id);
        if (it == cert.precedence.level.end()) return std::nullopt;
        return it->second;
    };
    auto rules_bounded = [&](unsigned level, bool strict) {
        std::set<std::string> ids = sigma;
        for (const Rule& r : trs.rules()) {
            if (sigma.count(r.id)) continue;
            auto lv = level_of(r.id);
            if (!lv) continue;
            if (strict ? *lv < level : *lv <= level) ids.insert(r.id);
        }
        return ids;
    };

    switch (proof.shape) {
        case HotShape::SigmaJoin: {
            if (!left_in && !overlay) return false;  // valley shape needs overlay or sigma peak
            if (left_in && !right_in && !overlay) return false;
            return verify_steps(s, proof.meet, proof.steps, trs, &sigma) &&
                   verify_steps(t, proof.meet, proof.right_steps, trs, &sigma);
        }
        case HotShape::BelowThenDev: {
            if (left_in) return false;
            auto lv = level_of(left_rule);
            if (!lv) return false;
            const std::set<std::string> below = rules_bounded(*lv, true);
            const std::set<std::string> below_eq = rules_bounded(*lv, false);
            return verify_steps(s, proof.meet, proof.steps, trs, &below) &&
                   develops_to(t, proof.meet, rules_of(trs, below_eq));
        }
        case HotShape::SigmaThenDev: {
            if (left_in || overlay) return false;
            auto lv = level_of(left_rule);
            if (!lv) return false;
            const std::set<std::string> below_eq = rules_bounded(*lv, false);
            return verify_steps(s, proof.meet, proof.steps, trs, &sigma) &&
                   develops_to(t, proof.meet, rules_of(trs, below_eq));
        }
        case HotShape::SigmaReach: {
            if (!left_in || right_in || overlay) return false;
            return proof.meet == t && verify_steps(s, t, proof.steps, trs, &sigma);
        }
        case HotShape::GuardedSigmaJoin: {
            if (!left_in || right_in || overlay) return false;
            if (proof.guard.empty()) return false;
            return verify_steps(peak.source, t, proof.guard, trs, &sigma) &&
                   verify_steps(s, proof.meet, proof.steps, trs, &sigma) &&
                   verify_steps(t, proof.meet, proof.right_steps, trs, &sigma);
        }
        case HotShape::SigmaThenDevStrict: {
            if (!left_in || right_in || !overlay) return false;
            auto lv = level_of(right_rule);
            if (!lv) return false;
            const std::set<std::string> strict = rules_bounded(*lv, true);
            return verify_steps(s, proof.meet, proof.steps, trs, &sigma) &&
                   develops_to(t, proof.meet, rules_of(trs, strict));
        }
    }
    (void)cfg;
    return false;
}

bool replay_impl(const Certificate& cert, const Trs& trs, const SearchConfig& cfg);

bool replay_conv(const ConvProof& proof, const Trs& trs, const std::set<std::string>& sigma) {
    return verify_steps(proof.peak.left, proof.conversion.meet, proof.conversion.from_left, trs,
                        &sigma) &&
           verify_steps(proof.peak.right, proof.conversion.meet, proof.conversion.from_right,
                        trs, &sigma);
}

bool all_peaks_covered(const std::vector<CriticalPeak>& peaks,
                       const std::function<bool(const CriticalPeak&)>& covered) {
    for (const CriticalPeak& p : peaks)
        if (!covered(p)) return false;
    return true;
}

bool replay_impl(const Certificate& cert, const Trs& trs, const SearchConfig& cfg) {
    if (std::holds_alternative<OrthogonalCert>(cert.kind)) {
        return trs.empty() || (trs.left_linear() && recompute_peaks(trs).empty());
    }
    if (const auto* kb = std::get_if<KnuthBendixCert>(&cert.kind)) {
        if (!replay_termination(kb->termination, trs.rules(), trs.rules())) return false;
        const auto peaks = recompute_peaks(trs);
        return all_peaks_covered(peaks, [&](const CriticalPeak& p) {
            for (const auto& [ref, join] : kb->joins)
                if (ref == peak_ref(p)) return replay_join(ref, join, trs, nullptr);
            return false;
        });
    }
    if (const auto* sc = std::get_if<StronglyClosedCert>(&cert.kind)) {
        if (!trs.linear()) return false;
        const auto peaks = recompute_peaks(trs);
        return all_peaks_covered(peaks, [&](const CriticalPeak& p) {
            for (const ScPeakProof& proof : sc->peaks) {
                if (!(proof.peak == peak_ref(p))) continue;
                const Term u = proof.left_reduction.empty() ? p.left
                                                            : proof.left_reduction.back().to;
                if (!verify_steps(p.left, u, proof.left_reduction, trs, nullptr)) return false;
                if (proof.right_step) {
                    if (proof.right_step->from != p.right || proof.right_step->to != u)
                        return false;
                    if (!verify_one_step(*proof.right_step, trs)) return false;
                } else if (u != p.right) {
                    return false;
                }
                const Term v = proof.right_reduction.empty() ? p.right
                                                             : proof.right_reduction.back().to;
                if (!verify_steps(p.right, v, proof.right_reduction, trs, nullptr)) return false;
                if (proof.left_step) {
                    if (proof.left_step->from != p.left || proof.left_step->to != v) return false;
                    if (!verify_one_step(*proof.left_step, trs)) return false;
                } else if (v != p.left) {
                    return false;
                }
                return true;
            }
            return false;
        });
    }
    if (const auto* dc = std::get_if<DevClosedCert>(&cert.kind)) {
        (void)dc;
        if (!trs.left_linear()) return false;
        const auto peaks = recompute_peaks(trs);
        for (const CriticalPeak& p : peaks)
            if (!develops_to(p.right, p.left, trs.rules())) return false;
        return true;
    }
    if (const auto* hot = std::get_if<HotCert>(&cert.kind)) {
        if (!trs.left_linear()) return false;
        const std::set<std::string> sigma = id_set(hot->sigma);
        for (const auto& id : sigma)
            if (!trs.rule_by_id(id)) return false;
        if (!replay_termination(hot->sigma_termination, rules_of(trs, sigma),
                                rules_of(trs, sigma)))
            return false;
        for (const Rule& r : trs.rules())
            if (!sigma.count(r.id) && !hot->precedence.level.count(r.id)) return false;
        const auto peaks = recompute_peaks(trs);
        return all_peaks_covered(peaks, [&](const CriticalPeak& p) {
            for (const HotPeakProof& proof : hot->peaks)
                if (proof.peak == peak_ref(p)) return replay_hot_peak(proof, p, *hot, trs, cfg);
            return false;
        });
    }
    if (const auto* cpcs = std::get_if<CpcsCert>(&cert.kind)) {
        if (!trs.left_linear()) return false;
        const std::set<std::string> sigma = id_set(cpcs->sigma);
        for (const auto& id : sigma)
            if (!trs.rule_by_id(id)) return false;
        if (sigma == trs.rule_ids()) return false;  // nesting must shrink
        const Trs sub = trs.subsystem(sigma);
        std::vector<Rule> duplicating;
        for (const Rule& r : sub.rules())
            if (r.duplicating()) duplicating.push_back(r);
        if (cpcs->ars) {
            if (!trs.is_ars()) return false;
        } else if (!replay_termination(cpcs->relative_termination, duplicating, trs.rules())) {
            return false;
        }
        const auto peaks = recompute_peaks(trs);
        if (!all_peaks_covered(peaks, [&](const CriticalPeak& p) {
                for (const ConvProof& proof : cpcs->closes)
                    if (proof.peak == peak_ref(p)) return replay_conv(proof, trs, sigma);
                return false;
            }))
            return false;
        if (!cpcs->subsystem_proof) return false;
        return replay_impl(*cpcs->subsystem_proof, sub, cfg);
    }
    if (const auto* gsc = std::get_if<GscCert>(&cert.kind)) {
        if (!trs.left_linear()) return false;
        const std::set<std::string> sigma = id_set(gsc->sigma);
        for (const auto& id : sigma)
            if (!trs.rule_by_id(id)) return false;
        const Trs sub = trs.subsystem(sigma);
        if (!sub.linear()) return false;
        const auto peaks = recompute_peaks(trs);
        if (!all_peaks_covered(peaks, [&](const CriticalPeak& p) {
                for (const ConvProof& proof : gsc->closes)
                    if (proof.peak == peak_ref(p)) return replay_conv(proof, trs, sigma);
                return false;
            }))
            return false;
        return replay_impl(Certificate{gsc->strongly_closed}, sub, cfg);
    }
    return false;
}

}  // namespace

bool replay_certificate(const Certificate& cert, const Trs& trs, const SearchConfig& cfg) {
    try {
        return replay_impl(cert, trs, cfg);
    } catch (const Error&) {
        return false;
    }
}

bool verify_witness(const Witness& witness, const Trs& trs, const SearchConfig& cfg) {
    (void)cfg;
    try {
        const CriticalPeak& p = witness.peak;
        if (!trs.rule_by_id(p.outer.rule.id) || !trs.rule_by_id(p.inner.rule.id)) return false;
        if (apply(p.source, p.outer) != p.left || apply(p.source, p.inner) != p.right)
            return false;
        if (witness.nf_left == witness.nf_right) return false;
        if (!verify_steps(p.left, witness.nf_left, witness.steps_left, trs, nullptr))
            return false;
        if (!verify_steps(p.right, witness.nf_right, witness.steps_right, trs, nullptr))
            return false;
        return redexes(witness.nf_left, trs.rules()).empty() &&
               redexes(witness.nf_right, trs.rules()).empty();
    } catch (const Error&) {
        return false;
    }
}

std::string criterion_name(const Certificate& cert) {
    if (std::holds_alternative<OrthogonalCert>(cert.kind)) return "orthogonal";
    if (std::holds_alternative<KnuthBendixCert>(cert.kind)) return "kb";
    if (std::holds_alternative<StronglyClosedCert>(cert.kind)) return "sc";
    if (std::holds_alternative<DevClosedCert>(cert.kind)) return "dc";
    if (std::holds_alternative<HotCert>(cert.kind)) return "hot";
    if (const auto* cpcs = std::get_if<CpcsCert>(&cert.kind))
        return cpcs->ars ? "cpcs-ars" : "cpcs";
    return "gsc";
}

}  // namespace confl
