#pragma once

#include <memory>
#include <variant>

#include "confl/critical_pairs.hpp"
#include "confl/multipattern.hpp"
#include "confl/rewriting.hpp"
#include "confl/termination.hpp"

namespace confl {

/// Label of a step or multistep: the source term when only subsystem rules
/// are used, otherwise the multiset of precedence levels of the maximal
/// non-subsystem rules. Sets sit above all terms.
struct HotLabel {
    std::variant<Term, std::multiset<unsigned>> value;

    static HotLabel term(Term t) { return {std::move(t)}; }
    static HotLabel levels(std::multiset<unsigned> ls) { return {std::move(ls)}; }
    bool is_term() const { return std::holds_alternative<Term>(value); }

    bool operator==(const HotLabel& other) const = default;
};

/// Precedence on the rules outside the subsystem, as a level map.
struct Precedence {
    std::map<std::string, unsigned> level;

    bool operator==(const Precedence& other) const = default;
};

enum class HotCmp { Below, BelowOrEqual, NotBelow };

/// Compares labels: terms by bounded subsystem reachability, level sets by
/// the multiset order, and every term below every set.
HotCmp hot_less(const HotLabel& a, const HotLabel& b, const std::set<std::string>& sigma,
                const Precedence& prec, const Trs& trs, const SearchConfig& cfg);

/// Identifies a critical peak inside a certificate.
struct PeakRef {
    Term source;
    std::string outer_id;
    std::string inner_id;
    Position inner_pos;
    Term left;
    Term right;

    bool operator==(const PeakRef& other) const = default;
};

PeakRef peak_ref(const CriticalPeak& peak);

struct JoinProof {
    StepSeq from_left;
    StepSeq from_right;
    Term meet;
};

struct KnuthBendixCert {
    TerminationCertificate termination;
    std::vector<std::pair<PeakRef, JoinProof>> joins;
};

/// Evidence for one pair (s,t): s ->* u with u = t or t -> u, and
/// symmetrically t ->* v with v = s or s -> v.
struct ScPeakProof {
    PeakRef peak;
    StepSeq left_reduction;
    std::optional<TermStep> right_step;
    StepSeq right_reduction;
    std::optional<TermStep> left_step;
};

struct StronglyClosedCert {
    std::vector<ScPeakProof> peaks;
};

struct DevClosedCert {
    std::vector<PeakRef> peaks;
};

/// Shape of the conversion closing one peak under the hot labelling.
enum class HotShape {
    SigmaJoin,           // valley inside the subsystem
    BelowThenDev,        // steps strictly below the outer label, then a development
    SigmaThenDev,        // subsystem steps, then a development below-or-equal
    SigmaReach,          // left ->* right inside the subsystem
    GuardedSigmaJoin,    // subsystem valley, guarded by source ->+ right in the subsystem
    SigmaThenDevStrict,  // subsystem steps, then a development strictly below the inner label
};

struct HotPeakProof {
    PeakRef peak;
    bool mirrored = false;  // evidence closes the swapped orientation (overlays only)
    HotShape shape = HotShape::SigmaJoin;
    StepSeq steps;       // forward steps from the left term
    StepSeq right_steps; // join evidence from the right term (valley shapes)
    StepSeq guard;       // GuardedSigmaJoin: source ->+ right inside the subsystem
    Term meet;
    std::vector<std::string> dev_rules;  // rule set of the closing development
};

struct HotCert {
    std::vector<std::string> sigma;
    TerminationCertificate sigma_termination;
    Precedence precedence;
    std::vector<HotPeakProof> peaks;
};

struct ConvProof {
    PeakRef peak;
    ConversionEvidence conversion;
};

struct Certificate;

struct CpcsCert {
    std::vector<std::string> sigma;
    TerminationCertificate relative_termination;  // duplicating part of sigma modulo all rules
    std::vector<ConvProof> closes;
    std::shared_ptr<Certificate> subsystem_proof;
    bool ars = false;
};

struct GscCert {
    std::vector<std::string> sigma;
    std::vector<ConvProof> closes;
    StronglyClosedCert strongly_closed;  // for the subsystem
};

/// No rules, or left-linear with only trivial critical peaks.
struct OrthogonalCert {};

struct Certificate {
    std::variant<OrthogonalCert, KnuthBendixCert, StronglyClosedCert, DevClosedCert, HotCert,
                 CpcsCert, GscCert>
        kind;
};

enum class Verdict { Yes, No, Maybe };

struct RunStats {
    std::size_t peaks_examined = 0;
    std::size_t subsystems_tried = 0;
    double elapsed_seconds = 0.0;
};

struct ProofOutcome {
    Verdict verdict = Verdict::Maybe;
    std::string criterion;
    std::optional<Certificate> certificate;
    std::optional<Witness> witness;
    std::string reason;

    bool yes() const { return verdict == Verdict::Yes; }
};

ProofOutcome check_knuth_bendix(const Trs& trs, const SearchConfig& cfg,
                                RunStats* stats = nullptr);
ProofOutcome check_strongly_closed(const Trs& trs, const SearchConfig& cfg,
                                   RunStats* stats = nullptr);
ProofOutcome check_development_closed(const Trs& trs, const SearchConfig& cfg,
                                      RunStats* stats = nullptr);
ProofOutcome check_hot_decreasing(const Trs& trs, const SearchConfig& cfg,
                                  RunStats* stats = nullptr);
ProofOutcome check_cpcs(const Trs& trs, const SearchConfig& cfg, std::size_t depth = 0,
                        RunStats* stats = nullptr);
/// check_cpcs without the relative-termination obligation; all symbols must be
/// nullary.
ProofOutcome check_ars_cpcs(const Trs& trs, const SearchConfig& cfg, RunStats* stats = nullptr);
ProofOutcome check_gsc(const Trs& trs, const SearchConfig& cfg, RunStats* stats = nullptr);

/// Runs, in order: non-confluence witness, orthogonality, kb, dc, sc, gsc,
/// cpcs, hot. First conclusive answer wins.
ProofOutcome prove(const Trs& trs, const SearchConfig& cfg, RunStats* stats = nullptr);

/// Re-verifies every piece of evidence in the certificate against the TRS.
bool replay_certificate(const Certificate& cert, const Trs& trs, const SearchConfig& cfg);
bool verify_witness(const Witness& witness, const Trs& trs, const SearchConfig& cfg);

std::string criterion_name(const Certificate& cert);

}  // namespace confl
