#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "confl/trs.hpp"

namespace confl {

/// [f](x1..xn) = c0 + c1*x1 + ... + cn*xn over the naturals. Argument
/// coefficients are kept >= 1 so strict decreases propagate through contexts.
struct LinearPolyInterpretation {
    /// symbol -> (c0, c1, ..., cn)
    std::map<std::string, std::vector<unsigned>> coefficients;

    bool operator==(const LinearPolyInterpretation&) const = default;
};

/// Linear form over rule variables with natural coefficients.
struct LinearForm {
    unsigned constant = 0;
    std::map<std::string, unsigned> coeff;
};

LinearForm evaluate(const LinearPolyInterpretation& interp, const Term& t);
/// l >= r for every natural assignment (coefficientwise comparison).
bool weakly_greater(const LinearForm& l, const LinearForm& r);
/// l > r for every natural assignment.
bool strictly_greater(const LinearForm& l, const LinearForm& r);

struct PolyRemovalStep {
    LinearPolyInterpretation interpretation;
    std::vector<std::string> removed_ids;
};

struct VacuousCert {
    bool operator==(const VacuousCert&) const = default;
};
struct PolyRemovalCert {
    std::vector<PolyRemovalStep> steps;
};
struct LpoCert {
    /// Precedence, greatest symbol first.
    std::vector<std::string> precedence;
};

/// Replayable termination evidence: checking it re-verifies every inequality.
struct TerminationCertificate {
    std::variant<VacuousCert, PolyRemovalCert, LpoCert> method;

    bool is_vacuous() const { return std::holds_alternative<VacuousCert>(method); }
};

struct TerminationLimits {
    unsigned max_arg_coeff = 2;    // argument coefficients in 1..max_arg_coeff
    unsigned max_const_coeff = 3;  // constants in 0..max_const_coeff
    std::size_t max_lpo_symbols = 8;
    std::size_t max_interpretations = 200000;
};

/// Relative termination of d modulo r (d subset of r): no infinite r-reduction
/// contains infinitely many d-steps. Iterated rule removal by bounded linear
/// interpretations; absence means unknown.
std::optional<TerminationCertificate> relatively_terminating(
    const std::vector<Rule>& d, const std::vector<Rule>& r,
    const TerminationLimits& limits = {});

/// Termination of the rule set: poly removal, then LPO over enumerated total
/// precedences.
std::optional<TerminationCertificate> terminating(const std::vector<Rule>& rules,
                                                  const TerminationLimits& limits = {});

/// s >_lpo t for the given total precedence (greatest first).
bool lpo_greater(const std::vector<std::string>& precedence, const Term& s, const Term& t);

/// Re-verifies every inequality the certificate claims for (d, r).
bool replay_termination(const TerminationCertificate& cert, const std::vector<Rule>& d,
                        const std::vector<Rule>& r);

std::string to_string(const TerminationCertificate& cert);

}  // namespace confl
