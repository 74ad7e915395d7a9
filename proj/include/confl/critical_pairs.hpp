#pragma once

#include <set>
#include <string>
#include <vector>

#include "confl/trs.hpp"

namespace confl {

/// A critical overlap: the inner rule's lhs unifies with a non-variable
/// subterm of the outer rule's lhs (rules renamed apart). The outer step is
/// always at the root.
struct CriticalPeak {
    enum class Kind { Overlay, OuterInner };

    Term source;
    RedexOccurrence outer;  // at the root
    RedexOccurrence inner;  // at a non-variable position of the outer lhs
    Term left;              // result of the outer step
    Term right;             // result of the inner step
    Kind classification = Kind::Overlay;
    bool trivial = false;   // left == right

    bool operator==(const CriticalPeak& other) const = default;
};

/// All critical peaks of the TRS, for every ordered pair of rules (so
/// symmetric overlay pairs appear in both orientations) and every non-variable
/// position of the outer lhs, including self-overlaps. Trivial peaks are kept
/// only when include_trivial is set. Deterministic order: outer rule, inner
/// rule, position.
std::vector<CriticalPeak> critical_peaks(const Trs& trs, bool include_trivial = false);

/// Critical peaks of the sub-TRS induced by the given rule ids.
std::vector<CriticalPeak> peaks_within(const Trs& trs, const std::set<std::string>& ids,
                                       bool include_trivial = false);

/// Number of non-trivial peaks counting a peak and its mirrored pair once.
std::size_t peak_count_up_to_symmetry(const std::vector<CriticalPeak>& peaks);

std::string to_string(const CriticalPeak& peak);

}  // namespace confl
