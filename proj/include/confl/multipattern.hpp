#pragma once

#include <set>
#include <vector>

#include "confl/trs.hpp"

namespace confl {

/// Nonempty, convex set of non-variable positions of some base term.
using PatternSet = std::set<Position>;

/// A term together with pairwise-disjoint convex sets of non-variable
/// positions. Ordered by refinement; a finite distributive lattice for each
/// fixed base.
class Multipattern {
  public:
    /// Validates every invariant; patterns are stored sorted by their minimal
    /// position.
    Multipattern(Term base, std::vector<PatternSet> patterns);

    const Term& base() const { return base_; }
    const std::vector<PatternSet>& patterns() const { return patterns_; }
    bool is_bottom() const { return patterns_.empty(); }

    bool operator==(const Multipattern& other) const = default;

  private:
    Term base_;
    std::vector<PatternSet> patterns_;
};

Multipattern bottom(const Term& base);
/// Single pattern holding every non-variable position; base must not be a
/// variable.
Multipattern top(const Term& base);

/// Every pattern of a is contained in some pattern of b.
bool refines(const Multipattern& a, const Multipattern& b);
/// Pairwise intersections of overlapping patterns.
Multipattern meet(const Multipattern& a, const Multipattern& b);
/// Unions of the connected components of the overlap relation on a's and b's
/// patterns.
Multipattern join(const Multipattern& a, const Multipattern& b);

/// Componentwise sum over patterns of the measure of the pattern read as a
/// term with fresh, pairwise distinct variables at its fringe.
SizeMeasure pattern_size(const Multipattern& m);
/// Measure of the base with each pattern collapsed to a single fresh node
/// whose children are the fringe subtrees.
SizeMeasure body_size(const Multipattern& m);

/// A set of redexes of a common base term whose patterns are pairwise
/// disjoint; contracting them all is a single multistep.
class Multistep {
  public:
    Multistep(Term base, std::vector<RedexOccurrence> redexes);

    const Term& base() const { return base_; }
    const std::vector<RedexOccurrence>& redexes() const { return redexes_; }
    bool empty() const { return redexes_.empty(); }

    bool operator==(const Multistep& other) const = default;

  private:
    Term base_;
    std::vector<RedexOccurrence> redexes_;
};

/// Positions covered by one redex: the non-variable positions of its rule's
/// lhs shifted to the occurrence.
PatternSet redex_pattern(const RedexOccurrence& occ);

Multipattern pattern_of(const Multistep& ms);

SizeMeasure overlap_amount(const Multistep& a, const Multistep& b);
SizeMeasure nonoverlap_amount(const Multistep& a, const Multistep& b);
bool overlapping(const Multistep& a, const Multistep& b);

/// The complete development: contract all redexes, innermost first. The
/// result is order-independent because the patterns are disjoint.
Term develop(const Multistep& ms);

/// Union of the two (non-overlapping) redex sets as one multistep.
Multistep join_multisteps(const Multistep& a, const Multistep& b);

/// What remains of phi after performing psi: phi's redexes traced to their
/// descendants in develop(psi). Redexes nested below a variable of a psi-redex
/// are replicated once per occurrence of that variable in the rhs (erased when
/// the variable is erased). Requires non-overlapping multisteps on one base.
Multistep residual(const Multistep& phi, const Multistep& psi);

/// All multisteps of t over the rules with at most max_redexes redexes
/// (including the empty one).
std::vector<Multistep> enumerate_multisteps(const Term& t, const std::vector<Rule>& rules,
                                            std::size_t max_redexes);

}  // namespace confl
