#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "plaus/kb.hpp"
#include "plaus/rational.hpp"

namespace plaus {

// Finite distribution over total assignments of its own atom table.
// Weights are exact non-negative rationals summing to 1.
struct FiniteDistribution {
    AtomTable atoms;
    std::vector<std::pair<Word, Rational>> worlds;  // increasing word order

    void validate() const;  // throws SemanticError on a broken invariant
};

// Parses the .dist format: lines `world: a=1 b=0 weight: p/q .`
FiniteDistribution parse_dist(std::string_view text);

// P(event) under dist. The event formula is expressed over `event_atoms`;
// its atoms are resolved by name against the distribution's table and an
// unknown name raises SemanticError.
Rational probability(const FiniteDistribution& dist, const Formula& event,
                     const AtomTable& event_atoms);

// P(theta | x) = P(theta AND x) / P(x). Also evaluates the Bayes
// decomposition P(x|theta) P(theta) / P(x) when defined and checks the two
// routes agree exactly. Throws SemanticError when P(x) = 0.
Rational conditional(const FiniteDistribution& dist, const Formula& theta, const Formula& x,
                     const AtomTable& event_atoms);

// |P(theta|x) - P(x|theta)|; zero exactly when the marginals agree.
Rational biconditionality_gap(const FiniteDistribution& dist, const Formula& theta,
                              const Formula& x, const AtomTable& event_atoms);

// Possibility degrees per literal. Both polarities of an atom carry
// independent degrees; the measure is not self-dual.
struct PossibilityProfile {
    AtomTable atoms;
    std::map<std::pair<int, bool>, Rational> degrees;  // (atom, polarity) -> [0,1]

    void set(int atom, bool polarity, const Rational& degree);
    const Rational& degree(int atom, bool polarity) const;
};

struct PossibilityValue {
    Rational degree;
    bool upper_bound_only = false;  // set when any conjunction was folded with min
};

// Disjunction folds with max (exact); conjunction folds with min and marks
// the result as an upper bound. The formula must be negation-normal over
// literals with declared degrees.
PossibilityValue possibility_of(const PossibilityProfile& profile, const Formula& formula,
                                const AtomTable& formula_atoms);

// ---------------------------------------------------------------------------
// Dempster-Shafer theory over an abstract frame of labeled outcomes.

struct Frame {
    std::vector<std::string> labels;

    int size() const { return int(labels.size()); }
    Word full_set() const { return (Word{1} << labels.size()) - 1; }
    int find(std::string_view label) const;
    std::string set_to_string(Word set) const;

    friend bool operator==(const Frame&, const Frame&) = default;
};

// Focal sets are non-empty subsets of the frame, encoded as bitmasks.
struct MassFunction {
    Frame frame;
    std::vector<std::pair<Word, Rational>> masses;  // sorted by set, each in (0,1]

    void validate() const;
    const Rational* mass_of(Word set) const;
};

// Parses the .mass format: `frame: a b c .` then `mass: {a,b} = p/q .`
MassFunction parse_mass(std::string_view text);

// Sum of masses of focal sets contained in X.
Rational ds_belief(const MassFunction& m, Word x);

// Sum of masses of focal sets intersecting X; pl(X) = 1 - bel(~X) exactly.
Rational ds_plausibility(const MassFunction& m, Word x);

struct CombineResult {
    MassFunction combined;
    Rational conflict;  // K
};

// Dempster's rule. Throws SemanticError on frame mismatch or total
// conflict (K = 1).
CombineResult ds_combine(const MassFunction& a, const MassFunction& b);

struct BoundCheckReport {
    int samples = 0;
    int events_checked = 0;
    int violations = 0;
};

// Draws `samples` probability measures compatible with m (every focal mass
// split among its elements, split fractions seeded deterministically) and
// checks bel(X) <= P(X) <= pl(X) on all events X. The bounds theorem makes
// violations impossible; the report exists to say so.
BoundCheckReport ds_bound_check(const MassFunction& m, int samples, std::uint64_t seed);

}  // namespace plaus
