#pragma once

#include <vector>

#include "plaus/entail.hpp"
#include "plaus/kb.hpp"
#include "plaus/rational.hpp"

namespace plaus {

enum class ForcingStatus { ForcedCorrect, ForcedIncorrect, Undetermined };

const char* to_string(ForcingStatus s);

// Per-observation forcing statuses of a hypothesis, plus the tally the
// signed measure is read off of: n_plus + n_minus + n_zero == |C|.
struct ForcingReport {
    std::vector<std::pair<int, ForcingStatus>> entries;  // observation order
    int n_plus = 0;
    int n_minus = 0;
    int n_zero = 0;

    int size() const { return int(entries.size()); }
    bool all_correct() const { return n_plus == size(); }
    ForcingStatus status_of(int atom) const;
    bool determined(int atom) const { return status_of(atom) != ForcingStatus::Undetermined; }

    // (n_plus - n_minus) / |C|, exact.
    Rational value() const { return Rational(n_plus - n_minus, size()); }
};

// Entailment-based forcing: an observation is ForcedCorrect when T + A
// entails it at its observed polarity, ForcedIncorrect when T + A entails
// the opposite, Undetermined when free. Throws SemanticError when C is
// empty or T + A has no model.
ForcingReport forcing_report(const KnowledgeBundle& bundle, const Formula& hypothesis);

// Unit-propagation fast path for a single positive hypothesis atom. Exact
// on definite Horn rule bases; elsewhere it may under-determine.
ForcingReport forcing_report_unit_prop(const KnowledgeBundle& bundle, int hypothesis_atom);

// The signed measure in [-1, 1]: fraction forced correct minus fraction
// forced incorrect.
Rational plausibility(const KnowledgeBundle& bundle, const Formula& hypothesis);

struct NegationCheck {
    Rational pl;
    Rational pl_negated;
    bool axiom_holds = false;  // pl_negated == -pl, checked exactly
};

NegationCheck negation_check(const KnowledgeBundle& bundle, const Formula& hypothesis);

enum class CombinationRegime { Disjoint, SharedConsequence, JointEffect, Mixed };

const char* to_string(CombinationRegime r);

// Additive prediction vs measured value for a combined hypothesis. The
// prediction is never substituted for measurement; both are reported.
struct CombinationAnalysis {
    Rational pl_lhs;
    Rational pl_rhs;
    Rational predicted_raw;  // pl_lhs + pl_rhs, unclamped
    Rational predicted;      // clamped to [-1, 1]
    Rational measured;
    CombinationRegime regime = CombinationRegime::Disjoint;
    bool divergent = false;  // measured != predicted

    ForcingReport report_lhs;
    ForcingReport report_rhs;
    ForcingReport report_combined;
};

// predicted = pl(A_i) + pl(A_j); measured = pl(A_i AND A_j).
CombinationAnalysis conjunction_analysis(const KnowledgeBundle& bundle, const Formula& lhs,
                                         const Formula& rhs);

// predicted = pl(A_i) + pl(A_j); measured = pl(A_i OR A_j).
CombinationAnalysis disjunction_analysis(const KnowledgeBundle& bundle, const Formula& lhs,
                                         const Formula& rhs);

struct ImplicationPrediction {
    Rational pl_lhs;
    Rational pl_rhs;
    Rational predicted_raw;  // pl_rhs - pl_lhs, unclamped
    Rational predicted;      // clamped
    Rational measured;       // pl(A_i -> A_j)
    bool divergent = false;
};

// predicted = pl(A_j) - pl(A_i); measured = pl(A_i IMPLIES A_j).
ImplicationPrediction implication_prediction(const KnowledgeBundle& bundle, const Formula& lhs,
                                             const Formula& rhs);

}  // namespace plaus
