#include "plaus/plausibility.hpp"

#include <algorithm>

namespace plaus {

const char* to_string(ForcingStatus s) {
    switch (s) {
        case ForcingStatus::ForcedCorrect: return "forced_correct";
        case ForcingStatus::ForcedIncorrect: return "forced_incorrect";
        case ForcingStatus::Undetermined: return "undetermined";
    }
    return "?";
}

const char* to_string(CombinationRegime r) {
    switch (r) {
        case CombinationRegime::Disjoint: return "disjoint";
        case CombinationRegime::SharedConsequence: return "shared_consequence";
        case CombinationRegime::JointEffect: return "joint_effect";
        case CombinationRegime::Mixed: return "mixed";
    }
    return "?";
}

ForcingStatus ForcingReport::status_of(int atom) const {
    for (const auto& [a, s] : entries)
        if (a == atom) return s;
    throw InternalError("forcing status queried for a non-observation atom");
}

namespace {

ForcingReport report_from_scan(const KnowledgeBundle& bundle, const StatusScan& scan) {
    if (bundle.observations.empty())
        throw SemanticError("the observation set is empty; the measure is undefined");
    if (!scan.consistent)
        throw SemanticError("the rule base together with the hypothesis has no model");

    ForcingReport report;
    for (const auto& [atom, observed] : bundle.observations.entries) {
        Status s = scan.status_of(atom);
        ForcingStatus fs;
        if (s == Status::Free) {
            fs = ForcingStatus::Undetermined;
            ++report.n_zero;
        } else if ((s == Status::ForcedTrue) == observed) {
            fs = ForcingStatus::ForcedCorrect;
            ++report.n_plus;
        } else {
            fs = ForcingStatus::ForcedIncorrect;
            ++report.n_minus;
        }
        report.entries.emplace_back(atom, fs);
    }
    return report;
}

}  // namespace

ForcingReport forcing_report(const KnowledgeBundle& bundle, const Formula& hypothesis) {
    StatusScan scan = status_scan(bundle.rules, bundle.atoms.size(), &hypothesis);
    return report_from_scan(bundle, scan);
}

ForcingReport forcing_report_unit_prop(const KnowledgeBundle& bundle, int hypothesis_atom) {
    PartialAssignment start(bundle.atoms.size());
    start.set(hypothesis_atom, true);
    PropagationResult prop = unit_propagate(bundle.rules, start);
    if (prop.conflict)
        throw SemanticError("unit propagation derived an empty clause under the hypothesis");

    StatusScan scan;
    scan.consistent = true;
    for (int a = 0; a < bundle.atoms.size(); ++a) {
        if (!prop.assignment.assigned(a)) continue;
        Word bit = Word{1} << a;
        (prop.assignment.value(a) ? scan.forced_true : scan.forced_false) |= bit;
    }
    return report_from_scan(bundle, scan);
}

Rational plausibility(const KnowledgeBundle& bundle, const Formula& hypothesis) {
    return forcing_report(bundle, hypothesis).value();
}

NegationCheck negation_check(const KnowledgeBundle& bundle, const Formula& hypothesis) {
    NegationCheck out;
    out.pl = plausibility(bundle, hypothesis);
    out.pl_negated = plausibility(bundle, Formula::negation(hypothesis));
    out.axiom_holds = (out.pl_negated == -out.pl);
    return out;
}

namespace {

const Rational kOne{1};
const Rational kMinusOne{-1};

CombinationRegime classify(const ForcingReport& lhs, const ForcingReport& rhs,
                           const ForcingReport& combined) {
    bool shared = false;
    bool joint = false;
    for (const auto& [atom, status] : combined.entries) {
        bool in_lhs = lhs.determined(atom);
        bool in_rhs = rhs.determined(atom);
        if (in_lhs && in_rhs) shared = true;
        if (status != ForcingStatus::Undetermined && !in_lhs && !in_rhs) joint = true;
    }
    if (shared && joint) return CombinationRegime::Mixed;
    if (shared) return CombinationRegime::SharedConsequence;
    if (joint) return CombinationRegime::JointEffect;
    return CombinationRegime::Disjoint;
}

CombinationAnalysis analyze(const KnowledgeBundle& bundle, const Formula& lhs,
                            const Formula& rhs, const Formula& combined) {
    CombinationAnalysis out;
    out.report_combined = forcing_report(bundle, combined);
    out.report_lhs = forcing_report(bundle, lhs);
    out.report_rhs = forcing_report(bundle, rhs);
    out.pl_lhs = out.report_lhs.value();
    out.pl_rhs = out.report_rhs.value();
    out.predicted_raw = out.pl_lhs + out.pl_rhs;
    out.predicted = out.predicted_raw.clamped(kMinusOne, kOne);
    out.measured = out.report_combined.value();
    out.regime = classify(out.report_lhs, out.report_rhs, out.report_combined);
    out.divergent = !(out.measured == out.predicted);
    return out;
}

}  // namespace

CombinationAnalysis conjunction_analysis(const KnowledgeBundle& bundle, const Formula& lhs,
                                         const Formula& rhs) {
    return analyze(bundle, lhs, rhs, Formula::conjunction(lhs, rhs));
}

CombinationAnalysis disjunction_analysis(const KnowledgeBundle& bundle, const Formula& lhs,
                                         const Formula& rhs) {
    return analyze(bundle, lhs, rhs, Formula::disjunction(lhs, rhs));
}

ImplicationPrediction implication_prediction(const KnowledgeBundle& bundle, const Formula& lhs,
                                             const Formula& rhs) {
    ImplicationPrediction out;
    out.measured = plausibility(bundle, Formula::implication(lhs, rhs));
    out.pl_lhs = plausibility(bundle, lhs);
    out.pl_rhs = plausibility(bundle, rhs);
    out.predicted_raw = out.pl_rhs - out.pl_lhs;
    out.predicted = out.predicted_raw.clamped(kMinusOne, kOne);
    out.divergent = !(out.measured == out.predicted);
    return out;
}

}  // namespace plaus
