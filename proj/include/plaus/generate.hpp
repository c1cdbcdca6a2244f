#pragma once

#include "plaus/baseline.hpp"
#include "plaus/hopfield.hpp"
#include "plaus/kb.hpp"
#include "plaus/rng.hpp"

namespace plaus::gen {

// Seeded generators behind the property suites and the acceptance runs.
// Everything here is deterministic in the Rng argument alone.

struct BundleParams {
    int min_atoms = 2;
    int max_atoms = 12;
    int max_rules = 10;
    int max_clause_width = 3;
    int max_observations = 6;
    // When set, regenerate until no observation is already decided by the
    // rule base alone (hypotheses then measure marginal forcing, and the
    // irrelevance-zero law is a theorem).
    bool undetermined_observations = true;
};

KnowledgeBundle bundle(Rng& rng, const BundleParams& params);

Clause clause(Rng& rng, int atom_count, int min_width, int max_width);

// Random formula tree over the bundle's atoms, depth-bounded.
Formula formula(Rng& rng, int atom_count, int max_depth);

// Conjunction of 1..max_literals literals over distinct atoms.
Formula literal_conjunction(Rng& rng, int atom_count, int max_literals);

// Definite Horn rules: every clause one positive head, 1..max_body
// negative body atoms.
std::vector<Clause> definite_horn(Rng& rng, int atom_count, int max_rules, int max_body);

// Two-hypothesis scenario for the combination analyses: observation atoms
// wired to hypothesis atoms through individual, shared and joint motifs.
struct PairScenario {
    KnowledgeBundle bundle;
    Formula lhs;
    Formula rhs;
};

PairScenario pair_scenario(Rng& rng);

// Observation atoms tied to hypothesis literals by clause pairs encoding
// equivalence; the estimator is exact on these by construction.
struct HypothesisCase {
    KnowledgeBundle bundle;
    Formula hypothesis;
};

HypothesisCase biconditional_case(Rng& rng);

// General estimator case: random rules, observations and a clampable
// hypothesis, filtered to consistent combinations.
HypothesisCase estimator_case(Rng& rng);

// Random weight set plus clamp with at most `max_free` free atoms, for
// minimizer-vs-oracle comparisons.
struct ClampedInstance {
    std::vector<Clause> rules;
    int atom_count = 0;
    ClampMask clamp;
};

ClampedInstance clamped_instance(Rng& rng, int max_free);

// Two-literal Horn programs with distinct heads (at most one defining
// clause per atom), the family the Hebbian recovery demonstration runs on.
std::vector<Clause> two_literal_horn(Rng& rng, int atom_count);

MassFunction mass_function(Rng& rng, int max_frame);

FiniteDistribution distribution(Rng& rng, int max_atoms);

}  // namespace plaus::gen
