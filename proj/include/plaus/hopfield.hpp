#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "plaus/kb.hpp"
#include "plaus/rational.hpp"

namespace plaus {

// Bipolar neuron states; +1 means true. Bijective with assignment words.
struct SpinState {
    std::vector<std::int8_t> spins;  // each -1 or +1

    static SpinState from_word(Word w, int atom_count);
    Word to_word() const;
    int size() const { return int(spins.size()); }

    friend bool operator==(const SpinState&, const SpinState&) = default;
};

// Energy polynomial E(S) = offset - sum w_i S_i - sum_{i<j} w_ij S_i S_j
// - sum_{i<j<k} w_ijk S_i S_j S_k. Index tuples are strictly increasing;
// there are no self-couplings. Weight sets wired from clauses have dyadic
// entries; Hebbian sets carry denominators equal to the state count.
struct WeightSet {
    int atom_count = 0;
    std::vector<Rational> bias;                      // w_i, dense
    std::map<std::array<int, 2>, Rational> pairs;    // w_ij, i<j
    std::map<std::array<int, 3>, Rational> triples;  // w_ijk, i<j<k
    Rational offset;                                 // E0

    const Rational* pair(int i, int j) const;
    const Rational* triple(int i, int j, int k) const;
};

inline constexpr int kMaxClauseWidth = 3;

// Expands each clause's violation indicator into the multilinear
// polynomial and accumulates coefficients, so that for every state the
// energy equals the number of unsatisfied clauses. Clauses wider than
// three literals are rejected; tautologies contribute nothing.
WeightSet wire_clauses(const std::vector<Clause>& rules, int atom_count);

Rational energy(const WeightSet& weights, const SpinState& state);

// Independent oracle for the energy identity: literally counts falsified
// clauses.
int unsat_count(const std::vector<Clause>& rules, const SpinState& state);

// h_i such that flipping S_i to sign(h_i) never raises the energy.
Rational local_field(const WeightSet& weights, const SpinState& state, int i);

enum class Clamp : std::uint8_t { Free, True, False };

using ClampMask = std::vector<Clamp>;

ClampMask free_mask(int atom_count);

struct DynamicsConfig {
    std::uint64_t seed = 0;
    int restarts = 32;
    int max_sweeps = 100;
};

// Sweep trace hook: (restart, sweep, flips, energy after the sweep).
using TraceSink = std::function<void(int, int, int, const Rational&)>;

struct RelaxResult {
    SpinState state;
    Rational energy;
    bool converged = false;  // a full sweep ran with no flips
    int sweeps = 0;
};

// Asynchronous descent under a fixed seed-derived update order. Free
// neurons move to sign(h_i); ties keep the current spin, so the energy
// never increases. Clamped neurons are never touched.
RelaxResult relax(const WeightSet& weights, const ClampMask& clamp, const DynamicsConfig& config,
                  SpinState initial, int restart_index = 0, const TraceSink* trace = nullptr);

struct MinimizeResult {
    SpinState state;
    Rational energy;
    int restarts_used = 0;  // 1-based index of the restart that found the result
    bool converged = false;
};

// Best result over seed-derived random restarts. Restarts are independent,
// so the parallel kernel reduces with (energy, state word, restart index)
// minima and returns the same answer as the serial reference for any
// thread count.
MinimizeResult minimize(const WeightSet& weights, const ClampMask& clamp,
                        const DynamicsConfig& config, const TraceSink* trace = nullptr);

MinimizeResult minimize_reference(const WeightSet& weights, const ClampMask& clamp,
                                  const DynamicsConfig& config);

struct ExhaustiveMin {
    Rational energy;
    Word state = 0;  // lexicographically smallest argmin
};

// Ground truth for minimize: sweeps every clamp-consistent state. OpenMP
// kernel plus a serial reference for tests.
ExhaustiveMin exhaustive_min_energy(const WeightSet& weights, const ClampMask& clamp);
ExhaustiveMin exhaustive_min_energy_reference(const WeightSet& weights, const ClampMask& clamp);

struct PlausibilityEstimate {
    Rational u_star;   // minimal unsatisfied-clause energy under the clamp
    Rational pl_hat;   // (|C| - 2 U*) / |C|, clamped to [-1, 1]
    bool converged = false;
    int restarts_used = 0;
};

// The network estimator: clamp observations and hypothesis literals, relax
// the rest, read the plausibility off the residual energy. The hypothesis
// must be a conjunction of literals and must not contradict an observation
// clamp.
PlausibilityEstimate estimate_plausibility(const KnowledgeBundle& bundle,
                                           const Formula& hypothesis,
                                           const DynamicsConfig& config,
                                           const TraceSink* trace = nullptr);

// Weights as empirical spin-product means over the given states; E0 = 0.
WeightSet hebbian_learn(const std::vector<SpinState>& states);

// Recovers two-literal clauses from learned weights: every pair with
// |w_ij| >= tau is matched against the four clause templates by least
// squared deviation of (w_i, w_j, w_ij) from the wired pattern, and a
// candidate survives only if re-wiring reproduces the learned pair sign.
std::vector<Clause> extract_clauses(const WeightSet& learned, const Rational& tau);

}  // namespace plaus
