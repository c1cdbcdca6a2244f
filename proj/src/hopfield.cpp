#include "plaus/hopfield.hpp"

#include <algorithm>
#include <numeric>

#include "plaus/rng.hpp"
#include "plaus/scan.hpp"

namespace plaus {

SpinState SpinState::from_word(Word w, int atom_count) {
    SpinState s;
    s.spins.resize(size_t(atom_count));
    for (int i = 0; i < atom_count; ++i) s.spins[size_t(i)] = ((w >> i) & 1u) ? 1 : -1;
    return s;
}

Word SpinState::to_word() const {
    Word w = 0;
    for (size_t i = 0; i < spins.size(); ++i)
        if (spins[i] > 0) w |= Word{1} << i;
    return w;
}

const Rational* WeightSet::pair(int i, int j) const {
    auto it = pairs.find({std::min(i, j), std::max(i, j)});
    return it == pairs.end() ? nullptr : &it->second;
}

const Rational* WeightSet::triple(int i, int j, int k) const {
    std::array<int, 3> key{i, j, k};
    std::sort(key.begin(), key.end());
    auto it = triples.find(key);
    return it == triples.end() ? nullptr : &it->second;
}

ClampMask free_mask(int atom_count) { return ClampMask(size_t(atom_count), Clamp::Free); }

// ---------------------------------------------------------------------------
// Wiring

WeightSet wire_clauses(const std::vector<Clause>& rules, int atom_count) {
    WeightSet w;
    w.atom_count = atom_count;
    w.bias.assign(size_t(atom_count), Rational(0));

    for (const Clause& clause : rules) {
        if (clause.width() > kMaxClauseWidth)
            throw SemanticError("clause of width " + std::to_string(clause.width()) +
                                " cannot be wired (limit " + std::to_string(kMaxClauseWidth) +
                                ")");
        if (clause.tautological()) continue;  // identically satisfied, contributes nothing

        // Violation indicator: prod over literals of (1 - p_l S_l) / 2,
        // p = +1 for a positive literal. Expand over literal subsets.
        const int width = clause.width();
        const Rational unit(1, std::int64_t(1) << width);
        for (int subset = 0; subset < (1 << width); ++subset) {
            Rational coeff = unit;
            std::vector<int> atoms;
            for (int b = 0; b < width; ++b) {
                if (((subset >> b) & 1) == 0) continue;
                const Literal& l = clause.literals[size_t(b)];
                coeff *= Rational(l.positive ? -1 : 1);
                atoms.push_back(l.atom);
            }
            // E carries the indicator sum directly: E0 takes the constant,
            // weights take the negated monomial coefficients.
            switch (atoms.size()) {
                case 0: w.offset += coeff; break;
                case 1: w.bias[size_t(atoms[0])] -= coeff; break;
                case 2: {
                    std::array<int, 2> key{atoms[0], atoms[1]};
                    std::sort(key.begin(), key.end());
                    w.pairs[key] -= coeff;
                    break;
                }
                default: {
                    std::array<int, 3> key{atoms[0], atoms[1], atoms[2]};
                    std::sort(key.begin(), key.end());
                    w.triples[key] -= coeff;
                    break;
                }
            }
        }
    }

    std::erase_if(w.pairs, [](const auto& kv) { return kv.second.is_zero(); });
    std::erase_if(w.triples, [](const auto& kv) { return kv.second.is_zero(); });
    return w;
}

Rational energy(const WeightSet& weights, const SpinState& state) {
    if (state.size() < weights.atom_count)
        throw SemanticError("spin state covers fewer atoms than the weight set");
    auto spin = [&](int i) { return Rational(state.spins[size_t(i)]); };
    Rational e = weights.offset;
    for (int i = 0; i < weights.atom_count; ++i) e -= weights.bias[size_t(i)] * spin(i);
    for (const auto& [key, w] : weights.pairs) e -= w * spin(key[0]) * spin(key[1]);
    for (const auto& [key, w] : weights.triples)
        e -= w * spin(key[0]) * spin(key[1]) * spin(key[2]);
    return e;
}

int unsat_count(const std::vector<Clause>& rules, const SpinState& state) {
    Word w = state.to_word();
    int count = 0;
    for (const Clause& c : rules)
        if (!c.satisfied(w)) ++count;
    return count;
}

Rational local_field(const WeightSet& weights, const SpinState& state, int i) {
    auto spin = [&](int j) { return Rational(state.spins[size_t(j)]); };
    Rational h = weights.bias[size_t(i)];
    for (const auto& [key, w] : weights.pairs) {
        if (key[0] == i)
            h += w * spin(key[1]);
        else if (key[1] == i)
            h += w * spin(key[0]);
    }
    for (const auto& [key, w] : weights.triples) {
        if (key[0] == i)
            h += w * spin(key[1]) * spin(key[2]);
        else if (key[1] == i)
            h += w * spin(key[0]) * spin(key[2]);
        else if (key[2] == i)
            h += w * spin(key[0]) * spin(key[1]);
    }
    return h;
}

// ---------------------------------------------------------------------------
// Scaled integer tables for the dynamics and the exhaustive scans. The
// common denominator is exact (dyadic for wired sets), so every energy and
// field below is an integer with no rounding anywhere.

namespace {

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
    std::int64_t g = std::gcd(a, b);
    __int128 l = __int128(a / g) * b;
    if (l > INT64_MAX) throw InternalError("weight denominator lcm overflow");
    return std::int64_t(l);
}

struct ScaledWeights {
    int atom_count = 0;
    std::int64_t scale = 1;
    std::int64_t offset = 0;
    std::vector<std::int64_t> bias;
    struct PairTerm {
        int i, j;
        std::int64_t w;
    };
    struct TripleTerm {
        int i, j, k;
        std::int64_t w;
    };
    std::vector<PairTerm> pair_terms;
    std::vector<TripleTerm> triple_terms;
    // incidence lists for local fields
    std::vector<std::vector<std::pair<int, std::int64_t>>> pair_inc;
    std::vector<std::vector<std::array<std::int64_t, 3>>> triple_inc;  // (j, k, w)

    explicit ScaledWeights(const WeightSet& w) : atom_count(w.atom_count) {
        scale = w.offset.den();
        for (const Rational& r : w.bias) scale = lcm64(scale, r.den());
        for (const auto& [key, r] : w.pairs) scale = lcm64(scale, r.den());
        for (const auto& [key, r] : w.triples) scale = lcm64(scale, r.den());

        auto scaled = [&](const Rational& r) { return r.num() * (scale / r.den()); };
        offset = scaled(w.offset);
        bias.reserve(size_t(atom_count));
        for (const Rational& r : w.bias) bias.push_back(scaled(r));
        pair_inc.resize(size_t(atom_count));
        triple_inc.resize(size_t(atom_count));
        for (const auto& [key, r] : w.pairs) {
            std::int64_t v = scaled(r);
            pair_terms.push_back({key[0], key[1], v});
            pair_inc[size_t(key[0])].push_back({key[1], v});
            pair_inc[size_t(key[1])].push_back({key[0], v});
        }
        for (const auto& [key, r] : w.triples) {
            std::int64_t v = scaled(r);
            triple_terms.push_back({key[0], key[1], key[2], v});
            triple_inc[size_t(key[0])].push_back({key[1], key[2], v});
            triple_inc[size_t(key[1])].push_back({key[0], key[2], v});
            triple_inc[size_t(key[2])].push_back({key[0], key[1], v});
        }
    }

    static int spin(Word w, int i) { return int((w >> i) & 1u) * 2 - 1; }

    std::int64_t energy_of(Word w) const {
        std::int64_t e = offset;
        for (int i = 0; i < atom_count; ++i) e -= bias[size_t(i)] * spin(w, i);
        for (const PairTerm& t : pair_terms) e -= t.w * spin(w, t.i) * spin(w, t.j);
        for (const TripleTerm& t : triple_terms)
            e -= t.w * spin(w, t.i) * spin(w, t.j) * spin(w, t.k);
        return e;
    }

    std::int64_t field_of(Word w, int i) const {
        std::int64_t h = bias[size_t(i)];
        for (const auto& [j, v] : pair_inc[size_t(i)]) h += v * spin(w, int(j));
        for (const auto& [j, k, v] : triple_inc[size_t(i)])
            h += v * spin(w, int(j)) * spin(w, int(k));
        return h;
    }

    Rational to_rational(std::int64_t e) const { return Rational(e, scale); }
};

struct ClampBits {
    Word true_bits = 0;
    Word false_bits = 0;
    std::vector<int> free_atoms;

    explicit ClampBits(const ClampMask& clamp) {
        for (int i = 0; i < int(clamp.size()); ++i) {
            switch (clamp[size_t(i)]) {
                case Clamp::True: true_bits |= Word{1} << i; break;
                case Clamp::False: false_bits |= Word{1} << i; break;
                case Clamp::Free: free_atoms.push_back(i); break;
            }
        }
    }

    bool consistent(Word w) const {
        return (w & true_bits) == true_bits && (w & false_bits) == 0;
    }
};

}  // namespace

// ---------------------------------------------------------------------------
// Dynamics

RelaxResult relax(const WeightSet& weights, const ClampMask& clamp, const DynamicsConfig& config,
                  SpinState initial, int restart_index, const TraceSink* trace) {
    if (int(clamp.size()) != weights.atom_count || initial.size() != weights.atom_count)
        throw SemanticError("clamp mask and initial state must cover the weight set");
    ClampBits bits(clamp);
    Word w = initial.to_word();
    if (!bits.consistent(w))
        throw SemanticError("initial state disagrees with the clamp mask");

    ScaledWeights sw(weights);

    RelaxResult result;
    if (bits.free_atoms.empty()) {
        result.state = std::move(initial);
        result.energy = sw.to_rational(sw.energy_of(w));
        result.converged = true;
        result.sweeps = 0;
        return result;
    }

    // One fixed update permutation per restart, derived from the seed.
    std::vector<int> order = bits.free_atoms;
    Rng rng(mix_seed(config.seed * 2 + 1, std::uint64_t(restart_index)));
    for (size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[size_t(rng.below(i))]);

    bool converged = false;
    int sweeps = 0;
    while (sweeps < config.max_sweeps) {
        ++sweeps;
        int flips = 0;
        for (int i : order) {
            std::int64_t h = sw.field_of(w, i);
            if (h == 0) continue;  // tie keeps the current spin
            Word bit = Word{1} << i;
            Word desired = h > 0 ? bit : Word{0};
            if ((w & bit) != desired) {
                w ^= bit;
                ++flips;
            }
        }
        if (trace != nullptr) (*trace)(restart_index, sweeps, flips, sw.to_rational(sw.energy_of(w)));
        if (flips == 0) {
            converged = true;
            break;
        }
    }

    result.state = SpinState::from_word(w, weights.atom_count);
    result.energy = sw.to_rational(sw.energy_of(w));
    result.converged = converged;
    result.sweeps = sweeps;
    return result;
}

namespace {

struct Best {
    bool valid = false;
    std::int64_t energy = 0;
    Word word = 0;
    int restart = 0;  // 1-based
    bool converged = false;

    void consider(std::int64_t e, Word w, int r, bool conv) {
        if (!valid || e < energy || (e == energy && w < word) ||
            (e == energy && w == word && r < restart)) {
            valid = true;
            energy = e;
            word = w;
            restart = r;
            converged = conv;
        }
    }

    void merge(const Best& o) {
        if (o.valid) consider(o.energy, o.word, o.restart, o.converged);
    }
};

Word random_initial(const ClampBits& bits, std::uint64_t seed, int restart) {
    Rng rng(mix_seed(seed * 2, std::uint64_t(restart)));
    Word w = bits.true_bits;
    for (int atom : bits.free_atoms)
        if (rng.below(2) == 1) w |= Word{1} << atom;
    return w;
}

MinimizeResult run_minimize(const WeightSet& weights, const ClampMask& clamp,
                            const DynamicsConfig& config, const TraceSink* trace, bool parallel) {
    if (config.restarts < 1) throw SemanticError("minimize needs at least one restart");
    if (config.max_sweeps < 1) throw SemanticError("minimize needs at least one sweep");
    ClampBits bits(clamp);
    ScaledWeights sw(weights);

    Best best;
    if (parallel && trace == nullptr) {
#pragma omp parallel
        {
            Best local;
#pragma omp for schedule(static) nowait
            for (int r = 0; r < config.restarts; ++r) {
                SpinState init =
                    SpinState::from_word(random_initial(bits, config.seed, r), weights.atom_count);
                RelaxResult res = relax(weights, clamp, config, std::move(init), r, nullptr);
                local.consider(sw.energy_of(res.state.to_word()), res.state.to_word(), r + 1,
                               res.converged);
            }
#pragma omp critical(plaus_minimize)
            best.merge(local);
        }
    } else {
        for (int r = 0; r < config.restarts; ++r) {
            SpinState init =
                SpinState::from_word(random_initial(bits, config.seed, r), weights.atom_count);
            RelaxResult res = relax(weights, clamp, config, std::move(init), r, trace);
            best.consider(sw.energy_of(res.state.to_word()), res.state.to_word(), r + 1,
                          res.converged);
        }
    }

    MinimizeResult out;
    out.state = SpinState::from_word(best.word, weights.atom_count);
    out.energy = sw.to_rational(best.energy);
    out.restarts_used = best.restart;
    out.converged = best.converged;
    return out;
}

}  // namespace

MinimizeResult minimize(const WeightSet& weights, const ClampMask& clamp,
                        const DynamicsConfig& config, const TraceSink* trace) {
    return run_minimize(weights, clamp, config, trace, /*parallel=*/true);
}

MinimizeResult minimize_reference(const WeightSet& weights, const ClampMask& clamp,
                                  const DynamicsConfig& config) {
    return run_minimize(weights, clamp, config, nullptr, /*parallel=*/false);
}

// ---------------------------------------------------------------------------
// Exhaustive scans

namespace {

struct MinScan {
    bool valid = false;
    std::int64_t energy = 0;
    Word word = 0;

    void consider(std::int64_t e, Word w) {
        if (!valid || e < energy || (e == energy && w < word)) {
            valid = true;
            energy = e;
            word = w;
        }
    }
    void merge(const MinScan& o) {
        if (o.valid) consider(o.energy, o.word);
    }
};

Word spread_free(const std::vector<int>& free_atoms, std::uint64_t v) {
    Word w = 0;
    for (size_t b = 0; b < free_atoms.size(); ++b)
        if ((v >> b) & 1u) w |= Word{1} << free_atoms[b];
    return w;
}

}  // namespace

ExhaustiveMin exhaustive_min_energy_reference(const WeightSet& weights, const ClampMask& clamp) {
    scan::check_enumeration_guard(weights.atom_count);
    ClampBits bits(clamp);
    ScaledWeights sw(weights);
    const std::uint64_t total = std::uint64_t(1) << bits.free_atoms.size();
    MinScan acc;
    for (std::uint64_t v = 0; v < total; ++v) {
        Word w = bits.true_bits | spread_free(bits.free_atoms, v);
        acc.consider(sw.energy_of(w), w);
    }
    return {sw.to_rational(acc.energy), acc.word};
}

ExhaustiveMin exhaustive_min_energy(const WeightSet& weights, const ClampMask& clamp) {
    scan::check_enumeration_guard(weights.atom_count);
    ClampBits bits(clamp);
    ScaledWeights sw(weights);
    const std::uint64_t total = std::uint64_t(1) << bits.free_atoms.size();
    MinScan acc;
#pragma omp parallel
    {
        MinScan local;
#pragma omp for schedule(static) nowait
        for (std::int64_t v = 0; v < std::int64_t(total); ++v) {
            Word w = bits.true_bits | spread_free(bits.free_atoms, std::uint64_t(v));
            local.consider(sw.energy_of(w), w);
        }
#pragma omp critical(plaus_min_energy)
        acc.merge(local);
    }
    return {sw.to_rational(acc.energy), acc.word};
}

// ---------------------------------------------------------------------------
// The estimator

PlausibilityEstimate estimate_plausibility(const KnowledgeBundle& bundle,
                                           const Formula& hypothesis,
                                           const DynamicsConfig& config, const TraceSink* trace) {
    if (bundle.observations.empty())
        throw SemanticError("the observation set is empty; the estimator is undefined");

    std::vector<Literal> literals;
    if (!hypothesis.literal_conjunction(literals))
        throw SemanticError(
            "the network estimator needs a hypothesis that is a conjunction of literals");

    ClampMask clamp = free_mask(bundle.atoms.size());
    for (const auto& [atom, value] : bundle.observations.entries)
        clamp[size_t(atom)] = value ? Clamp::True : Clamp::False;
    for (const Literal& l : literals) {
        Clamp want = l.positive ? Clamp::True : Clamp::False;
        Clamp& slot = clamp[size_t(l.atom)];
        if (slot != Clamp::Free && slot != want)
            throw SemanticError("hypothesis literal '" + std::string(l.positive ? "" : "~") +
                                bundle.atoms.name(l.atom) +
                                "' contradicts an observation clamp");
        slot = want;
    }

    WeightSet weights = wire_clauses(bundle.rules, bundle.atoms.size());
    MinimizeResult best = minimize(weights, clamp, config, trace);

    PlausibilityEstimate out;
    out.u_star = best.energy;
    out.converged = best.converged;
    out.restarts_used = best.restarts_used;
    const Rational size(bundle.observations.size());
    out.pl_hat =
        ((size - Rational(2) * best.energy) / size).clamped(Rational(-1), Rational(1));
    return out;
}

// ---------------------------------------------------------------------------
// Hebbian learning and clause recovery

WeightSet hebbian_learn(const std::vector<SpinState>& states) {
    if (states.empty()) throw SemanticError("Hebbian learning needs at least one state");
    const int n = states.front().size();
    for (const SpinState& s : states)
        if (s.size() != n) throw SemanticError("Hebbian states cover different atom sets");

    WeightSet w;
    w.atom_count = n;
    w.bias.assign(size_t(n), Rational(0));
    const Rational m(std::int64_t(states.size()));

    std::vector<std::int64_t> first(size_t(n), 0);
    std::map<std::array<int, 2>, std::int64_t> second;
    std::map<std::array<int, 3>, std::int64_t> third;
    for (const SpinState& s : states) {
        for (int i = 0; i < n; ++i) {
            first[size_t(i)] += s.spins[size_t(i)];
            for (int j = i + 1; j < n; ++j) {
                second[{i, j}] += s.spins[size_t(i)] * s.spins[size_t(j)];
                for (int k = j + 1; k < n; ++k)
                    third[{i, j, k}] +=
                        s.spins[size_t(i)] * s.spins[size_t(j)] * s.spins[size_t(k)];
            }
        }
    }
    for (int i = 0; i < n; ++i) w.bias[size_t(i)] = Rational(first[size_t(i)]) / m;
    for (const auto& [key, sum] : second)
        if (sum != 0) w.pairs[key] = Rational(sum) / m;
    for (const auto& [key, sum] : third)
        if (sum != 0) w.triples[key] = Rational(sum) / m;
    return w;
}

std::vector<Clause> extract_clauses(const WeightSet& learned, const Rational& tau) {
    if (!(tau > Rational(0)) || !(tau < Rational(1)))
        throw SemanticError("extraction threshold must lie in (0, 1)");

    const Rational quarter(1, 4);
    struct Candidate {
        Clause clause;
        std::array<int, 2> key;
    };
    std::vector<Candidate> candidates;

    for (const auto& [key, w_ij] : learned.pairs) {
        if (w_ij.abs() < tau) continue;
        const Rational w_i = learned.bias[size_t(key[0])];
        const Rational w_j = learned.bias[size_t(key[1])];

        bool best_pi = true, best_pj = true;
        Rational best_dev;
        bool have = false;
        for (bool pi : {true, false}) {
            for (bool pj : {true, false}) {
                Rational ti = pi ? quarter : -quarter;
                Rational tj = pj ? quarter : -quarter;
                Rational tij = (pi == pj) ? -quarter : quarter;  // -p_i p_j / 4
                Rational dev = (w_i - ti) * (w_i - ti) + (w_j - tj) * (w_j - tj) +
                               (w_ij - tij) * (w_ij - tij);
                if (!have || dev < best_dev) {
                    have = true;
                    best_dev = dev;
                    best_pi = pi;
                    best_pj = pj;
                }
            }
        }
        Clause clause(std::vector<Literal>{Literal(key[0], best_pi), Literal(key[1], best_pj)});
        candidates.push_back({std::move(clause), key});
    }

    // Keep only candidates whose re-wired pair weight reproduces the
    // learned sign.
    std::vector<Clause> emitted;
    emitted.reserve(candidates.size());
    for (const Candidate& c : candidates) emitted.push_back(c.clause);
    WeightSet rewired = wire_clauses(emitted, learned.atom_count);

    std::vector<Clause> verified;
    for (const Candidate& c : candidates) {
        const Rational* rw = rewired.pair(c.key[0], c.key[1]);
        const Rational* lw = learned.pair(c.key[0], c.key[1]);
        if (rw != nullptr && lw != nullptr && rw->sign() == lw->sign())
            verified.push_back(c.clause);
    }
    return verified;
}

}  // namespace plaus
