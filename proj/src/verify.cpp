#include "plaus/verify.hpp"

#include <algorithm>

#include "plaus/entail.hpp"
#include "plaus/generate.hpp"
#include "plaus/plausibility.hpp"

namespace plaus::verify {

namespace {

constexpr size_t kMaxMessages = 20;

struct Checker {
    SuiteResult& result;

    void check(bool ok, const std::string& what) {
        ++result.checks;
        if (!ok) {
            ++result.failures;
            if (result.messages.size() < kMaxMessages) result.messages.push_back(what);
        }
    }
};

}  // namespace

void SuiteResult::merge(const SuiteResult& o) {
    cases += o.cases;
    checks += o.checks;
    failures += o.failures;
    for (const auto& m : o.messages)
        if (messages.size() < kMaxMessages) messages.push_back(m);
}

// ---------------------------------------------------------------------------
// algebra: kb-core and the plausibility measure

SuiteResult run_algebra(std::uint64_t seed, int cases) {
    SuiteResult result{"algebra"};
    Checker c{result};

    for (int i = 0; i < cases; ++i) {
        Rng rng(mix_seed(seed, std::uint64_t(i)));
        KnowledgeBundle b = gen::bundle(rng, gen::BundleParams{});
        const int n = b.atoms.size();
        ++result.cases;
        std::string tag = "case " + std::to_string(i);

        // parse/print round trip, with a hypothesis for formula coverage
        b.hypotheses.emplace_back("h0", gen::formula(rng, n, 3));
        ParseResult reparsed = parse_kb(print_kb(b));
        c.check(structurally_equal(b, reparsed.bundle), tag + ": print/parse round trip");

        // status cross-check against model counting
        Formula assumption = gen::formula(rng, n, 2);
        int query = rng.range(0, n - 1);
        Status s = status(b.rules, n, &assumption, query);
        Formula q = Formula::atom(query);
        Formula assume_true = Formula::conjunction(assumption, q);
        Formula assume_false = Formula::conjunction(assumption, Formula::negation(q));
        std::uint64_t with_true = count_models(b.rules, n, &assume_true);
        std::uint64_t with_false = count_models(b.rules, n, &assume_false);
        Status expected = (with_true == 0 && with_false == 0) ? Status::Contradiction
                          : with_false == 0                   ? Status::ForcedTrue
                          : with_true == 0                    ? Status::ForcedFalse
                                                              : Status::Free;
        c.check(s == expected, tag + ": status agrees with model counting");

        // adding a clause never gains models
        std::uint64_t before = count_models(b.rules, n, nullptr);
        auto extended = b.rules;
        extended.push_back(gen::clause(rng, n, 1, 3));
        c.check(count_models(extended, n, nullptr) <= before,
                tag + ": model count monotone under clause addition");

        // measure range, exact denominator, full-forcing characterization
        Formula hyp = gen::literal_conjunction(rng, n, 2);
        if (count_models(b.rules, n, &hyp) > 0) {
            ForcingReport report = forcing_report(b, hyp);
            Rational pl = report.value();
            c.check(Rational(-1) <= pl && pl <= Rational(1), tag + ": measure in [-1, 1]");
            c.check(b.observations.size() % pl.den() == 0, tag + ": exact denominator");
            c.check((pl == Rational(1)) == (report.n_plus == report.size()),
                    tag + ": value 1 iff all forced correct");
            c.check((pl == Rational(-1)) == (report.n_minus == report.size()),
                    tag + ": value -1 iff all forced incorrect");

            // report entries agree with the oracle statuses
            StatusScan scan = status_scan(b.rules, n, &hyp);
            bool consistent_entries = true;
            for (const auto& [atom, fs] : report.entries) {
                const bool* obs = b.observations.lookup(atom);
                Status st = scan.status_of(atom);
                ForcingStatus want =
                    st == Status::Free ? ForcingStatus::Undetermined
                    : (st == Status::ForcedTrue) == *obs ? ForcingStatus::ForcedCorrect
                                                         : ForcingStatus::ForcedIncorrect;
                if (fs != want) consistent_entries = false;
            }
            c.check(consistent_entries, tag + ": report matches statuses");
        }

        // irrelevance zero: a hypothesis on a fresh atom measures 0
        {
            KnowledgeBundle fresh = b;
            int f = fresh.atoms.intern("fresh_atom");
            c.check(plausibility(fresh, Formula::atom(f)).is_zero(),
                    tag + ": fresh hypothesis has zero plausibility");
        }

        // fast path vs oracle on a definite Horn bundle
        {
            KnowledgeBundle horn;
            int hn = rng.range(3, 12);
            for (int a = 0; a < hn; ++a) horn.atoms.intern("h" + std::to_string(a));
            horn.rules = gen::definite_horn(rng, hn, 8, 2);
            int obs = rng.range(1, std::min(4, hn));
            for (int a = 0; a < obs; ++a) horn.observations.insert(a, rng.chance(1, 2));
            int hyp_atom = rng.range(0, hn - 1);
            ForcingReport fast = forcing_report_unit_prop(horn, hyp_atom);
            ForcingReport oracle = forcing_report(horn, Formula::atom(hyp_atom));
            c.check(fast.entries == oracle.entries && fast.n_plus == oracle.n_plus &&
                        fast.n_minus == oracle.n_minus && fast.n_zero == oracle.n_zero,
                    tag + ": unit propagation equals the oracle on Horn programs");
        }
    }

    // combination regimes, generated until quotas are met
    int disjoint_seen = 0, shared_seen = 0, joint_seen = 0;
    int want = std::max(1, cases / 4);
    for (int i = 0; disjoint_seen + shared_seen + joint_seen < 3 * want && i < cases * 50; ++i) {
        Rng rng(mix_seed(seed ^ 0x70616972ULL, std::uint64_t(i)));
        gen::PairScenario s = gen::pair_scenario(rng);
        CombinationAnalysis a = conjunction_analysis(s.bundle, s.lhs, s.rhs);
        ++result.cases;

        if (a.regime == CombinationRegime::Disjoint && disjoint_seen < want) {
            ++disjoint_seen;
            c.check(a.measured == a.predicted_raw,
                    "pair " + std::to_string(i) + ": disjoint additivity");
        } else if (a.regime == CombinationRegime::SharedConsequence && shared_seen < want) {
            // direction holds when every overlap is forced correct
            bool overlaps_correct = true;
            for (const auto& [atom, st] : a.report_combined.entries) {
                (void)st;
                if (a.report_lhs.determined(atom) && a.report_rhs.determined(atom) &&
                    !(a.report_lhs.status_of(atom) == ForcingStatus::ForcedCorrect &&
                      a.report_rhs.status_of(atom) == ForcingStatus::ForcedCorrect))
                    overlaps_correct = false;
            }
            if (overlaps_correct) {
                ++shared_seen;
                c.check(a.measured <= a.predicted_raw,
                        "pair " + std::to_string(i) + ": shared consequence bounds the sum");
            }
        } else if (a.regime == CombinationRegime::JointEffect && joint_seen < want) {
            // direction holds when every joint-only observation is forced correct
            bool joint_correct = true;
            for (const auto& [atom, st] : a.report_combined.entries) {
                if (st != ForcingStatus::Undetermined && !a.report_lhs.determined(atom) &&
                    !a.report_rhs.determined(atom) && st != ForcingStatus::ForcedCorrect)
                    joint_correct = false;
            }
            if (joint_correct) {
                ++joint_seen;
                c.check(a.measured >= a.predicted_raw,
                        "pair " + std::to_string(i) + ": joint effect raises the sum");
            }
        }
    }
    c.check(disjoint_seen >= want && shared_seen >= want && joint_seen >= want,
            "combination generator reached all three regimes");
    return result;
}

// ---------------------------------------------------------------------------
// baseline: probability, possibility, Dempster-Shafer

namespace {

FiniteDistribution product_of(const FiniteDistribution& a, const FiniteDistribution& b,
                              AtomTable& joint_atoms) {
    FiniteDistribution out;
    for (const auto& name : a.atoms.names()) out.atoms.intern(name);
    for (const auto& name : b.atoms.names()) out.atoms.intern("p_" + name);
    joint_atoms = out.atoms;
    const int na = a.atoms.size();
    for (const auto& [wa, pa] : a.worlds)
        for (const auto& [wb, pb] : b.worlds)
            out.worlds.emplace_back(wa | (wb << na), pa * pb);
    out.validate();
    return out;
}

}  // namespace

SuiteResult run_baseline(std::uint64_t seed, int cases) {
    SuiteResult result{"baseline"};
    Checker c{result};

    for (int i = 0; i < cases; ++i) {
        Rng rng(mix_seed(seed, std::uint64_t(i)));
        ++result.cases;
        std::string tag = "case " + std::to_string(i);

        // probability laws
        FiniteDistribution dist = gen::distribution(rng, 3);
        const AtomTable& atoms = dist.atoms;
        Formula x = gen::formula(rng, atoms.size(), 2);
        Formula y = gen::formula(rng, atoms.size(), 2);
        Rational px = probability(dist, x, atoms);
        Rational py = probability(dist, y, atoms);
        Rational p_or = probability(dist, Formula::disjunction(x, y), atoms);
        Rational p_and = probability(dist, Formula::conjunction(x, y), atoms);
        c.check(p_or == px + py - p_and, tag + ": inclusion-exclusion");

        if (!px.is_zero() && !py.is_zero()) {
            Rational fwd = conditional(dist, y, x, atoms);
            Rational bwd = conditional(dist, x, y, atoms);
            c.check(fwd * px == bwd * py, tag + ": Bayes identity");
            Rational gap = biconditionality_gap(dist, y, x, atoms);
            c.check(gap == (fwd - bwd).abs(), tag + ": gap is the conditional difference");
            if (px == py) c.check(gap.is_zero(), tag + ": equal marginals close the gap");
            if (gap.is_zero() && !p_and.is_zero())
                c.check(px == py, tag + ": zero gap forces equal marginals");
        }

        // product rule over disjoint atom sets
        FiniteDistribution other = gen::distribution(rng, 2);
        AtomTable joint_atoms;
        FiniteDistribution joint = product_of(dist, other, joint_atoms);
        Formula left = gen::formula(rng, dist.atoms.size(), 2);
        Formula right_base = gen::formula(rng, other.atoms.size(), 2);
        // shift the right event onto the product's second block by name
        Rational p_left = probability(joint, left, dist.atoms);
        AtomTable renamed;
        for (const auto& name : other.atoms.names()) renamed.intern("p_" + name);
        Rational p_right = probability(joint, right_base, renamed);
        Rational p_both = probability(joint, left, dist.atoms) *
                          probability(joint, right_base, renamed);
        // direct joint evaluation needs both events over the joint table
        {
            // re-index: left is already over the first block
            Rational direct;
            EventProbe: ;
            // evaluate manually: a world satisfies both events
            for (const auto& [w, weight] : joint.worlds) {
                Word left_part = w & ((Word{1} << dist.atoms.size()) - 1);
                Word right_part = w >> dist.atoms.size();
                if (left.eval(left_part) && right_base.eval(right_part)) direct += weight;
            }
            c.check(direct == p_left * p_right, tag + ": product rule on independent blocks");
            (void)p_both;
        }

        // possibility calculus
        PossibilityProfile profile;
        for (const auto& name : atoms.names()) profile.atoms.intern(name);
        for (int a = 0; a < atoms.size(); ++a) {
            profile.set(a, true, Rational(std::int64_t(rng.below(9)), 8));
            profile.set(a, false, Rational(std::int64_t(rng.below(9)), 8));
        }
        auto lit = [&](Rng& r) {
            int a = r.range(0, atoms.size() - 1);
            return r.chance(1, 2) ? Formula::atom(a) : Formula::negation(Formula::atom(a));
        };
        Formula la = lit(rng), lb = lit(rng), lc = lit(rng);
        PossibilityValue or_left = possibility_of(
            profile, Formula::disjunction(Formula::disjunction(la, lb), lc), atoms);
        PossibilityValue or_right = possibility_of(
            profile, Formula::disjunction(la, Formula::disjunction(lb, lc)), atoms);
        c.check(or_left.degree == or_right.degree, tag + ": disjunction associativity");
        PossibilityValue ab = possibility_of(profile, Formula::disjunction(la, lb), atoms);
        PossibilityValue ba = possibility_of(profile, Formula::disjunction(lb, la), atoms);
        c.check(ab.degree == ba.degree, tag + ": disjunction commutativity");
        c.check(ab.degree == std::max(possibility_of(profile, la, atoms).degree,
                                      possibility_of(profile, lb, atoms).degree),
                tag + ": disjunction is the max");
        PossibilityValue conj = possibility_of(profile, Formula::conjunction(la, lb), atoms);
        c.check(conj.upper_bound_only, tag + ": conjunction flagged as an upper bound");
        c.check(conj.degree <= possibility_of(profile, la, atoms).degree &&
                    conj.degree <= possibility_of(profile, lb, atoms).degree,
                tag + ": conjunction below both operands");

        // Dempster-Shafer
        MassFunction m1 = gen::mass_function(rng, 4);
        const Word full = m1.frame.full_set();
        for (Word ev = 0; ev <= full; ++ev) {
            if (!(ds_plausibility(m1, ev) + ds_belief(m1, Word(full & ~ev)) == Rational(1))) {
                c.check(false, tag + ": D-S duality");
                break;
            }
            if (ev == full) c.check(true, tag + ": D-S duality");
        }

        MassFunction m2 = gen::mass_function(rng, 4);
        if (m1.frame == m2.frame) {
            try {
                CombineResult ab1 = ds_combine(m1, m2);
                CombineResult ab2 = ds_combine(m2, m1);
                c.check(ab1.combined.masses == ab2.combined.masses &&
                            ab1.conflict == ab2.conflict,
                        tag + ": combination commutes");
                MassFunction m3 = gen::mass_function(rng, 4);
                if (m3.frame == m1.frame) {
                    CombineResult left_first = ds_combine(ab1.combined, m3);
                    CombineResult right_first = ds_combine(m1, ds_combine(m2, m3).combined);
                    c.check(left_first.combined.masses == right_first.combined.masses,
                            tag + ": combination associates");
                }
            } catch (const SemanticError&) {
                // total conflict; nothing to combine
            }
        }

        BoundCheckReport bounds = ds_bound_check(m1, 5, mix_seed(seed, std::uint64_t(i) + 7));
        c.check(bounds.violations == 0, tag + ": belief/plausibility bound the probability");

        // vacuous mass is neutral
        MassFunction vacuous;
        vacuous.frame = m1.frame;
        vacuous.masses.emplace_back(full, Rational(1));
        CombineResult neutral = ds_combine(m1, vacuous);
        c.check(neutral.combined.masses == m1.masses && neutral.conflict.is_zero(),
                tag + ": vacuous mass is neutral");
    }
    return result;
}

// ---------------------------------------------------------------------------
// network: wiring, dynamics, learning

SuiteResult run_network(std::uint64_t seed, int cases) {
    SuiteResult result{"network"};
    Checker c{result};

    for (int i = 0; i < cases; ++i) {
        Rng rng(mix_seed(seed, std::uint64_t(i)));
        ++result.cases;
        std::string tag = "case " + std::to_string(i);

        int n = rng.range(2, 12);
        int n_rules = rng.range(1, 10);
        std::vector<Clause> rules;
        for (int r = 0; r < n_rules; ++r) rules.push_back(gen::clause(rng, n, 1, 3));
        WeightSet w = wire_clauses(rules, n);

        // energy identity on every state
        bool identity = true;
        for (Word word = 0; word < (Word{1} << n); ++word) {
            SpinState s = SpinState::from_word(word, n);
            if (!(energy(w, s) == Rational(unsat_count(rules, s)))) identity = false;
        }
        c.check(identity, tag + ": energy equals the unsatisfied-clause count");

        // kernels agree with references
        auto compiled = scan::compile(rules);
        scan::ModelScan par = scan::model_scan(n, compiled, nullptr);
        scan::ModelScan ser = scan::model_scan_reference(n, compiled, nullptr);
        c.check(par.count == ser.count && par.and_mask == ser.and_mask &&
                    par.or_mask == ser.or_mask,
                tag + ": parallel model scan equals the serial reference");

        ClampMask clamp = free_mask(n);
        int clamped = rng.range(0, n / 2);
        for (int a = 0; a < clamped; ++a)
            clamp[size_t(a)] = rng.chance(1, 2) ? Clamp::True : Clamp::False;
        ExhaustiveMin ex_par = exhaustive_min_energy(w, clamp);
        ExhaustiveMin ex_ser = exhaustive_min_energy_reference(w, clamp);
        c.check(ex_par.energy == ex_ser.energy && ex_par.state == ex_ser.state,
                tag + ": parallel energy scan equals the serial reference");

        // satisfiable rules with no clamps reach energy zero
        if (clamped == 0) {
            bool satisfiable = count_models(rules, n, nullptr) > 0;
            c.check(satisfiable == (ex_par.energy == Rational(0)),
                    tag + ": zero ground energy iff satisfiable");
        }

        // relaxation: monotone energies, sound fixed points, bounded by start
        DynamicsConfig config{mix_seed(seed, std::uint64_t(i) * 3 + 1), 8, 64};
        std::vector<Rational> sweep_energies;
        TraceSink trace = [&](int, int, int, const Rational& e) { sweep_energies.push_back(e); };
        Word init_word = Word(rng.below(std::uint64_t(1) << n));
        ClampBitsFix: ;
        // make the initial state respect the clamp
        for (int a = 0; a < n; ++a) {
            if (clamp[size_t(a)] == Clamp::True) init_word |= Word{1} << a;
            if (clamp[size_t(a)] == Clamp::False) init_word &= ~(Word{1} << a);
        }
        SpinState init = SpinState::from_word(init_word, n);
        Rational initial_energy = energy(w, init);
        RelaxResult relaxed = relax(w, clamp, config, init, 0, &trace);
        bool monotone = true;
        Rational prev = initial_energy;
        for (const Rational& e : sweep_energies) {
            if (e > prev) monotone = false;
            prev = e;
        }
        c.check(monotone, tag + ": sweep energies never increase");
        c.check(relaxed.energy <= initial_energy, tag + ": relaxation never worsens the start");
        if (relaxed.converged) {
            bool sound = true;
            for (int a = 0; a < n; ++a) {
                if (clamp[size_t(a)] != Clamp::Free) continue;
                Rational h = local_field(w, relaxed.state, a);
                int spin = relaxed.state.spins[size_t(a)];
                if (!(h.is_zero() || (h.sign() > 0) == (spin > 0))) sound = false;
            }
            c.check(sound, tag + ": converged state is a fixed point");
        }

        // minimize: kernel agreement and the oracle lower bound
        DynamicsConfig mini{mix_seed(seed, std::uint64_t(i) * 3 + 2), 8, 64};
        MinimizeResult best_par = minimize(w, clamp, mini);
        MinimizeResult best_ser = minimize_reference(w, clamp, mini);
        c.check(best_par.energy == best_ser.energy && best_par.state == best_ser.state &&
                    best_par.restarts_used == best_ser.restarts_used,
                tag + ": parallel minimize equals the serial reference");
        c.check(best_par.energy >= ex_par.energy, tag + ": minimize bounded by the true minimum");

        // Hebbian learning on a flip-closed state set kills odd orders
        {
            std::vector<SpinState> states;
            int count = rng.range(1, 6);
            for (int s = 0; s < count; ++s) {
                Word word = Word(rng.below(std::uint64_t(1) << n));
                states.push_back(SpinState::from_word(word, n));
                states.push_back(SpinState::from_word(~word & ((Word{1} << n) - 1), n));
            }
            WeightSet learned = hebbian_learn(states);
            bool odd_zero = learned.triples.empty();
            for (const Rational& bias : learned.bias)
                if (!bias.is_zero()) odd_zero = false;
            c.check(odd_zero, tag + ": flip-closed states zero the odd orders");
        }

        // extraction: emitted clauses re-wire to the learned pair signs
        {
            int hn = rng.range(3, 6);
            std::vector<Clause> horn = gen::two_literal_horn(rng, hn);
            std::vector<Word> model_words = models(horn, hn, nullptr, 1u << hn);
            if (!model_words.empty()) {
                std::vector<SpinState> states;
                for (Word mw : model_words) states.push_back(SpinState::from_word(mw, hn));
                WeightSet learned = hebbian_learn(states);
                std::vector<Clause> recovered = extract_clauses(learned, Rational(1, 5));
                WeightSet rewired = wire_clauses(recovered, hn);
                bool signs_match = true;
                for (const auto& [key, rw] : rewired.pairs) {
                    const Rational* lw = learned.pair(key[0], key[1]);
                    if (lw == nullptr || lw->sign() != rw.sign()) signs_match = false;
                }
                c.check(signs_match, tag + ": recovered clauses match the learned signs");
            }
        }
    }
    return result;
}

}  // namespace plaus::verify
