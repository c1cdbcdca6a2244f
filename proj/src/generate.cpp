#include "plaus/generate.hpp"

#include <algorithm>

#include "plaus/entail.hpp"

namespace plaus::gen {

namespace {

constexpr int kMaxAttempts = 10000;

std::string atom_name(int i) {
    std::string name = "x" + std::to_string(i);
    return name;
}

void add_atoms(KnowledgeBundle& b, int count) {
    for (int i = 0; i < count; ++i) b.atoms.intern(atom_name(i));
}

std::vector<int> pick_distinct(Rng& rng, int n, int k) {
    std::vector<int> pool(size_t(n));
    for (int i = 0; i < n; ++i) pool[size_t(i)] = i;
    for (size_t i = pool.size(); i > 1; --i)
        std::swap(pool[i - 1], pool[size_t(rng.below(i))]);
    pool.resize(size_t(k));
    return pool;
}

[[noreturn]] void exhausted(const char* what) {
    throw InternalError(std::string("generator exhausted its attempts for ") + what);
}

}  // namespace

Clause clause(Rng& rng, int atom_count, int min_width, int max_width) {
    int width = rng.range(min_width, std::min(max_width, atom_count));
    std::vector<int> atoms = pick_distinct(rng, atom_count, width);
    std::vector<Literal> lits;
    lits.reserve(size_t(width));
    for (int a : atoms) lits.emplace_back(a, rng.chance(1, 2));
    return Clause(std::move(lits));
}

KnowledgeBundle bundle(Rng& rng, const BundleParams& params) {
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        KnowledgeBundle b;
        int n = rng.range(params.min_atoms, params.max_atoms);
        add_atoms(b, n);

        int rules = rng.range(0, params.max_rules);
        for (int i = 0; i < rules; ++i)
            b.rules.push_back(clause(rng, n, 1, params.max_clause_width));

        int obs = rng.range(1, std::min(params.max_observations, n));
        for (int a : pick_distinct(rng, n, obs)) b.observations.insert(a, rng.chance(1, 2));

        if (params.undetermined_observations) {
            StatusScan base = status_scan(b.rules, n, nullptr);
            if (!base.consistent) continue;
            bool decided = false;
            for (const auto& [atom, value] : b.observations.entries) {
                (void)value;
                if (base.status_of(atom) != Status::Free) decided = true;
            }
            if (decided) continue;
        }
        return b;
    }
    exhausted("a knowledge bundle");
}

Formula formula(Rng& rng, int atom_count, int max_depth) {
    if (max_depth <= 0 || rng.chance(1, 3))
        return Formula::atom(rng.range(0, atom_count - 1));
    switch (rng.range(0, 3)) {
        case 0: return Formula::negation(formula(rng, atom_count, max_depth - 1));
        case 1:
            return Formula::conjunction(formula(rng, atom_count, max_depth - 1),
                                        formula(rng, atom_count, max_depth - 1));
        case 2:
            return Formula::disjunction(formula(rng, atom_count, max_depth - 1),
                                        formula(rng, atom_count, max_depth - 1));
        default:
            return Formula::implication(formula(rng, atom_count, max_depth - 1),
                                        formula(rng, atom_count, max_depth - 1));
    }
}

Formula literal_conjunction(Rng& rng, int atom_count, int max_literals) {
    int k = rng.range(1, std::min(max_literals, atom_count));
    std::vector<int> atoms = pick_distinct(rng, atom_count, k);
    Formula f;
    for (int a : atoms) {
        Formula lit = rng.chance(1, 2) ? Formula::atom(a) : Formula::negation(Formula::atom(a));
        f = f.valid() ? Formula::conjunction(std::move(f), std::move(lit)) : std::move(lit);
    }
    return f;
}

std::vector<Clause> definite_horn(Rng& rng, int atom_count, int max_rules, int max_body) {
    int rules = rng.range(1, max_rules);
    std::vector<Clause> out;
    out.reserve(size_t(rules));
    for (int i = 0; i < rules; ++i) {
        int body = rng.range(1, std::min(max_body, atom_count - 1));
        std::vector<int> atoms = pick_distinct(rng, atom_count, body + 1);
        std::vector<Literal> lits;
        lits.emplace_back(atoms[0], true);
        for (int j = 1; j <= body; ++j) lits.emplace_back(atoms[size_t(j)], false);
        out.emplace_back(std::move(lits));
    }
    return out;
}

PairScenario pair_scenario(Rng& rng) {
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        PairScenario s;
        int n_obs = rng.range(1, 4);
        // atoms: h1, h2, then observation atoms, then a little slack
        int extra = rng.range(0, 2);
        int n = 2 + n_obs + extra;
        add_atoms(s.bundle, n);
        const int h1 = 0, h2 = 1;

        for (int i = 0; i < n_obs; ++i) {
            int c = 2 + i;
            s.bundle.observations.insert(c, rng.chance(3, 4));
            bool c_sign = rng.chance(5, 6);  // link mostly toward "true"
            switch (rng.range(0, 5)) {
                case 0:  // no link
                    break;
                case 1:  // lhs only
                    s.bundle.rules.push_back(
                        Clause({Literal(c, c_sign), Literal(h1, false)}));
                    break;
                case 2:  // rhs only
                    s.bundle.rules.push_back(
                        Clause({Literal(c, c_sign), Literal(h2, false)}));
                    break;
                case 3:  // shared consequence
                    s.bundle.rules.push_back(
                        Clause({Literal(c, c_sign), Literal(h1, false)}));
                    s.bundle.rules.push_back(
                        Clause({Literal(c, c_sign), Literal(h2, false)}));
                    break;
                case 4:  // joint effect
                    s.bundle.rules.push_back(
                        Clause({Literal(c, c_sign), Literal(h1, false), Literal(h2, false)}));
                    break;
                default:  // individual links to both polarities of the pair
                    s.bundle.rules.push_back(
                        Clause({Literal(c, c_sign), Literal(h1, false)}));
                    s.bundle.rules.push_back(
                        Clause({Literal(c, !c_sign), Literal(h2, false)}));
                    break;
            }
        }
        // occasional noise clause over the slack atoms
        if (extra > 0 && rng.chance(1, 2))
            s.bundle.rules.push_back(clause(rng, n, 1, 3));

        s.lhs = Formula::atom(h1);
        s.rhs = Formula::atom(h2);

        Formula conj = Formula::conjunction(s.lhs, s.rhs);
        if (count_models(s.bundle.rules, n, &conj) == 0) continue;
        return s;
    }
    exhausted("a combination scenario");
}

HypothesisCase biconditional_case(Rng& rng) {
    HypothesisCase out;
    int n_hyp = rng.range(1, 2);
    int n_obs = rng.range(1, 4);
    int slack = rng.range(0, 2);
    int n = n_hyp + n_obs + slack;
    add_atoms(out.bundle, n);

    std::vector<Literal> hyp_literals;
    for (int h = 0; h < n_hyp; ++h) hyp_literals.emplace_back(h, rng.chance(1, 2));

    for (int i = 0; i < n_obs; ++i) {
        int c = n_hyp + i;
        const Literal& link = hyp_literals[size_t(rng.below(hyp_literals.size()))];
        // c <-> link, as the clause pair (c | ~link) and (~c | link)
        out.bundle.rules.push_back(Clause({Literal(c, true), link.negated()}));
        out.bundle.rules.push_back(Clause({Literal(c, false), link}));
        out.bundle.observations.insert(c, rng.chance(1, 2));
    }

    Formula f;
    for (const Literal& l : hyp_literals) {
        Formula lit = l.positive ? Formula::atom(l.atom)
                                 : Formula::negation(Formula::atom(l.atom));
        f = f.valid() ? Formula::conjunction(std::move(f), std::move(lit)) : std::move(lit);
    }
    out.hypothesis = std::move(f);
    return out;
}

HypothesisCase estimator_case(Rng& rng) {
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        HypothesisCase out;
        BundleParams params;
        params.min_atoms = 3;
        params.max_atoms = 10;
        params.max_rules = 8;
        params.undetermined_observations = false;
        out.bundle = bundle(rng, params);
        out.hypothesis = literal_conjunction(rng, out.bundle.atoms.size(), 2);

        // the hypothesis must not clash with an observation clamp
        std::vector<Literal> lits;
        out.hypothesis.literal_conjunction(lits);
        bool clash = false;
        for (const Literal& l : lits) {
            const bool* observed = out.bundle.observations.lookup(l.atom);
            if (observed != nullptr && *observed != l.positive) clash = true;
        }
        if (clash) continue;
        if (count_models(out.bundle.rules, out.bundle.atoms.size(), &out.hypothesis) == 0)
            continue;
        return out;
    }
    exhausted("an estimator case");
}

ClampedInstance clamped_instance(Rng& rng, int max_free) {
    ClampedInstance out;
    out.atom_count = rng.range(4, 12);
    int rules = rng.range(2, 10);
    for (int i = 0; i < rules; ++i) out.rules.push_back(clause(rng, out.atom_count, 1, 3));

    out.clamp = free_mask(out.atom_count);
    int must_clamp = std::max(0, out.atom_count - max_free);
    int clamped = std::min(out.atom_count, must_clamp + rng.range(0, 2));
    for (int a : pick_distinct(rng, out.atom_count, clamped))
        out.clamp[size_t(a)] = rng.chance(1, 2) ? Clamp::True : Clamp::False;
    return out;
}

std::vector<Clause> two_literal_horn(Rng& rng, int atom_count) {
    // distinct heads: at most one defining clause per atom
    int max_rules = std::min(4, atom_count / 2 + 1);
    int rules = rng.range(1, max_rules);
    std::vector<int> heads = pick_distinct(rng, atom_count, rules);
    std::vector<Clause> out;
    for (int i = 0; i < rules; ++i) {
        int head = heads[size_t(i)];
        int body = head;
        while (body == head) body = rng.range(0, atom_count - 1);
        out.push_back(Clause({Literal(head, true), Literal(body, false)}));
    }
    return out;
}

MassFunction mass_function(Rng& rng, int max_frame) {
    MassFunction m;
    int f = rng.range(2, max_frame);
    for (int i = 0; i < f; ++i) m.frame.labels.push_back(std::string(1, char('a' + i)));
    const Word full = m.frame.full_set();

    int focal = rng.range(1, std::min(4, int(full)));
    std::vector<Word> sets;
    for (int attempt = 0; int(sets.size()) < focal && attempt < kMaxAttempts; ++attempt) {
        Word s = Word(rng.below(full)) + 1;  // non-empty subset
        if (std::find(sets.begin(), sets.end(), s) == sets.end()) sets.push_back(s);
    }
    std::sort(sets.begin(), sets.end());

    std::vector<std::int64_t> shares(sets.size());
    std::int64_t total = 0;
    for (auto& u : shares) {
        u = std::int64_t(rng.below(8)) + 1;
        total += u;
    }
    for (size_t i = 0; i < sets.size(); ++i)
        m.masses.emplace_back(sets[i], Rational(shares[i], total));
    m.validate();
    return m;
}

FiniteDistribution distribution(Rng& rng, int max_atoms) {
    FiniteDistribution dist;
    int n = rng.range(1, max_atoms);
    for (int i = 0; i < n; ++i) dist.atoms.intern(atom_name(i));

    const Word total_worlds = Word{1} << n;
    std::vector<std::int64_t> shares(size_t(total_worlds));
    std::int64_t total = 0;
    for (auto& u : shares) {
        u = std::int64_t(rng.below(8));  // zero-weight worlds allowed
        total += u;
    }
    if (total == 0) {
        shares[0] = 1;
        total = 1;
    }
    for (Word w = 0; w < total_worlds; ++w)
        dist.worlds.emplace_back(w, Rational(shares[size_t(w)], total));
    dist.validate();
    return dist;
}

}  // namespace plaus::gen
