#include "plaus/baseline.hpp"

#include <algorithm>
#include <cctype>

#include "plaus/rng.hpp"

namespace plaus {

namespace {

constexpr int kMaxFrame = 16;  // keeps 2^|frame| event sweeps bounded

// Shared tokenizer for the .dist and .mass formats.
struct FileToken {
    enum Kind { Ident, Number, Punct, End } kind;
    std::string text;
    int line;
    int column;
};

class FileLexer {
public:
    explicit FileLexer(std::string_view text) : text_(text) {}

    FileToken next() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (std::isspace(unsigned(c))) {
                advance();
            } else {
                break;
            }
        }
        int line = line_, col = col_;
        if (pos_ >= text_.size()) return {FileToken::End, "", line, col};
        char c = text_[pos_];
        if (std::isalpha(unsigned(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(unsigned(text_[pos_])) || text_[pos_] == '_'))
                advance();
            return {FileToken::Ident, std::string(text_.substr(start, pos_ - start)), line, col};
        }
        if (std::isdigit(unsigned(c))) {
            size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(unsigned(text_[pos_]))) advance();
            return {FileToken::Number, std::string(text_.substr(start, pos_ - start)), line, col};
        }
        if (std::string_view(":.={},/").find(c) != std::string_view::npos) {
            advance();
            return {FileToken::Punct, std::string(1, c), line, col};
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }

private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    std::string_view text_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class FileParser {
public:
    explicit FileParser(std::string_view text) : lexer_(text) { shift(); }

protected:
    FileLexer lexer_;
    FileToken cur_;

    void shift() { cur_ = lexer_.next(); }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, cur_.line, cur_.column);
    }
    bool at_punct(char c) const { return cur_.kind == FileToken::Punct && cur_.text[0] == c; }
    void expect_punct(char c) {
        if (!at_punct(c)) fail(std::string("expected '") + c + "'");
        shift();
    }
    std::string expect_ident(const char* what) {
        if (cur_.kind != FileToken::Ident) fail(std::string("expected ") + what);
        std::string t = cur_.text;
        shift();
        return t;
    }
    std::int64_t expect_number() {
        if (cur_.kind != FileToken::Number) fail("expected a number");
        if (cur_.text.size() > 18) fail("number too large");
        std::int64_t v = std::stoll(cur_.text);
        shift();
        return v;
    }
    Rational expect_rational() {
        std::int64_t num = expect_number();
        if (at_punct('/')) {
            shift();
            std::int64_t den = expect_number();
            if (den == 0) fail("zero denominator");
            return Rational(num, den);
        }
        return Rational(num);
    }
};

}  // namespace

// ---------------------------------------------------------------------------
// FiniteDistribution

void FiniteDistribution::validate() const {
    if (worlds.empty()) throw SemanticError("a distribution needs at least one world");
    Rational total;
    for (const auto& [w, weight] : worlds) {
        (void)w;
        if (weight < Rational(0)) throw SemanticError("negative world weight");
        total += weight;
    }
    if (!(total == Rational(1)))
        throw SemanticError("world weights sum to " + total.str() + ", expected 1");
}

namespace {

class DistParser : FileParser {
public:
    using FileParser::FileParser;

    FiniteDistribution run() {
        FiniteDistribution dist;
        bool first = true;
        while (cur_.kind != FileToken::End) {
            FileToken head = cur_;
            std::string kw = expect_ident("'world'");
            if (kw != "world") throw ParseError("unknown statement '" + kw + "'", head.line, head.column);
            expect_punct(':');
            world_line(dist, first, head.line);
            first = false;
        }
        dist.validate();
        std::sort(dist.worlds.begin(), dist.worlds.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        return dist;
    }

private:
    void world_line(FiniteDistribution& dist, bool first, int line) {
        Word word = 0;
        std::vector<int> seen;
        while (cur_.kind == FileToken::Ident && cur_.text != "weight") {
            FileToken at = cur_;
            std::string name = expect_ident("an atom name");
            expect_punct('=');
            std::int64_t v = expect_number();
            if (v != 0 && v != 1) throw ParseError("atom value must be 0 or 1", at.line, at.column);
            int idx = first ? dist.atoms.intern(name) : dist.atoms.find(name);
            if (idx < 0)
                throw ParseError("atom '" + name + "' not in the first world line", at.line,
                                 at.column);
            if (std::find(seen.begin(), seen.end(), idx) != seen.end())
                throw ParseError("atom '" + name + "' assigned twice", at.line, at.column);
            seen.push_back(idx);
            if (v == 1) word |= Word{1} << idx;
        }
        if (cur_.kind != FileToken::Ident || cur_.text != "weight") fail("expected 'weight'");
        shift();
        expect_punct(':');
        Rational weight = expect_rational();
        expect_punct('.');
        if (int(seen.size()) != dist.atoms.size())
            throw ParseError("world line assigns " + std::to_string(seen.size()) + " of " +
                                 std::to_string(dist.atoms.size()) + " atoms",
                             line, 1);
        for (const auto& [w, _] : dist.worlds)
            if (w == word) throw ParseError("duplicate world", line, 1);
        dist.worlds.emplace_back(word, weight);
    }
};

// Remaps a formula-indexed evaluation onto distribution worlds.
struct EventOnDist {
    std::vector<int> formula_to_dist;  // -1 for atoms the formula does not use

    EventOnDist(const Formula& event, const AtomTable& event_atoms,
                const FiniteDistribution& dist) {
        std::vector<bool> used(size_t(event_atoms.size()), false);
        event.collect_atoms(used);
        formula_to_dist.assign(size_t(event_atoms.size()), -1);
        for (int i = 0; i < event_atoms.size(); ++i) {
            if (!used[size_t(i)]) continue;
            int d = dist.atoms.find(event_atoms.name(i));
            if (d < 0)
                throw SemanticError("atom '" + event_atoms.name(i) +
                                    "' is not declared by the distribution");
            formula_to_dist[size_t(i)] = d;
        }
    }

    bool holds(const Formula& event, Word dist_world) const {
        Word translated = 0;
        for (size_t i = 0; i < formula_to_dist.size(); ++i) {
            int d = formula_to_dist[i];
            if (d >= 0 && ((dist_world >> d) & 1u)) translated |= Word{1} << i;
        }
        return event.eval(translated);
    }
};

}  // namespace

FiniteDistribution parse_dist(std::string_view text) { return DistParser(text).run(); }

Rational probability(const FiniteDistribution& dist, const Formula& event,
                     const AtomTable& event_atoms) {
    EventOnDist mapped(event, event_atoms, dist);
    Rational total;
    for (const auto& [world, weight] : dist.worlds)
        if (mapped.holds(event, world)) total += weight;
    return total;
}

namespace {

// P(a | b) by filtered enumeration; null event raises SemanticError.
Rational conditional_direct(const FiniteDistribution& dist, const Formula& a, const Formula& b,
                            const AtomTable& event_atoms) {
    EventOnDist ma(a, event_atoms, dist);
    EventOnDist mb(b, event_atoms, dist);
    Rational joint, denom;
    for (const auto& [world, weight] : dist.worlds) {
        if (mb.holds(b, world)) {
            denom += weight;
            if (ma.holds(a, world)) joint += weight;
        }
    }
    if (denom.is_zero()) throw SemanticError("conditioning on an event of probability zero");
    return joint / denom;
}

}  // namespace

Rational conditional(const FiniteDistribution& dist, const Formula& theta, const Formula& x,
                     const AtomTable& event_atoms) {
    Rational direct = conditional_direct(dist, theta, x, event_atoms);
    // Cross-check Bayes' identity through the reverse conditional.
    Rational p_theta = probability(dist, theta, event_atoms);
    if (!p_theta.is_zero()) {
        Rational reverse = conditional_direct(dist, x, theta, event_atoms);
        Rational p_x = probability(dist, x, event_atoms);
        if (!(direct * p_x == reverse * p_theta))
            throw InternalError("Bayes decomposition mismatch: " + direct.str() + "*" +
                                p_x.str() + " != " + reverse.str() + "*" + p_theta.str());
    }
    return direct;
}

Rational biconditionality_gap(const FiniteDistribution& dist, const Formula& theta,
                              const Formula& x, const AtomTable& event_atoms) {
    if (probability(dist, theta, event_atoms).is_zero())
        throw SemanticError("conditioning on an event of probability zero");
    Rational forward = conditional(dist, theta, x, event_atoms);
    Rational backward = conditional(dist, x, theta, event_atoms);
    return (forward - backward).abs();
}

// ---------------------------------------------------------------------------
// Possibility

void PossibilityProfile::set(int atom, bool polarity, const Rational& degree) {
    if (degree < Rational(0) || degree > Rational(1))
        throw SemanticError("possibility degree outside [0, 1]");
    degrees[{atom, polarity}] = degree;
}

const Rational& PossibilityProfile::degree(int atom, bool polarity) const {
    auto it = degrees.find({atom, polarity});
    if (it == degrees.end())
        throw SemanticError("no possibility degree declared for literal '" +
                            std::string(polarity ? "" : "~") + atoms.name(atom) + "'");
    return it->second;
}

namespace {

PossibilityValue possibility_rec(const PossibilityProfile& profile, const Formula& f,
                                 const std::vector<int>& remap) {
    switch (f.kind()) {
        case Formula::Kind::Atom:
            return {profile.degree(remap[size_t(f.atom_index())], true), false};
        case Formula::Kind::Not: {
            Formula inner = f.child();
            if (inner.kind() != Formula::Kind::Atom)
                throw SemanticError("possibility formulas must be negation-normal over literals");
            return {profile.degree(remap[size_t(inner.atom_index())], false), false};
        }
        case Formula::Kind::And: {
            PossibilityValue l = possibility_rec(profile, f.lhs(), remap);
            PossibilityValue r = possibility_rec(profile, f.rhs(), remap);
            return {std::min(l.degree, r.degree), true};
        }
        case Formula::Kind::Or: {
            PossibilityValue l = possibility_rec(profile, f.lhs(), remap);
            PossibilityValue r = possibility_rec(profile, f.rhs(), remap);
            return {std::max(l.degree, r.degree), l.upper_bound_only || r.upper_bound_only};
        }
        case Formula::Kind::Implies:
            throw SemanticError("possibility formulas are restricted to conjunction and disjunction");
    }
    throw InternalError("unreachable formula kind");
}

}  // namespace

PossibilityValue possibility_of(const PossibilityProfile& profile, const Formula& formula,
                                const AtomTable& formula_atoms) {
    std::vector<int> remap(size_t(formula_atoms.size()), -1);
    std::vector<bool> used(size_t(formula_atoms.size()), false);
    formula.collect_atoms(used);
    for (int i = 0; i < formula_atoms.size(); ++i) {
        if (!used[size_t(i)]) continue;
        int p = profile.atoms.find(formula_atoms.name(i));
        if (p < 0)
            throw SemanticError("atom '" + formula_atoms.name(i) +
                                "' is not declared by the possibility profile");
        remap[size_t(i)] = p;
    }
    return possibility_rec(profile, formula, remap);
}

// ---------------------------------------------------------------------------
// Dempster-Shafer

int Frame::find(std::string_view label) const {
    for (size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return int(i);
    return -1;
}

std::string Frame::set_to_string(Word set) const {
    std::string out = "{";
    bool first = true;
    for (int i = 0; i < size(); ++i) {
        if ((set >> i) & 1u) {
            if (!first) out += ",";
            out += labels[size_t(i)];
            first = false;
        }
    }
    return out + "}";
}

void MassFunction::validate() const {
    if (frame.size() == 0) throw SemanticError("empty frame of discernment");
    if (frame.size() > kMaxFrame)
        throw SemanticError("frame larger than " + std::to_string(kMaxFrame) + " outcomes");
    if (masses.empty()) throw SemanticError("a mass function needs at least one focal set");
    Rational total;
    Word full = frame.full_set();
    for (const auto& [set, mass] : masses) {
        if (set == 0) throw SemanticError("mass assigned to the empty set");
        if ((set & ~full) != 0) throw SemanticError("focal set outside the frame");
        if (!(mass > Rational(0)) || mass > Rational(1))
            throw SemanticError("focal mass outside (0, 1]");
        total += mass;
    }
    for (size_t i = 1; i < masses.size(); ++i)
        if (masses[i].first == masses[i - 1].first)
            throw SemanticError("duplicate focal set " + frame.set_to_string(masses[i].first));
    if (!(total == Rational(1)))
        throw SemanticError("focal masses sum to " + total.str() + ", expected 1");
}

const Rational* MassFunction::mass_of(Word set) const {
    for (const auto& [s, m] : masses)
        if (s == set) return &m;
    return nullptr;
}

namespace {

class MassParser : FileParser {
public:
    using FileParser::FileParser;

    MassFunction run() {
        MassFunction m;
        FileToken head = cur_;
        if (expect_ident("'frame'") != "frame")
            throw ParseError("the first statement must declare the frame", head.line, head.column);
        expect_punct(':');
        while (cur_.kind == FileToken::Ident) {
            if (m.frame.find(cur_.text) >= 0) fail("duplicate frame label '" + cur_.text + "'");
            m.frame.labels.push_back(cur_.text);
            shift();
        }
        expect_punct('.');
        if (m.frame.size() > kMaxFrame) fail("frame larger than " + std::to_string(kMaxFrame));

        while (cur_.kind != FileToken::End) {
            FileToken kw = cur_;
            if (expect_ident("'mass'") != "mass")
                throw ParseError("unknown statement '" + kw.text + "'", kw.line, kw.column);
            expect_punct(':');
            Word set = focal_set(m.frame);
            expect_punct('=');
            Rational mass = expect_rational();
            expect_punct('.');
            m.masses.emplace_back(set, mass);
        }
        std::sort(m.masses.begin(), m.masses.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        m.validate();
        return m;
    }

private:
    Word focal_set(const Frame& frame) {
        expect_punct('{');
        Word set = 0;
        while (true) {
            FileToken at = cur_;
            std::string label = expect_ident("an outcome label");
            int idx = frame.find(label);
            if (idx < 0)
                throw ParseError("outcome '" + label + "' is not in the frame", at.line, at.column);
            set |= Word{1} << idx;
            if (at_punct(',')) {
                shift();
                continue;
            }
            break;
        }
        expect_punct('}');
        return set;
    }
};

}  // namespace

MassFunction parse_mass(std::string_view text) { return MassParser(text).run(); }

Rational ds_belief(const MassFunction& m, Word x) {
    if ((x & ~m.frame.full_set()) != 0) throw SemanticError("event outside the frame");
    Rational total;
    for (const auto& [set, mass] : m.masses)
        if ((set & ~x) == 0) total += mass;
    return total;
}

Rational ds_plausibility(const MassFunction& m, Word x) {
    if ((x & ~m.frame.full_set()) != 0) throw SemanticError("event outside the frame");
    Rational total;
    for (const auto& [set, mass] : m.masses)
        if ((set & x) != 0) total += mass;
    return total;
}

CombineResult ds_combine(const MassFunction& a, const MassFunction& b) {
    if (!(a.frame == b.frame))
        throw SemanticError("mass functions over different frames cannot be combined");

    Rational conflict;
    std::map<Word, Rational> acc;
    for (const auto& [sa, ma] : a.masses) {
        for (const auto& [sb, mb] : b.masses) {
            Word meet = sa & sb;
            Rational product = ma * mb;
            if (meet == 0)
                conflict += product;
            else
                acc[meet] += product;
        }
    }
    if (conflict == Rational(1))
        throw SemanticError("total conflict (K = 1); Dempster's rule is undefined");

    CombineResult out;
    out.conflict = conflict;
    out.combined.frame = a.frame;
    Rational scale = Rational(1) / (Rational(1) - conflict);
    for (const auto& [set, mass] : acc)
        out.combined.masses.emplace_back(set, mass * scale);
    out.combined.validate();
    return out;
}

BoundCheckReport ds_bound_check(const MassFunction& m, int samples, std::uint64_t seed) {
    if (samples < 1) throw SemanticError("ds_bound_check needs at least one sample");
    BoundCheckReport report;
    report.samples = samples;
    const int n = m.frame.size();
    const Word full = m.frame.full_set();

    for (int s = 0; s < samples; ++s) {
        Rng rng(mix_seed(seed, std::uint64_t(s)));
        // Split every focal mass among its elements with positive fractions.
        std::vector<Rational> point(size_t(n));
        for (const auto& [set, mass] : m.masses) {
            std::vector<std::pair<int, std::int64_t>> shares;
            std::int64_t total = 0;
            for (int i = 0; i < n; ++i) {
                if (((set >> i) & 1u) == 0) continue;
                std::int64_t u = std::int64_t(rng.below(8)) + 1;
                shares.emplace_back(i, u);
                total += u;
            }
            for (const auto& [i, u] : shares)
                point[size_t(i)] += mass * Rational(u, total);
        }
        for (Word x = 0; x <= full; ++x) {
            Rational p;
            for (int i = 0; i < n; ++i)
                if ((x >> i) & 1u) p += point[size_t(i)];
            ++report.events_checked;
            if (ds_belief(m, x) > p || p > ds_plausibility(m, x)) ++report.violations;
        }
    }
    return report;
}

}  // namespace plaus
