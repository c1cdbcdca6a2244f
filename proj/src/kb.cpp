#include "plaus/kb.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace plaus {

int AtomTable::intern(std::string_view name) {
    auto it = index_.find(std::string(name));
    if (it != index_.end()) return it->second;
    int id = int(names_.size());
    if (id >= kMaxAtoms)
        throw SemanticError("atom table exceeds the enumeration guard of " +
                            std::to_string(kMaxAtoms) + " atoms");
    names_.emplace_back(name);
    index_.emplace(names_.back(), id);
    return id;
}

int AtomTable::find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    return it == index_.end() ? -1 : it->second;
}

Clause::Clause(std::vector<Literal> lits) : literals(std::move(lits)) {
    std::sort(literals.begin(), literals.end());
    literals.erase(std::unique(literals.begin(), literals.end()), literals.end());
}

bool Clause::tautological() const {
    for (size_t i = 1; i < literals.size(); ++i)
        if (literals[i].atom == literals[i - 1].atom && literals[i].positive != literals[i - 1].positive)
            return true;
    return false;
}

bool Clause::satisfied(Word w) const {
    for (const Literal& l : literals)
        if (l.holds(w)) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Formula

struct Formula::Node {
    Kind kind;
    int atom = -1;
    NodePtr a;
    NodePtr b;
};

Formula Formula::atom(int atom_index) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Atom;
    n->atom = atom_index;
    return Formula(std::move(n));
}

namespace {
void require_valid(const Formula& f) {
    if (!f.valid()) throw InternalError("use of an empty formula");
}
}  // namespace

Formula Formula::negation(Formula f) {
    require_valid(f);
    auto n = std::make_shared<Node>();
    n->kind = Kind::Not;
    n->a = std::move(f.root_);
    return Formula(std::move(n));
}

Formula Formula::binary(Kind kind, Formula lhs, Formula rhs) {
    require_valid(lhs);
    require_valid(rhs);
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->a = std::move(lhs.root_);
    n->b = std::move(rhs.root_);
    return Formula(std::move(n));
}

Formula Formula::conjunction(Formula lhs, Formula rhs) {
    return binary(Kind::And, std::move(lhs), std::move(rhs));
}
Formula Formula::disjunction(Formula lhs, Formula rhs) {
    return binary(Kind::Or, std::move(lhs), std::move(rhs));
}
Formula Formula::implication(Formula lhs, Formula rhs) {
    return binary(Kind::Implies, std::move(lhs), std::move(rhs));
}

Formula::Kind Formula::kind() const {
    require_valid(*this);
    return root_->kind;
}

int Formula::atom_index() const { return root_->atom; }
Formula Formula::child() const { return Formula(root_->a); }
Formula Formula::lhs() const { return Formula(root_->a); }
Formula Formula::rhs() const { return Formula(root_->b); }

bool Formula::eval(Word w) const {
    require_valid(*this);
    switch (root_->kind) {
        case Kind::Atom: return ((w >> root_->atom) & 1u) != 0;
        case Kind::Not: return !Formula(root_->a).eval(w);
        case Kind::And: return Formula(root_->a).eval(w) && Formula(root_->b).eval(w);
        case Kind::Or: return Formula(root_->a).eval(w) || Formula(root_->b).eval(w);
        case Kind::Implies: return !Formula(root_->a).eval(w) || Formula(root_->b).eval(w);
    }
    return false;
}

void Formula::collect_atoms(std::vector<bool>& seen) const {
    if (!valid()) return;
    switch (root_->kind) {
        case Kind::Atom:
            if (root_->atom >= 0 && root_->atom < int(seen.size())) seen[size_t(root_->atom)] = true;
            return;
        case Kind::Not: Formula(root_->a).collect_atoms(seen); return;
        default:
            Formula(root_->a).collect_atoms(seen);
            Formula(root_->b).collect_atoms(seen);
            return;
    }
}

bool Formula::literal_conjunction(std::vector<Literal>& out) const {
    if (!valid()) return false;
    switch (root_->kind) {
        case Kind::Atom: out.emplace_back(root_->atom, true); return true;
        case Kind::Not: {
            Formula inner(root_->a);
            if (inner.kind() != Kind::Atom) return false;
            out.emplace_back(inner.atom_index(), false);
            return true;
        }
        case Kind::And:
            return Formula(root_->a).literal_conjunction(out) &&
                   Formula(root_->b).literal_conjunction(out);
        default: return false;
    }
}

namespace {

int precedence_of(Formula::Kind k) {
    switch (k) {
        case Formula::Kind::Implies: return 0;
        case Formula::Kind::Or: return 1;
        case Formula::Kind::And: return 2;
        case Formula::Kind::Not: return 3;
        case Formula::Kind::Atom: return 4;
    }
    return 4;
}

void print_formula(const Formula& f, const AtomTable& atoms, int min_level, std::string& out) {
    int level = precedence_of(f.kind());
    bool parens = level < min_level;
    if (parens) out += "(";
    switch (f.kind()) {
        case Formula::Kind::Atom: out += atoms.name(f.atom_index()); break;
        case Formula::Kind::Not:
            out += "~";
            print_formula(f.child(), atoms, precedence_of(Formula::Kind::Not), out);
            break;
        case Formula::Kind::And:
            print_formula(f.lhs(), atoms, level, out);
            out += " & ";
            print_formula(f.rhs(), atoms, level, out);
            break;
        case Formula::Kind::Or:
            print_formula(f.lhs(), atoms, level, out);
            out += " | ";
            print_formula(f.rhs(), atoms, level, out);
            break;
        case Formula::Kind::Implies:
            // right-associative: the left operand needs a strictly higher level
            print_formula(f.lhs(), atoms, level + 1, out);
            out += " -> ";
            print_formula(f.rhs(), atoms, level, out);
            break;
    }
    if (parens) out += ")";
}

}  // namespace

std::string Formula::to_string(const AtomTable& atoms) const {
    std::string out;
    print_formula(*this, atoms, 0, out);
    return out;
}

bool Formula::equal(const NodePtr& a, const NodePtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind || a->atom != b->atom) return false;
    return equal(a->a, b->a) && equal(a->b, b->b);
}

// ---------------------------------------------------------------------------
// ObservationSet / KnowledgeBundle

void ObservationSet::insert(int atom, bool value) {
    auto it = std::lower_bound(entries.begin(), entries.end(), std::make_pair(atom, false),
                               [](const auto& a, const auto& b) { return a.first < b.first; });
    if (it != entries.end() && it->first == atom)
        throw SemanticError("duplicate observation for an atom");
    entries.insert(it, {atom, value});
}

const bool* ObservationSet::lookup(int atom) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), std::make_pair(atom, false),
                               [](const auto& a, const auto& b) { return a.first < b.first; });
    if (it != entries.end() && it->first == atom) return &it->second;
    return nullptr;
}

const Formula* KnowledgeBundle::find_hypothesis(std::string_view name) const {
    for (const auto& [n, f] : hypotheses)
        if (n == name) return &f;
    return nullptr;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok {
    Ident, Colon, Dot, Pipe, Tilde, Amp, Plus, Minus, LParen, RParen,
    Arrow,   // ->
    LArrow,  // <-
    End,
};

struct Token {
    Tok kind;
    std::string text;
    int line;
    int column;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        skip_space();
        int line = line_, col = col_;
        if (pos_ >= text_.size()) return {Tok::End, "", line, col};
        char c = text_[pos_];
        if (std::isalpha(unsigned(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(unsigned(text_[pos_])) || text_[pos_] == '_'))
                advance();
            return {Tok::Ident, std::string(text_.substr(start, pos_ - start)), line, col};
        }
        switch (c) {
            case ':': advance(); return {Tok::Colon, ":", line, col};
            case '.': advance(); return {Tok::Dot, ".", line, col};
            case '|': advance(); return {Tok::Pipe, "|", line, col};
            case '~': advance(); return {Tok::Tilde, "~", line, col};
            case '&': advance(); return {Tok::Amp, "&", line, col};
            case '+': advance(); return {Tok::Plus, "+", line, col};
            case '(': advance(); return {Tok::LParen, "(", line, col};
            case ')': advance(); return {Tok::RParen, ")", line, col};
            case '-':
                advance();
                if (pos_ < text_.size() && text_[pos_] == '>') {
                    advance();
                    return {Tok::Arrow, "->", line, col};
                }
                return {Tok::Minus, "-", line, col};
            case '<':
                advance();
                if (pos_ < text_.size() && text_[pos_] == '-') {
                    advance();
                    return {Tok::LArrow, "<-", line, col};
                }
                throw ParseError("stray '<'", line, col);
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        }
    }

private:
    void skip_space() {
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
    }

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

class Parser {
public:
    explicit Parser(std::string_view text) : lexer_(text) { shift(); }

    ParseResult run() {
        ParseResult result;
        while (cur_.kind != Tok::End) statement(result);
        return result;
    }

private:
    Lexer lexer_;
    Token cur_;

    void shift() { cur_ = lexer_.next(); }

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, cur_.line, cur_.column); }

    Token expect(Tok kind, const char* what) {
        if (cur_.kind != kind) fail(std::string("expected ") + what);
        Token t = cur_;
        shift();
        return t;
    }

    void statement(ParseResult& r) {
        if (cur_.kind != Tok::Ident) fail("expected a statement ('rule', 'obs' or 'hyp')");
        Token head = cur_;
        shift();
        if (head.text == "rule") {
            expect(Tok::Colon, "':'");
            rule_statement(r, head.line);
        } else if (head.text == "obs") {
            expect(Tok::Colon, "':'");
            obs_statement(r, head.line, head.column);
        } else if (head.text == "hyp") {
            hyp_statement(r);
        } else {
            throw ParseError("unknown statement '" + head.text + "'", head.line, head.column);
        }
    }

    Literal literal(ParseResult& r) {
        bool positive = true;
        if (cur_.kind == Tok::Tilde) {
            positive = false;
            shift();
        }
        Token name = expect(Tok::Ident, "an atom name");
        return Literal(r.bundle.atoms.intern(name.text), positive);
    }

    void rule_statement(ParseResult& r, int line) {
        std::vector<Literal> lits;
        lits.push_back(literal(r));
        if (cur_.kind == Tok::LArrow) {
            // head <- b1 & b2   ==   head | ~b1 | ~b2
            if (!lits.back().positive) fail("a rule head must be a plain atom");
            shift();
            Token body = expect(Tok::Ident, "a body atom");
            lits.emplace_back(r.bundle.atoms.intern(body.text), false);
            while (cur_.kind == Tok::Amp) {
                shift();
                Token b = expect(Tok::Ident, "a body atom");
                lits.emplace_back(r.bundle.atoms.intern(b.text), false);
            }
        } else {
            while (cur_.kind == Tok::Pipe) {
                shift();
                lits.push_back(literal(r));
            }
        }
        expect(Tok::Dot, "'.'");
        size_t before = lits.size();
        Clause clause(std::move(lits));
        if (clause.literals.size() != before)
            r.warnings.push_back("line " + std::to_string(line) + ": duplicate literal in rule ignored");
        if (clause.tautological())
            r.warnings.push_back("line " + std::to_string(line) + ": tautological rule retained");
        r.bundle.rules.push_back(std::move(clause));
    }

    void obs_statement(ParseResult& r, int line, int column) {
        bool value;
        if (cur_.kind == Tok::Plus)
            value = true;
        else if (cur_.kind == Tok::Minus)
            value = false;
        else
            fail("expected '+' or '-'");
        shift();
        Token name = expect(Tok::Ident, "an atom name");
        expect(Tok::Dot, "'.'");
        int atom = r.bundle.atoms.intern(name.text);
        try {
            r.bundle.observations.insert(atom, value);
        } catch (const SemanticError&) {
            throw ParseError("duplicate observation for atom '" + name.text + "'", line, column);
        }
    }

    void hyp_statement(ParseResult& r) {
        Token name = expect(Tok::Ident, "a hypothesis name");
        if (r.bundle.find_hypothesis(name.text) != nullptr)
            throw ParseError("duplicate hypothesis '" + name.text + "'", name.line, name.column);
        expect(Tok::Colon, "':'");
        Formula f = formula(r);
        expect(Tok::Dot, "'.'");
        r.bundle.hypotheses.emplace_back(name.text, std::move(f));
    }

    // precedence: ~  >  &  >  |  >  ->  ('->' right-associative)
    Formula formula(ParseResult& r) {
        Formula lhs = or_term(r);
        if (cur_.kind == Tok::Arrow) {
            shift();
            return Formula::implication(std::move(lhs), formula(r));
        }
        return lhs;
    }

    Formula or_term(ParseResult& r) {
        Formula lhs = and_term(r);
        while (cur_.kind == Tok::Pipe) {
            shift();
            lhs = Formula::disjunction(std::move(lhs), and_term(r));
        }
        return lhs;
    }

    Formula and_term(ParseResult& r) {
        Formula lhs = unary(r);
        while (cur_.kind == Tok::Amp) {
            shift();
            lhs = Formula::conjunction(std::move(lhs), unary(r));
        }
        return lhs;
    }

    Formula unary(ParseResult& r) {
        if (cur_.kind == Tok::Tilde) {
            shift();
            return Formula::negation(unary(r));
        }
        if (cur_.kind == Tok::LParen) {
            shift();
            Formula inner = formula(r);
            expect(Tok::RParen, "')'");
            return inner;
        }
        Token name = expect(Tok::Ident, "an atom name");
        return Formula::atom(r.bundle.atoms.intern(name.text));
    }
};

}  // namespace

ParseResult parse_kb(std::string_view text) { return Parser(text).run(); }

std::string print_kb(const KnowledgeBundle& bundle) {
    std::string out;
    for (const Clause& c : bundle.rules) {
        out += "rule: ";
        for (size_t i = 0; i < c.literals.size(); ++i) {
            if (i) out += " | ";
            const Literal& l = c.literals[i];
            if (!l.positive) out += "~";
            out += bundle.atoms.name(l.atom);
        }
        out += " .\n";
    }
    for (const auto& [atom, value] : bundle.observations.entries) {
        out += "obs: ";
        out += value ? "+" : "-";
        out += bundle.atoms.name(atom);
        out += " .\n";
    }
    for (const auto& [name, f] : bundle.hypotheses) {
        out += "hyp " + name + ": " + f.to_string(bundle.atoms) + " .\n";
    }
    return out;
}

namespace {

// Clause as sorted (name, polarity) pairs, for index-free comparison.
std::vector<std::pair<std::string, bool>> named_clause(const Clause& c, const AtomTable& atoms) {
    std::vector<std::pair<std::string, bool>> v;
    v.reserve(c.literals.size());
    for (const Literal& l : c.literals) v.emplace_back(atoms.name(l.atom), l.positive);
    std::sort(v.begin(), v.end());
    return v;
}

bool formula_equal_by_name(const Formula& a, const AtomTable& ta, const Formula& b,
                           const AtomTable& tb) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case Formula::Kind::Atom: return ta.name(a.atom_index()) == tb.name(b.atom_index());
        case Formula::Kind::Not: return formula_equal_by_name(a.child(), ta, b.child(), tb);
        default:
            return formula_equal_by_name(a.lhs(), ta, b.lhs(), tb) &&
                   formula_equal_by_name(a.rhs(), ta, b.rhs(), tb);
    }
}

}  // namespace

bool structurally_equal(const KnowledgeBundle& a, const KnowledgeBundle& b) {
    std::vector<std::string> na = a.atoms.names(), nb = b.atoms.names();
    std::sort(na.begin(), na.end());
    std::sort(nb.begin(), nb.end());
    if (na != nb) return false;

    std::multiset<std::vector<std::pair<std::string, bool>>> ra, rb;
    for (const Clause& c : a.rules) ra.insert(named_clause(c, a.atoms));
    for (const Clause& c : b.rules) rb.insert(named_clause(c, b.atoms));
    if (ra != rb) return false;

    std::set<std::pair<std::string, bool>> oa, ob;
    for (const auto& [atom, v] : a.observations.entries) oa.emplace(a.atoms.name(atom), v);
    for (const auto& [atom, v] : b.observations.entries) ob.emplace(b.atoms.name(atom), v);
    if (oa != ob) return false;

    if (a.hypotheses.size() != b.hypotheses.size()) return false;
    for (const auto& [name, f] : a.hypotheses) {
        const Formula* g = b.find_hypothesis(name);
        if (g == nullptr || !formula_equal_by_name(f, a.atoms, *g, b.atoms)) return false;
    }
    return true;
}

}  // namespace plaus
