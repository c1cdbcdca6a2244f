#pragma once

#include <cstdint>
#include <compare>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "plaus/errors.hpp"

namespace plaus {

// A total truth assignment packed into a machine word: bit i set means
// atom i is true. The enumeration guard keeps atom counts <= 32.
using Word = std::uint32_t;

inline constexpr int kMaxAtoms = 32;

// Dense atom table. Indices are assigned in order of first appearance and
// never change afterwards, which keeps assignment enumeration order (and
// every golden file derived from it) stable.
class AtomTable {
public:
    // Returns the index of `name`, creating it if unseen.
    int intern(std::string_view name);
    // Returns the index of `name` or -1.
    int find(std::string_view name) const;

    int size() const { return int(names_.size()); }
    const std::string& name(int index) const { return names_.at(size_t(index)); }
    const std::vector<std::string>& names() const { return names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
};

struct Literal {
    int atom = -1;
    bool positive = true;

    Literal() = default;
    Literal(int atom_index, bool pos) : atom(atom_index), positive(pos) {}

    Literal negated() const { return Literal(atom, !positive); }
    bool holds(Word w) const { return ((w >> atom) & 1u) == (positive ? 1u : 0u); }

    friend auto operator<=>(const Literal&, const Literal&) = default;
};

// Disjunction of literals, stored sorted and duplicate-free.
struct Clause {
    std::vector<Literal> literals;

    Clause() = default;
    explicit Clause(std::vector<Literal> lits);

    int width() const { return int(literals.size()); }
    bool tautological() const;
    bool satisfied(Word w) const;

    friend auto operator<=>(const Clause&, const Clause&) = default;
};

// Immutable propositional formula over {atom, not, and, or, implies}.
// Nodes are shared, so copies are cheap and concurrent reads are safe.
class Formula {
public:
    enum class Kind { Atom, Not, And, Or, Implies };

    Formula() = default;

    static Formula atom(int atom_index);
    static Formula negation(Formula f);
    static Formula conjunction(Formula lhs, Formula rhs);
    static Formula disjunction(Formula lhs, Formula rhs);
    static Formula implication(Formula lhs, Formula rhs);

    bool valid() const { return root_ != nullptr; }
    Kind kind() const;
    int atom_index() const;       // Kind::Atom only
    Formula child() const;        // Kind::Not only
    Formula lhs() const;          // binary kinds
    Formula rhs() const;

    bool eval(Word w) const;
    void collect_atoms(std::vector<bool>& seen) const;

    // True when the formula is a conjunction of literals (a single literal
    // counts); fills `out` with one literal per atom. Conjunctions that
    // mention an atom with both polarities are rejected.
    bool literal_conjunction(std::vector<Literal>& out) const;

    std::string to_string(const AtomTable& atoms) const;

    friend bool operator==(const Formula& a, const Formula& b) { return equal(a.root_, b.root_); }

private:
    struct Node;
    using NodePtr = std::shared_ptr<const Node>;

    explicit Formula(NodePtr root) : root_(std::move(root)) {}

    static Formula binary(Kind kind, Formula lhs, Formula rhs);
    static bool equal(const NodePtr& a, const NodePtr& b);

    NodePtr root_;
};

// Observed truth values, at most one entry per atom, kept sorted by atom.
struct ObservationSet {
    std::vector<std::pair<int, bool>> entries;

    bool empty() const { return entries.empty(); }
    int size() const { return int(entries.size()); }
    // Inserts; throws SemanticError on a duplicate atom.
    void insert(int atom, bool value);
    const bool* lookup(int atom) const;
};

// The (T, A, C) triple: rules T, observations C, named hypotheses A_i.
struct KnowledgeBundle {
    AtomTable atoms;
    std::vector<Clause> rules;
    ObservationSet observations;
    std::vector<std::pair<std::string, Formula>> hypotheses;  // insertion order

    const Formula* find_hypothesis(std::string_view name) const;
};

struct ParseResult {
    KnowledgeBundle bundle;
    std::vector<std::string> warnings;  // tautologies, duplicate literals
};

// Parses the KB text format. Statements end with '.'; '#' comments to end
// of line. Throws ParseError with line/column on malformed input and
// SemanticError on duplicate observations.
ParseResult parse_kb(std::string_view text);

// Canonical text form; parse_kb(print_kb(b)) is structurally equal to b.
std::string print_kb(const KnowledgeBundle& bundle);

// Name-based structural equality: same atom names, same rules, same
// observations, same hypotheses. Atom indices may differ between the two
// bundles (printing reorders first appearances).
bool structurally_equal(const KnowledgeBundle& a, const KnowledgeBundle& b);

}  // namespace plaus
