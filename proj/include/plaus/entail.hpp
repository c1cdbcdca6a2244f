#pragma once

#include <cstdint>
#include <vector>

#include "plaus/kb.hpp"
#include "plaus/scan.hpp"

namespace plaus {

enum class Status { ForcedTrue, ForcedFalse, Free, Contradiction };

const char* to_string(Status s);

// Per-atom statuses of T + assumption in a single model scan.
// consistent == false means Contradiction for every query.
struct StatusScan {
    bool consistent = false;
    Word forced_true = 0;   // atoms true in every model
    Word forced_false = 0;  // atoms false in every model

    Status status_of(int atom) const {
        if (!consistent) return Status::Contradiction;
        Word bit = Word{1} << atom;
        if (forced_true & bit) return Status::ForcedTrue;
        if (forced_false & bit) return Status::ForcedFalse;
        return Status::Free;
    }
};

// Exhaustive model check over all 2^n assignments (the oracle everything
// else is measured against). `assumption` may be null.
StatusScan status_scan(const std::vector<Clause>& rules, int atom_count,
                       const Formula* assumption);

Status status(const std::vector<Clause>& rules, int atom_count, const Formula* assumption,
              int query_atom);

// All satisfying assignments of T + assumption, increasing word order,
// at most `limit`.
std::vector<Word> models(const std::vector<Clause>& rules, int atom_count,
                         const Formula* assumption, std::uint64_t limit);

std::uint64_t count_models(const std::vector<Clause>& rules, int atom_count,
                           const Formula* assumption);

// Three-valued partial assignment used by unit propagation.
class PartialAssignment {
public:
    explicit PartialAssignment(int atom_count) : values_(size_t(atom_count), kUnset) {}

    int atom_count() const { return int(values_.size()); }
    bool assigned(int atom) const { return values_[size_t(atom)] != kUnset; }
    bool value(int atom) const { return values_[size_t(atom)] == kTrue; }
    void set(int atom, bool v) { values_[size_t(atom)] = v ? kTrue : kFalse; }

    friend bool operator==(const PartialAssignment&, const PartialAssignment&) = default;

private:
    static constexpr signed char kUnset = -1, kFalse = 0, kTrue = 1;
    std::vector<signed char> values_;
};

struct PropagationResult {
    bool conflict = false;
    PartialAssignment assignment;
};

// Closure of `start` under the unit rule; conflict when an empty clause is
// derived. On definite Horn programs seeded with positive atoms this
// computes exactly the forced-true set (the fast path behind the oracle).
PropagationResult unit_propagate(const std::vector<Clause>& rules, PartialAssignment start);

// Ordered stream of all 2^n assignments, increasing word order. The guard
// is checked at construction.
class AssignmentRange {
public:
    explicit AssignmentRange(int atom_count);

    class iterator {
    public:
        iterator(std::uint64_t at) : at_(at) {}
        Word operator*() const { return Word(at_); }
        iterator& operator++() {
            ++at_;
            return *this;
        }
        friend bool operator==(const iterator&, const iterator&) = default;

    private:
        std::uint64_t at_;
    };

    iterator begin() const { return iterator(0); }
    iterator end() const { return iterator(total_); }
    std::uint64_t size() const { return total_; }

private:
    std::uint64_t total_;
};

inline AssignmentRange all_assignments(const KnowledgeBundle& bundle) {
    return AssignmentRange(bundle.atoms.size());
}

}  // namespace plaus
