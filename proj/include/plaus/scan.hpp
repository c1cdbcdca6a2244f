#pragma once

#include <cstdint>
#include <vector>

#include "plaus/kb.hpp"

namespace plaus::scan {

// Clause compiled to a pair of bitmasks. Satisfied by word w iff some
// positive atom is set or some negative atom is clear.
struct CompiledClause {
    Word pos = 0;
    Word neg = 0;

    bool satisfied(Word w) const { return (w & pos) != 0 || (~w & neg) != 0; }
};

std::vector<CompiledClause> compile(const std::vector<Clause>& rules);

// Formula flattened to postfix ops so the hot loop does not chase nodes.
class BoolProgram {
public:
    BoolProgram() = default;
    explicit BoolProgram(const Formula& f);

    bool empty() const { return ops_.empty(); }
    bool eval(Word w) const;

private:
    enum class Op : std::uint8_t { PushAtom, Not, And, Or, Implies };
    std::vector<Op> ops_;
    std::vector<std::uint8_t> atoms_;  // operand per PushAtom, in op order
};

// Aggregate facts about every model of (clauses AND assumption):
//   count     - number of models
//   and_mask  - atoms true in every model   (all-ones when count == 0)
//   or_mask   - atoms true in some model    (zero when count == 0)
// The reduction is exact and commutative, so the parallel kernel returns
// bit-identical results for any thread count.
struct ModelScan {
    std::uint64_t count = 0;
    Word and_mask = ~Word{0};
    Word or_mask = 0;

    void absorb(Word w) {
        ++count;
        and_mask &= w;
        or_mask |= w;
    }
    void merge(const ModelScan& o) {
        count += o.count;
        and_mask &= o.and_mask;
        or_mask |= o.or_mask;
    }
};

// OpenMP kernel. `assumption` may be null (no constraint beyond the clauses).
// Throws SemanticError when atom_count exceeds the enumeration guard.
ModelScan model_scan(int atom_count, const std::vector<CompiledClause>& clauses,
                     const BoolProgram* assumption);

// Serial reference implementation, kept for tests and the benchmark.
ModelScan model_scan_reference(int atom_count, const std::vector<CompiledClause>& clauses,
                               const BoolProgram* assumption);

// Models in increasing word order, at most `limit` of them. Serial; feeds
// probability enumeration and Hebbian learning, where order matters.
std::vector<Word> collect_models(int atom_count, const std::vector<CompiledClause>& clauses,
                                 const BoolProgram* assumption, std::uint64_t limit);

void check_enumeration_guard(int atom_count);

}  // namespace plaus::scan
