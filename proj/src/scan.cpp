#include "plaus/scan.hpp"

namespace plaus::scan {

void check_enumeration_guard(int atom_count) {
    if (atom_count < 0 || atom_count > kMaxAtoms)
        throw SemanticError("atom count " + std::to_string(atom_count) +
                            " exceeds the enumeration guard of " + std::to_string(kMaxAtoms));
}

std::vector<CompiledClause> compile(const std::vector<Clause>& rules) {
    std::vector<CompiledClause> out;
    out.reserve(rules.size());
    for (const Clause& c : rules) {
        CompiledClause cc;
        for (const Literal& l : c.literals) {
            Word bit = Word{1} << l.atom;
            (l.positive ? cc.pos : cc.neg) |= bit;
        }
        out.push_back(cc);
    }
    return out;
}

BoolProgram::BoolProgram(const Formula& f) {
    // post-order flatten
    struct Walk {
        BoolProgram& p;
        void operator()(const Formula& g) {
            switch (g.kind()) {
                case Formula::Kind::Atom:
                    p.ops_.push_back(Op::PushAtom);
                    p.atoms_.push_back(std::uint8_t(g.atom_index()));
                    return;
                case Formula::Kind::Not:
                    (*this)(g.child());
                    p.ops_.push_back(Op::Not);
                    return;
                case Formula::Kind::And:
                    (*this)(g.lhs());
                    (*this)(g.rhs());
                    p.ops_.push_back(Op::And);
                    return;
                case Formula::Kind::Or:
                    (*this)(g.lhs());
                    (*this)(g.rhs());
                    p.ops_.push_back(Op::Or);
                    return;
                case Formula::Kind::Implies:
                    (*this)(g.lhs());
                    (*this)(g.rhs());
                    p.ops_.push_back(Op::Implies);
                    return;
            }
        }
    };
    Walk{*this}(f);
}

bool BoolProgram::eval(Word w) const {
    // stack machine; depth bounded by formula depth
    bool stack[256];
    int top = 0;
    size_t atom_cursor = 0;
    for (Op op : ops_) {
        switch (op) {
            case Op::PushAtom:
                stack[top++] = ((w >> atoms_[atom_cursor++]) & 1u) != 0;
                break;
            case Op::Not:
                stack[top - 1] = !stack[top - 1];
                break;
            case Op::And:
                --top;
                stack[top - 1] = stack[top - 1] && stack[top];
                break;
            case Op::Or:
                --top;
                stack[top - 1] = stack[top - 1] || stack[top];
                break;
            case Op::Implies:
                --top;
                stack[top - 1] = !stack[top - 1] || stack[top];
                break;
        }
        if (top >= 255) throw InternalError("formula too deep for the scan evaluator");
    }
    return top == 1 ? stack[0] : true;  // empty program = no constraint
}

namespace {

inline bool admits(Word w, const std::vector<CompiledClause>& clauses,
                   const BoolProgram* assumption) {
    for (const CompiledClause& c : clauses)
        if (!c.satisfied(w)) return false;
    return assumption == nullptr || assumption->eval(w);
}

}  // namespace

ModelScan model_scan_reference(int atom_count, const std::vector<CompiledClause>& clauses,
                               const BoolProgram* assumption) {
    check_enumeration_guard(atom_count);
    const std::uint64_t total = std::uint64_t(1) << atom_count;
    ModelScan acc;
    for (std::uint64_t w = 0; w < total; ++w)
        if (admits(Word(w), clauses, assumption)) acc.absorb(Word(w));
    return acc;
}

ModelScan model_scan(int atom_count, const std::vector<CompiledClause>& clauses,
                     const BoolProgram* assumption) {
    check_enumeration_guard(atom_count);
    const std::uint64_t total = std::uint64_t(1) << atom_count;
    ModelScan acc;
#pragma omp parallel
    {
        ModelScan local;
#pragma omp for schedule(static) nowait
        for (std::int64_t w = 0; w < std::int64_t(total); ++w)
            if (admits(Word(w), clauses, assumption)) local.absorb(Word(w));
#pragma omp critical(plaus_model_scan)
        acc.merge(local);
    }
    return acc;
}

std::vector<Word> collect_models(int atom_count, const std::vector<CompiledClause>& clauses,
                                 const BoolProgram* assumption, std::uint64_t limit) {
    check_enumeration_guard(atom_count);
    const std::uint64_t total = std::uint64_t(1) << atom_count;
    std::vector<Word> out;
    for (std::uint64_t w = 0; w < total && out.size() < limit; ++w)
        if (admits(Word(w), clauses, assumption)) out.push_back(Word(w));
    return out;
}

}  // namespace plaus::scan
