#include "plaus/entail.hpp"

namespace plaus {

const char* to_string(Status s) {
    switch (s) {
        case Status::ForcedTrue: return "forced_true";
        case Status::ForcedFalse: return "forced_false";
        case Status::Free: return "free";
        case Status::Contradiction: return "contradiction";
    }
    return "?";
}

StatusScan status_scan(const std::vector<Clause>& rules, int atom_count,
                       const Formula* assumption) {
    auto compiled = scan::compile(rules);
    scan::BoolProgram program;
    if (assumption != nullptr) program = scan::BoolProgram(*assumption);
    scan::ModelScan m =
        scan::model_scan(atom_count, compiled, assumption ? &program : nullptr);

    StatusScan out;
    out.consistent = m.count > 0;
    if (out.consistent) {
        Word domain = atom_count == kMaxAtoms ? ~Word{0} : ((Word{1} << atom_count) - 1);
        out.forced_true = m.and_mask & domain;
        out.forced_false = ~m.or_mask & domain;
    }
    return out;
}

Status status(const std::vector<Clause>& rules, int atom_count, const Formula* assumption,
              int query_atom) {
    return status_scan(rules, atom_count, assumption).status_of(query_atom);
}

std::vector<Word> models(const std::vector<Clause>& rules, int atom_count,
                         const Formula* assumption, std::uint64_t limit) {
    auto compiled = scan::compile(rules);
    scan::BoolProgram program;
    if (assumption != nullptr) program = scan::BoolProgram(*assumption);
    return scan::collect_models(atom_count, compiled, assumption ? &program : nullptr, limit);
}

std::uint64_t count_models(const std::vector<Clause>& rules, int atom_count,
                           const Formula* assumption) {
    auto compiled = scan::compile(rules);
    scan::BoolProgram program;
    if (assumption != nullptr) program = scan::BoolProgram(*assumption);
    return scan::model_scan(atom_count, compiled, assumption ? &program : nullptr).count;
}

PropagationResult unit_propagate(const std::vector<Clause>& rules, PartialAssignment start) {
    PropagationResult result{false, std::move(start)};
    PartialAssignment& pa = result.assignment;

    bool changed = true;
    while (changed) {
        changed = false;
        for (const Clause& c : rules) {
            int unassigned = -1;
            int unassigned_count = 0;
            bool satisfied = false;
            for (const Literal& l : c.literals) {
                if (!pa.assigned(l.atom)) {
                    ++unassigned_count;
                    unassigned = int(&l - c.literals.data());
                } else if (pa.value(l.atom) == l.positive) {
                    satisfied = true;
                    break;
                }
            }
            if (satisfied) continue;
            if (unassigned_count == 0) {
                result.conflict = true;
                return result;
            }
            if (unassigned_count == 1) {
                const Literal& l = c.literals[size_t(unassigned)];
                pa.set(l.atom, l.positive);
                changed = true;
            }
        }
    }
    return result;
}

AssignmentRange::AssignmentRange(int atom_count) {
    scan::check_enumeration_guard(atom_count);
    total_ = std::uint64_t(1) << atom_count;
}

}  // namespace plaus
