// Distributed under the MIT License.
// See LICENSE for details.

#pragma once

#include <cstdint>
#include <vector>

#include "ldpa/automata.hpp"
#include "ldpa/formula.hpp"

namespace ldpa {

// State of the deterministic monitor for G psi': a pair of formulas tracking
// the obligation currently under check and the obligations gathered since the
// last checkpoint.
struct MonitorState {
    FormulaId checking;
    FormulaId gathered;
    bool operator==(const MonitorState&) const = default;
};

// One monitor transition.  Fires (and resets) when the checked obligation is
// discharged: af(checking, nu) is propositionally true.
struct MonitorResult {
    MonitorState state;
    bool fired;
};
MonitorResult monitor_step(FormulaArena& arena, FormulaId psi, const MonitorState& m, Letter nu);

// Descriptor of an LDBA state produced by the translation.
struct StateDesc {
    bool accepting_part = false;
    FormulaId formula = kNoFormula;     // initial part: the tracked formula
    std::uint32_t gset = 0;             // accepting part: bitmask over g_list
    FormulaId first = kNoFormula;       // accepting part: reach-monitor coordinate
    std::vector<MonitorState> monitors; // one per bit of gset, in g_list order
    std::uint32_t counter = 1;          // round-robin acceptance counter
};

struct LtlLdba {
    Ldba aut; // carries epsilon jumps, labels as names, base-index sets
    FormulaArena* arena = nullptr;
    FormulaId phi = kNoFormula;
    std::vector<FormulaId> g_list; // enumeration of the G-subformulas of phi
    std::vector<StateDesc> descs;  // per state
    std::vector<FormulaId> labels; // per state: language-equivalent formula
    std::vector<Cube> base_table;  // interned label conjuncts (the base)
    std::uint32_t initial_states = 0; // states [0, initial_states) form the initial part

    std::vector<Fragment> label_fragments() const;
};

// Two-part construction: the initial component tracks the
// input formula under af; for every subset G of its G-subformulas an
// accepting subcomponent runs the reach monitor for phi[G] in product with
// one G-monitor per member, degeneralized by a round-robin counter.  Every
// initial state gets an epsilon jump into every subcomponent (dead targets
// pruned).  Each state carries a language-equivalent label formula and the
// set of base conjuncts of that label.
LtlLdba translate(FormulaArena& arena, FormulaId phi, std::size_t budget = 1'000'000);

} // namespace ldpa
