// Distributed under the MIT License.
// See LICENSE for details.

#pragma once

#include <atomic>
#include <cstdint>
#include <vector>

#include "ldpa/automata.hpp"
#include "ldpa/formula.hpp"
#include "ldpa/rundag.hpp"

namespace ldpa {

struct CancelledError : std::runtime_error {
    CancelledError() : std::runtime_error("translation cancelled") {}
};

// DPA state: the non-Q_d vertices of a run-DAG level plus the Q_d vertices in
// index order.
struct RankingState {
    std::vector<std::uint32_t> s;
    std::vector<std::uint32_t> t;
    bool operator==(const RankingState&) const = default;
};

struct DeterminizeOptions {
    const RedundancyOracle* oracle = nullptr; // enables the reduced construction
    bool keep_smallest = false;               // never drop the index-1 vertex
    std::size_t budget = 1'000'000;           // max ranking states
    const std::atomic<bool>* cancel = nullptr;
    std::atomic<std::size_t>* progress = nullptr; // explored ranking states
};

struct Determinization {
    Dpa dpa;
    std::vector<RankingState> states; // per DPA state id
    std::uint32_t max_t = 0;          // peak ranking width
    std::uint32_t max_s = 0;
};

// BFS closure of ({q0}, []) under the ranking step.  Requires a valid
// jump-free LDBA.  Colors lie in {1..2|Q_d|+1}.
Determinization determinize(const Ldba& a, const Ord& ord, const DeterminizeOptions& opts = {});

Dpa construct_dpa(const Ldba& a, const Ord& ord, std::size_t budget = 1'000'000);
Dpa construct_reduced_dpa(const Ldba& a, const Ord& ord, const RedundancyOracle& oracle,
                          std::size_t budget = 1'000'000, bool keep_smallest = false);

// Oracle from the automaton's label-derived base-index sets.
RedundancyOracle syntactic_oracle(const Ldba& a);

struct WidthReport {
    std::uint32_t max_t = 0;  // peak |t| over reachable reduced states
    std::size_t base_m = 0;   // |L_B|
    std::size_t bound = 0;    // base_m + 1
    bool checked = false;     // false when no reduction ran
    bool ok = true;
};

WidthReport width_check(const RedundancyOracle& oracle, const Determinization& result);

// Ord selection: discovery order, or the jump-ordering heuristic when label
// fragments are known (pure-eventual components first, safety components
// last; ties by state id).
Ord choose_ord(const Ldba& a);
Ord choose_ord(const Ldba& a, const std::vector<Fragment>& label_fragments);

} // namespace ldpa
