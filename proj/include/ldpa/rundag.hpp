// Distributed under the MIT License.
// See LICENSE for details.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ldpa/automata.hpp"

namespace ldpa {

// Strict total order on Q_d; everything outside Q_d maps to +infinity.
struct Ord {
    static constexpr std::uint32_t kInf = 0xffffffffu;
    std::vector<std::uint32_t> rank; // per state: 1..|Q_d| or kInf

    // Q_d states ranked by state id.
    static Ord discovery(const Ldba& a);
};

// Redundancy oracle over base-index sets: state q recognizes the union of the
// base languages indexed by I_q, so I_v contained in the union of the I's of
// strictly smaller vertices certifies that v's language is covered.
class RedundancyOracle {
public:
    RedundancyOracle() = default;
    RedundancyOracle(std::vector<std::vector<std::uint32_t>> sets, std::size_t base_size);

    bool has_sets() const { return !sets_.empty(); }
    std::size_t base_size() const { return base_size_; }
    const std::vector<std::uint32_t>& set_of(std::uint32_t state) const { return sets_[state]; }

    // I_v contained in the union of I_q over q in prefix?  An empty prefix
    // certifies only I_v = {} (a dead vertex).
    bool is_redundant(std::uint32_t v, const std::vector<std::uint32_t>& prefix) const;

private:
    std::vector<std::vector<std::uint32_t>> sets_;
    std::size_t base_size_ = 0;
};

// One level of the run DAG: the non-Q_d vertices and the Q_d vertices in
// index order (Ind = position + 1).
struct Level {
    std::uint32_t index = 0;
    std::vector<std::uint32_t> s;
    std::vector<std::uint32_t> t;
};

struct StepResult {
    std::vector<std::uint32_t> s;
    std::vector<std::uint32_t> t;
    std::uint32_t color = 0;
};

// Computes level transitions of the run DAG: successor sets, the incremental
// three-case ordering of Q_d vertices, Dec/Acc and the emitted color, and the
// oracle-driven reduction (redundant vertices removed; their predecessors
// join Dec at their old index).
class RankingEngine {
public:
    RankingEngine(const Ldba& a, const Ord& ord, const RedundancyOracle* oracle = nullptr,
                  bool keep_smallest = false);

    StepResult step(const std::vector<std::uint32_t>& s1, const std::vector<std::uint32_t>& t1,
                    Letter sigma) const;

    std::uint32_t top_color() const { return 2 * qd_count_ + 1; }
    const Ldba& automaton() const { return a_; }

private:
    const Ldba& a_;
    const Ord& ord_;
    const RedundancyOracle* oracle_;
    bool keep_smallest_;
    std::uint32_t qd_count_;
};

struct RunDag {
    std::vector<Level> levels;         // levels 0..horizon
    std::vector<std::uint32_t> colors; // colors[i] between level i and i+1
};

RunDag build_run_dag(const Ldba& a, const Ord& ord, const LassoWord& w, std::size_t horizon);

RunDag build_reduced_dag(const Ldba& a, const Ord& ord, const RedundancyOracle& oracle,
                         const LassoWord& w, std::size_t horizon, bool keep_smallest = false);

std::vector<std::uint32_t> color_trace(const Ldba& a, const Ord& ord, const LassoWord& w,
                                       std::size_t horizon);

// Minimal color occurring infinitely often: iterates the level transition
// until (level, period offset) repeats and takes the minimum on the cycle.
std::uint32_t color_summary(const Ldba& a, const Ord& ord, const LassoWord& w,
                            const RedundancyOracle* oracle = nullptr,
                            bool keep_smallest = false);

// DOT rendering of the (possibly reduced) run DAG with per-level indices and
// the color of every step.
std::string dag_to_dot(const Ldba& a, const RunDag& dag, const LassoWord& w);

} // namespace ldpa
