// Distributed under the MIT License.
// See LICENSE for details.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ldpa/automata.hpp"
#include "ldpa/determinize.hpp"
#include "ldpa/ltl2ldba.hpp"

namespace ldpa {

struct PipelineConfig {
    bool reduce = true;
    bool compress = true;
    bool keep_smallest = false;
    bool race = false;
    std::size_t budget = 1'000'000;
    std::uint32_t max_props = 8;
    std::uint64_t seed = 1;
};

struct PipelineStats {
    std::uint32_t ldba_states = 0;
    std::uint32_t qd_states = 0;
    std::uint32_t dpa_states = 0;
    std::uint32_t colors = 0; // distinct used colors
    std::uint32_t max_t = 0;  // peak ranking width
    std::size_t base_m = 0;
    std::int64_t millis = 0;
    bool raced = false;
    bool negation_won = false;
};

struct PipelineResult {
    Dpa dpa;
    Ldba ldba; // jump-eliminated, labeled intermediate
    PipelineStats stats;
};

// parse -> NNF -> LDBA -> DPA -> reduce -> compress.  Deterministic for a
// fixed config.  `cancel`/`progress` support the cooperative negation race.
PipelineResult translate_pipeline(const std::string& formula, const PipelineConfig& cfg,
                                  const std::atomic<bool>* cancel = nullptr,
                                  std::atomic<std::size_t>* progress = nullptr);

// Translates the formula and its negation concurrently, returns the smaller
// automaton (the negated branch is complemented).  Degrades to a single
// translation when the negation leaves the NNF fragment.
PipelineResult negation_race(const std::string& formula, const PipelineConfig& cfg);

// ── cross-validation harness ────────────────────────────────────────────────

struct CrossConfig {
    std::size_t max_prefix = 3;
    std::size_t max_period = 3;
    std::optional<std::size_t> samples; // enumerate exhaustively when unset
    std::uint64_t seed = 1;
};

struct CrossReport {
    std::size_t words_checked = 0;
    std::vector<std::string> acceptors;
    std::vector<std::string> skipped; // e.g. the plain DPA when over budget
    std::optional<LassoWord> counterexample;
    std::string detail; // per-acceptor verdicts on the counterexample
    bool ok() const { return !counterexample.has_value(); }
};

using NamedAcceptor = std::pair<std::string, std::function<bool(const LassoWord&)>>;

// Runs every acceptor on enumerated (or sampled) lassos and stops at the
// first disagreement.
CrossReport crossvalidate_acceptors(const Alphabet& alphabet,
                                    const std::vector<NamedAcceptor>& acceptors,
                                    const CrossConfig& cc);

// Formula source: checks LTL semantics, LDBA acceptance, run-DAG color
// summary parity, and the plain / reduced / compressed DPAs.
CrossReport crossvalidate(const std::string& formula, const PipelineConfig& cfg,
                          const CrossConfig& cc);

// HOA source: same without the LTL oracle (and without reduction unless the
// automaton carries base sets).
CrossReport crossvalidate(const Ldba& a, const PipelineConfig& cfg, const CrossConfig& cc);

// ── random LDBA generator ───────────────────────────────────────────────────

// Valid LDBA over `n_sigma` symbols: random Q_d split, deterministic total
// transitions inside Q_d, density-controlled totalized transitions outside,
// accepting transitions sampled inside Q_d.  Reproducible per seed.
Ldba rand_ldba(std::uint64_t seed, std::uint32_t n_states, std::uint32_t n_sigma,
               double density = 0.3, double acc_density = 0.4);

// ── benchmark families ──────────────────────────────────────────────────────

enum class Family { R, G, F, Theta };

std::string family_name(Family f);
std::string family_formula(Family f, std::uint32_t n);

struct BenchRecord {
    std::string family;
    std::uint32_t n = 0;
    std::uint32_t states = 0;
    std::uint32_t colors = 0;
    std::uint32_t max_t = 0;
    std::size_t base_m = 0;
    std::int64_t millis = 0;
    std::string error; // budget overruns are recorded, not fatal
};

std::vector<BenchRecord> bench_families(Family f, std::uint32_t n_min, std::uint32_t n_max,
                                        const PipelineConfig& cfg);

// Header row `family,n,states,colors,max_t,base_m,millis`, one row per record.
std::string bench_csv(const std::vector<BenchRecord>& records);

} // namespace ldpa
