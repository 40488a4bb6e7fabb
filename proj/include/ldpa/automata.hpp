// Distributed under the MIT License.
// See LICENSE for details.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ldpa/lasso.hpp"

namespace ldpa {

// ── Alphabet ────────────────────────────────────────────────────────────────
//
// Explicit, enumerated alphabet.  Two modes:
//   Subsets: letters are all 2^k subsets of k atomic propositions; the letter
//            index is the bitmask of propositions that hold (LTL mode).
//   Symbols: letters are k named symbols, encoded one-hot over k propositions
//            (raw-automaton mode, e.g. a two-letter alphabet {a, b}).
class Alphabet {
public:
    Alphabet() = default;

    static Alphabet subsets(std::vector<std::string> props);
    static Alphabet symbols(std::vector<std::string> names);

    std::uint32_t size() const {
        return symbols_ ? static_cast<std::uint32_t>(props_.size())
                        : (1u << props_.size());
    }
    bool is_symbols() const { return symbols_; }
    const std::vector<std::string>& props() const { return props_; }

    // Assignment of a letter as a bitmask over props().
    std::uint32_t letter_bits(Letter l) const { return symbols_ ? (1u << l) : l; }
    std::optional<Letter> letter_from_bits(std::uint32_t bits) const;

    std::string letter_name(Letter l) const;

    bool operator==(const Alphabet&) const = default;

private:
    std::vector<std::string> props_;
    bool symbols_ = false;
};

// ── Limit-deterministic Büchi automaton ─────────────────────────────────────
//
// Transition-based acceptance.  The accepting transitions must lie within the
// deterministic trap Q_d; validate() checks the five well-formedness
// properties and reports violations as diagnostics.
struct Ldba {
    Alphabet alphabet;
    std::uint32_t num_states = 0;
    std::uint32_t initial = 0;
    std::vector<bool> in_qd;
    // succ[q][letter] = targets; acc parallel per edge.
    std::vector<std::vector<std::vector<std::uint32_t>>> succ;
    std::vector<std::vector<std::vector<bool>>> acc;
    // Epsilon jumps from the initial part into Q_d.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> jumps;
    // Optional display names (formula text, ranking rendering, ...).
    std::vector<std::string> state_names;
    // Optional base-index sets for the redundancy oracle: per state, the
    // sorted set of base-conjunct ids whose union is the state's language.
    std::vector<std::vector<std::uint32_t>> base_sets;
    bool has_base = false;

    std::uint32_t add_state(bool qd) {
        in_qd.push_back(qd);
        succ.emplace_back(alphabet.size());
        acc.emplace_back(alphabet.size());
        return num_states++;
    }

    void add_edge(std::uint32_t q, Letter l, std::uint32_t target, bool accepting = false) {
        succ[q][l].push_back(target);
        acc[q][l].push_back(accepting);
    }

    std::size_t qd_size() const;

    // Unique successor of a Q_d state (valid automata only).
    std::uint32_t qd_succ(std::uint32_t q, Letter l) const { return succ[q][l].front(); }
    bool qd_acc(std::uint32_t q, Letter l) const { return acc[q][l].front(); }
};

// ── Deterministic parity automaton ──────────────────────────────────────────
//
// Total deterministic transition table; each transition carries a color in
// {1..num_colors}.  A run accepts iff the minimal color seen infinitely often
// is even.
struct Dpa {
    Alphabet alphabet;
    std::uint32_t num_states = 0;
    std::uint32_t initial = 0;
    std::uint32_t num_colors = 1;
    std::vector<std::uint32_t> target; // [q * |Sigma| + letter]
    std::vector<std::uint32_t> color;
    std::vector<std::string> state_names;

    std::uint32_t add_state() {
        target.resize(target.size() + alphabet.size(), 0);
        color.resize(color.size() + alphabet.size(), 1);
        return num_states++;
    }

    std::size_t edge(std::uint32_t q, Letter l) const { return std::size_t(q) * alphabet.size() + l; }
    std::uint32_t step(std::uint32_t q, Letter l) const { return target[edge(q, l)]; }
    std::uint32_t edge_color(std::uint32_t q, Letter l) const { return color[edge(q, l)]; }

    std::vector<std::uint32_t> used_colors() const;
};

// Empty iff the five LDBA well-formedness properties hold; each violation
// names the offending state or transition.
std::vector<std::string> validate_ldba(const Ldba& a);

// Folds every epsilon jump q -> p into letter transitions q -sigma-> delta(p, sigma)
// and drops the jump relation.  Language preserved.  Throws on a jump whose
// source is in Q_d or whose target is outside Q_d.
Ldba eliminate_jumps(const Ldba& a);

// True iff the automaton has an accepting run on u.v^omega from `from`
// (default: initial state).  Exact: searches the product of the automaton
// with the lasso positions for a reachable cycle through an accepting edge.
bool ldba_accepts_lasso(const Ldba& a, const LassoWord& w);
bool ldba_accepts_lasso(const Ldba& a, const LassoWord& w, std::uint32_t from);

// Reference acceptance for automata that still carry epsilon jumps: a jump
// may be taken as a free move before reading each letter.
bool ldba_accepts_lasso_with_jumps(const Ldba& a, const LassoWord& w);

bool dpa_accepts_lasso(const Dpa& d, const LassoWord& w);

// Complement: every color shifted up by one.
Dpa complement_dpa(const Dpa& d);

// Order- and parity-preserving remap of the used colors onto the minimal
// initial segment.
Dpa compress_colors(const Dpa& d);

} // namespace ldpa
