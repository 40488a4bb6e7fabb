// Distributed under the MIT License.
// See LICENSE for details.

#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ldpa/automata.hpp"
#include "ldpa/formula.hpp"
#include "ldpa/ltl2ldba.hpp"
#include "ldpa/rundag.hpp"

namespace ldpa::testing {

// The running two-letter LDBA example: states 1..4 (ids 0..3), Q_d = {2,3,4},
// accepting self-loops (2,a,2) and (3,b,3), sink 4.
inline Ldba fig1_ldba() {
    Ldba a;
    a.alphabet = Alphabet::symbols({"a", "b"});
    for (int i = 0; i < 4; ++i)
        a.add_state(i >= 1);
    a.state_names = {"1", "2", "3", "4"};
    const Letter la = 0, lb = 1;
    a.add_edge(0, la, 0);
    a.add_edge(0, la, 1);
    a.add_edge(0, lb, 0);
    a.add_edge(0, lb, 2);
    a.add_edge(1, la, 1, true);
    a.add_edge(1, lb, 3);
    a.add_edge(2, lb, 2, true);
    a.add_edge(2, la, 3);
    a.add_edge(3, la, 3);
    a.add_edge(3, lb, 3);
    return a;
}

// Base sets realizing the oracle "L(4) is empty": states 2 and 3 own distinct
// base languages, state 4 owns none.
inline Ldba fig1_with_base() {
    Ldba a = fig1_ldba();
    a.base_sets = {{0, 1}, {0}, {1}, {}};
    a.has_base = true;
    return a;
}

// Lasso over the two-letter symbol alphabet from strings like ("abb", "ab").
inline LassoWord sym_lasso(const std::string& prefix, const std::string& period) {
    LassoWord w;
    for (char c : prefix)
        w.prefix.push_back(static_cast<Letter>(c - 'a'));
    for (char c : period)
        w.period.push_back(static_cast<Letter>(c - 'a'));
    return w;
}

// Enumerates every lasso with |u| <= max_prefix, 1 <= |v| <= max_period.
template <typename Visit>
void for_each_lasso(std::uint32_t letters, std::size_t max_prefix, std::size_t max_period,
                    Visit&& visit) {
    for (std::size_t ul = 0; ul <= max_prefix; ++ul) {
        for (std::size_t vl = 1; vl <= max_period; ++vl) {
            LassoWord w;
            w.prefix.assign(ul, 0);
            w.period.assign(vl, 0);
            for (;;) {
                visit(const_cast<const LassoWord&>(w));
                std::size_t pos = 0;
                bool carried = true;
                for (; pos < ul + vl && carried; ++pos) {
                    Letter& slot = pos < ul ? w.prefix[pos] : w.period[pos - ul];
                    if (++slot == letters)
                        slot = 0;
                    else
                        carried = false;
                }
                if (carried)
                    break;
            }
        }
    }
}

inline LassoWord random_lasso(std::mt19937_64& rng, std::uint32_t letters,
                              std::size_t max_prefix, std::size_t max_period) {
    LassoWord w;
    std::size_t ul = rng() % (max_prefix + 1);
    std::size_t vl = 1 + rng() % max_period;
    for (std::size_t i = 0; i < ul; ++i)
        w.prefix.push_back(static_cast<Letter>(rng() % letters));
    for (std::size_t i = 0; i < vl; ++i)
        w.period.push_back(static_cast<Letter>(rng() % letters));
    return w;
}

// Random NNF formula; with allow_not also emits general negations.
inline FormulaId random_formula(FormulaArena& a, std::mt19937_64& rng, int depth, int num_aps,
                                bool allow_not = false) {
    auto ap = [&]() { return std::string(1, static_cast<char>('a' + rng() % num_aps)); };
    if (depth == 0) {
        switch (rng() % 6) {
        case 0:
            return a.tt();
        case 1:
            return a.ff();
        case 2:
        case 3:
            return a.atom(ap());
        default:
            return a.not_atom(ap());
        }
    }
    auto sub = [&]() { return random_formula(a, rng, depth - 1, num_aps, allow_not); };
    switch (rng() % (allow_not ? 10 : 9)) {
    case 0:
        return a.conj(sub(), sub());
    case 1:
        return a.disj(sub(), sub());
    case 2:
        return a.next(sub());
    case 3:
        return a.eventually(sub());
    case 4:
        return a.always(sub());
    case 5:
        return a.until(sub(), sub());
    case 6:
    case 7:
    case 8:
        return random_formula(a, rng, 0, num_aps, allow_not);
    default:
        return a.negation(sub());
    }
}

// Letter bitmask from proposition names, resolved via the arena's table.
inline Letter mask(const FormulaArena& a, std::initializer_list<const char*> props) {
    Letter m = 0;
    for (const char* p : props) {
        const auto& table = a.props();
        auto it = std::find(table.begin(), table.end(), p);
        if (it == table.end())
            throw std::logic_error(std::string("unknown proposition ") + p);
        m |= 1u << (it - table.begin());
    }
    return m;
}

// Golden corpus for the end-to-end suites: |Ap| <= 3, modest sizes.
inline const std::vector<std::string>& corpus() {
    static const std::vector<std::string> formulas = {
        "tt",
        "ff",
        "a",
        "!a",
        "a & b",
        "a | b",
        "X a",
        "X X a",
        "F a",
        "G a",
        "a U b",
        "F G a",
        "G F a",
        "F G a | F G b",
        "G F a & G F b",
        "G (a -> F b)",
        "F (a & X b)",
        "G a | F b",
        "X (a U b)",
        "(a U b) | G a",
        "a -> X b",
        "G (a -> X b)",
        "F (a & G b)",
        "G (a | X a)",
        "a U (b U c)",
        "F a & F b & F c",
        "G F (a & b)",
        "F G (a | b)",
        "(G F p1 | F G p2)",                      // R(1)
        "(G F p1) -> (G F q1)",                   // G(1)
        "(G F p1 -> G F q1)",                     // F(1)
        "!((G F p1) -> G (q -> F r))",            // theta(1)
        "c | X G (a | F b)",
    };
    return formulas;
}

// Run-prefix pre-order, materialized: per level, the Q_d vertices sorted by
// their lexicographically minimal Ord signature (the brute-force reading of
// the ordering definition, used to validate the incremental three-case rule).
inline std::vector<std::vector<std::uint32_t>> brute_level_orders(const Ldba& a, const Ord& ord,
                                                                  const LassoWord& w,
                                                                  std::size_t horizon) {
    using Sig = std::vector<std::uint32_t>;
    std::map<std::uint32_t, Sig> cur;
    cur[a.initial] = {ord.rank[a.initial]};
    std::vector<std::vector<std::uint32_t>> out;
    auto level_order = [&]() {
        std::vector<std::pair<Sig, std::uint32_t>> qd;
        for (const auto& [q, sig] : cur)
            if (a.in_qd[q])
                qd.emplace_back(sig, q);
        std::sort(qd.begin(), qd.end());
        std::vector<std::uint32_t> t;
        for (const auto& [sig, q] : qd)
            t.push_back(q);
        return t;
    };
    out.push_back(level_order());
    for (std::size_t i = 0; i < horizon; ++i) {
        std::map<std::uint32_t, Sig> next;
        for (const auto& [q, sig] : cur) {
            for (std::uint32_t p : a.succ[q][w.at(i)]) {
                Sig cand = sig;
                cand.push_back(ord.rank[p]);
                auto it = next.find(p);
                if (it == next.end() || cand < it->second)
                    next[p] = std::move(cand);
            }
        }
        cur = std::move(next);
        out.push_back(level_order());
    }
    return out;
}

// Deterministic-Buchi acceptance of the G-monitor from a given state: iterate
// the period until the state at offset 0 repeats and look for a fired
// transition on the cycle.
inline bool monitor_accepts(FormulaArena& arena, FormulaId psi, MonitorState from,
                            const LassoWord& w) {
    MonitorState m = from;
    for (Letter nu : w.prefix)
        m = monitor_step(arena, psi, m, nu).state;
    std::map<std::pair<FormulaId, FormulaId>, std::size_t> seen;
    std::vector<bool> fired_in_iter;
    for (std::size_t iter = 0;; ++iter) {
        auto [it, fresh] = seen.emplace(std::make_pair(m.checking, m.gathered), iter);
        if (!fresh) {
            for (std::size_t k = it->second; k < iter; ++k)
                if (fired_in_iter[k])
                    return true;
            return false;
        }
        bool fired = false;
        for (Letter nu : w.period) {
            MonitorResult r = monitor_step(arena, psi, m, nu);
            fired |= r.fired;
            m = r.state;
        }
        fired_in_iter.push_back(fired);
    }
}

// Sound base assignment for an arbitrary LDBA: states with empty language
// (no accepting cycle reachable inside Q_d) own the empty index set, every
// other state a distinct singleton.  The induced oracle can merge exactly the
// dead vertices, which is sound for any automaton.
inline std::vector<std::vector<std::uint32_t>> dead_state_base(const Ldba& a) {
    // forward reachability inside Q_d
    std::vector<std::set<std::uint32_t>> reach(a.num_states);
    for (std::uint32_t q = 0; q < a.num_states; ++q) {
        if (!a.in_qd[q])
            continue;
        std::vector<std::uint32_t> todo{q};
        reach[q].insert(q);
        while (!todo.empty()) {
            std::uint32_t u = todo.back();
            todo.pop_back();
            for (Letter l = 0; l < a.alphabet.size(); ++l)
                for (std::uint32_t v : a.succ[u][l])
                    if (reach[q].insert(v).second)
                        todo.push_back(v);
        }
    }
    std::vector<std::vector<std::uint32_t>> base(a.num_states);
    std::uint32_t next_index = 0;
    for (std::uint32_t q = 0; q < a.num_states; ++q) {
        if (!a.in_qd[q]) {
            base[q] = {next_index++}; // outside Q_d: unused by the reduction
            continue;
        }
        bool live = false;
        for (std::uint32_t u : reach[q]) {
            for (Letter l = 0; l < a.alphabet.size() && !live; ++l)
                for (std::size_t i = 0; i < a.succ[u][l].size() && !live; ++i)
                    if (a.acc[u][l][i] && reach[a.succ[u][l][i]].count(u))
                        live = true; // accepting edge on a cycle through u
            if (live)
                break;
        }
        if (live)
            base[q] = {next_index++};
        // dead states keep the empty set
    }
    return base;
}

// Random strict total order on Q_d.
inline Ord random_ord(const Ldba& a, std::mt19937_64& rng) {
    std::vector<std::uint32_t> qd;
    for (std::uint32_t q = 0; q < a.num_states; ++q)
        if (a.in_qd[q])
            qd.push_back(q);
    std::shuffle(qd.begin(), qd.end(), rng);
    Ord ord;
    ord.rank.assign(a.num_states, Ord::kInf);
    std::uint32_t next = 1;
    for (std::uint32_t q : qd)
        ord.rank[q] = next++;
    return ord;
}

} // namespace ldpa::testing
