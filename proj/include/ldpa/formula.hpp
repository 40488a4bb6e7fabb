// Distributed under the MIT License.
// See LICENSE for details.

#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ldpa/lasso.hpp"

namespace ldpa {

// ── Formula representation ──────────────────────────────────────────────────
//
// Formulas live in an arena as an interned syntax DAG: structurally equal
// trees share one id, so id equality is structural equality.  The boolean
// connectives are *canonicalizing* constructors: conj/disj compute the
// canonical propositional form of the result (a sorted, subsumption-free DNF
// over maximal proper subformulas) and return its unique representative.
// Hence every id handed out by the arena is the canonical representative of
// its propositional-equivalence class, and two formulas are propositionally
// equivalent iff their ids coincide.
//
// Temporal constructors absorb boolean constants (X tt = tt, F ff = ff, ...)
// so that partial evaluation of formulas collapses eagerly.

enum class Op : std::uint8_t {
    True,
    False,
    Atom,
    NotAtom,
    Not, // general negation; only valid before NNF rewriting
    And,
    Or,
    Next,
    Eventually,
    Always,
    Until,
};

using FormulaId = std::uint32_t;
inline constexpr FormulaId kNoFormula = 0xffffffffu;

// Canonical propositional form: set of conjuncts, each a sorted set of
// proper-subformula ids.  tt is {{}} (one empty conjunct), ff is {}.
using Cube = std::vector<FormulaId>;
using Dnf = std::vector<Cube>;

struct FormulaNode {
    Op op;
    std::uint32_t atom = 0; // Atom/NotAtom: index into the proposition table
    FormulaId left = kNoFormula;
    FormulaId right = kNoFormula;
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

struct NnfError : std::runtime_error {
    explicit NnfError(const std::string& msg) : std::runtime_error(msg) {}
};

struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class Fragment { PureEventual, XASafety, Other };

class FormulaArena {
public:
    FormulaArena();

    FormulaArena(const FormulaArena&) = delete;
    FormulaArena& operator=(const FormulaArena&) = delete;

    // ── constructors ────────────────────────────────────────────────────
    FormulaId tt() const { return tt_; }
    FormulaId ff() const { return ff_; }
    FormulaId atom(std::string_view name);
    FormulaId not_atom(std::string_view name);
    FormulaId atom_by_index(std::uint32_t ap, bool negated);
    FormulaId negation(FormulaId f); // pre-NNF negation node
    FormulaId conj(FormulaId l, FormulaId r);
    FormulaId disj(FormulaId l, FormulaId r);
    FormulaId next(FormulaId f);
    FormulaId eventually(FormulaId f);
    FormulaId always(FormulaId f);
    FormulaId until(FormulaId l, FormulaId r);

    // ── inspection ──────────────────────────────────────────────────────
    const FormulaNode& node(FormulaId f) const { return nodes_[f]; }
    Op op(FormulaId f) const { return nodes_[f].op; }
    std::size_t size() const { return nodes_.size(); }
    const std::vector<std::string>& props() const { return props_; }
    std::uint32_t prop_count() const { return static_cast<std::uint32_t>(props_.size()); }

    // Canonical propositional form of f.  The representative of the class is
    // f itself; canonicalization is idempotent by construction.
    const Dnf& dnf(FormulaId f) const { return dnfs_[f]; }

    // Rebuilds the representative of a DNF.  Exposed for tests.
    FormulaId from_dnf(const Dnf& normalized);

    std::string to_string(FormulaId f) const;

    // All distinct subformula ids of f, in DFS postorder (children first).
    std::vector<FormulaId> subformulas(FormulaId f) const;

    // ── operations ──────────────────────────────────────────────────────

    // Negation-normal form.  Rejects formulas whose NNF would need an
    // operator outside the tt/ff/a/!a/and/or/X/F/G/U grammar (negated Until).
    FormulaId to_nnf(FormulaId f);

    // Syntactic derivative "f after nu".  Requires f in NNF.
    FormulaId af_step(FormulaId f, Letter nu);
    FormulaId af_word(FormulaId f, const std::vector<Letter>& word);

    // f with maximal occurrences of formulas in tt_set replaced by tt and of
    // formulas in ff_set replaced by ff, rebuilt canonically.
    FormulaId substitute(FormulaId f, const std::unordered_set<FormulaId>& tt_set,
                         const std::unordered_set<FormulaId>& ff_set);

    // All G-subformulas of f in DFS postorder.
    std::vector<FormulaId> g_subformulas(FormulaId f) const;

    // Ground-truth LTL semantics on a lasso word.  Letters are bitmasks over
    // props().  Handles general Not nodes, so it can check NNF rewriting.
    bool eval_lasso(FormulaId f, const LassoWord& w) const;

    Fragment classify_fragment(FormulaId f) const;

private:
    FormulaId intern(FormulaNode n);
    FormulaId intern_with_dnf(FormulaNode n, Dnf d);
    FormulaId represent(Dnf d); // d must be normalized
    std::uint32_t prop_index(std::string_view name);

    std::vector<FormulaNode> nodes_;
    std::vector<Dnf> dnfs_;
    std::map<std::tuple<Op, std::uint32_t, FormulaId, FormulaId>, FormulaId> node_cache_;
    std::map<Dnf, FormulaId> rep_cache_;
    std::vector<std::string> props_;
    std::unordered_map<std::string, std::uint32_t> prop_index_;
    std::unordered_map<std::uint64_t, FormulaId> af_cache_;
    FormulaId tt_ = kNoFormula;
    FormulaId ff_ = kNoFormula;
};

// Normalizes a DNF: sorts cubes, removes duplicates and subsumed cubes
// (supersets of another cube).  For the monotone skeletons produced by NNF
// formulas the result is the unique minimal DNF of the boolean function.
Dnf normalize_dnf(Dnf d);

// Parses the ASCII LTL grammar: literals tt/ff/true/false, identifiers,
// unary ! X F G, binary & | U ->, parentheses.  Implications are desugared
// to !a | b during parsing; the result may contain Not nodes.
FormulaId parse_ltl(std::string_view text, FormulaArena& arena);

} // namespace ldpa
