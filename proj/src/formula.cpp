// Distributed under the MIT License.
// See LICENSE for details.

#include "ldpa/formula.hpp"

#include <algorithm>
#include <cassert>

namespace ldpa {

namespace {

bool cube_subset(const Cube& small, const Cube& big) {
    // both sorted
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

bool cube_less(const Cube& a, const Cube& b) {
    if (a.size() != b.size())
        return a.size() < b.size();
    return a < b;
}

} // namespace

Dnf normalize_dnf(Dnf d) {
    for (auto& cube : d) {
        std::sort(cube.begin(), cube.end());
        cube.erase(std::unique(cube.begin(), cube.end()), cube.end());
    }
    std::sort(d.begin(), d.end(), cube_less);
    d.erase(std::unique(d.begin(), d.end()), d.end());
    // Subsumption: a cube is dropped when a smaller kept cube is contained in
    // it.  Since cubes are visited smallest-first, kept cubes are exactly the
    // minimal ones, i.e. the prime implicants of the (monotone) function.
    Dnf kept;
    for (auto& cube : d) {
        bool subsumed = false;
        for (const auto& k : kept) {
            if (cube_subset(k, cube)) {
                subsumed = true;
                break;
            }
        }
        if (!subsumed)
            kept.push_back(std::move(cube));
    }
    return kept;
}

FormulaArena::FormulaArena() {
    tt_ = intern_with_dnf({Op::True}, Dnf{Cube{}});
    ff_ = intern_with_dnf({Op::False}, Dnf{});
}

FormulaId FormulaArena::intern(FormulaNode n) {
    FormulaId id = intern_with_dnf(n, Dnf{});
    if (dnfs_[id].empty() && id != ff_)
        dnfs_[id] = Dnf{Cube{id}}; // proper formula: a single variable
    return id;
}

FormulaId FormulaArena::intern_with_dnf(FormulaNode n, Dnf d) {
    auto key = std::make_tuple(n.op, n.atom, n.left, n.right);
    auto it = node_cache_.find(key);
    if (it != node_cache_.end())
        return it->second;
    FormulaId id = static_cast<FormulaId>(nodes_.size());
    nodes_.push_back(n);
    dnfs_.push_back(std::move(d));
    node_cache_.emplace(key, id);
    return id;
}

std::uint32_t FormulaArena::prop_index(std::string_view name) {
    auto it = prop_index_.find(std::string(name));
    if (it != prop_index_.end())
        return it->second;
    if (props_.size() >= 31)
        throw BudgetError("too many atomic propositions (limit 31)");
    std::uint32_t idx = static_cast<std::uint32_t>(props_.size());
    props_.emplace_back(name);
    prop_index_.emplace(std::string(name), idx);
    return idx;
}

FormulaId FormulaArena::atom(std::string_view name) {
    return intern({Op::Atom, prop_index(name)});
}

FormulaId FormulaArena::not_atom(std::string_view name) {
    return intern({Op::NotAtom, prop_index(name)});
}

FormulaId FormulaArena::atom_by_index(std::uint32_t ap, bool negated) {
    assert(ap < props_.size());
    return intern({negated ? Op::NotAtom : Op::Atom, ap});
}

FormulaId FormulaArena::negation(FormulaId f) {
    switch (op(f)) {
    case Op::True:
        return ff_;
    case Op::False:
        return tt_;
    case Op::Atom:
        return intern({Op::NotAtom, nodes_[f].atom});
    case Op::NotAtom:
        return intern({Op::Atom, nodes_[f].atom});
    case Op::Not:
        return nodes_[f].left;
    default:
        return intern({Op::Not, 0, f});
    }
}

FormulaId FormulaArena::represent(Dnf d) {
    if (d.empty())
        return ff_;
    if (d.size() == 1 && d[0].empty())
        return tt_;
    auto it = rep_cache_.find(d);
    if (it != rep_cache_.end())
        return it->second;
    // Build the representative as a left fold of conjuncts and disjuncts in
    // canonical order, registering every intermediate prefix (the prefixes
    // are themselves normalized DNFs).
    std::vector<FormulaId> cube_reps;
    cube_reps.reserve(d.size());
    for (const auto& cube : d) {
        FormulaId acc = cube[0];
        for (std::size_t i = 1; i < cube.size(); ++i) {
            Cube prefix(cube.begin(), cube.begin() + static_cast<std::ptrdiff_t>(i) + 1);
            acc = intern_with_dnf({Op::And, 0, acc, cube[i]}, Dnf{prefix});
            rep_cache_.emplace(Dnf{prefix}, acc);
        }
        cube_reps.push_back(acc);
    }
    FormulaId acc = cube_reps[0];
    for (std::size_t i = 1; i < cube_reps.size(); ++i) {
        Dnf prefix(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        acc = intern_with_dnf({Op::Or, 0, acc, cube_reps[i]}, prefix);
        rep_cache_.emplace(std::move(prefix), acc);
    }
    return acc;
}

FormulaId FormulaArena::from_dnf(const Dnf& normalized) { return represent(normalized); }

FormulaId FormulaArena::conj(FormulaId l, FormulaId r) {
    if (l == ff_ || r == ff_)
        return ff_;
    if (l == tt_)
        return r;
    if (r == tt_)
        return l;
    if (l == r)
        return l;
    Dnf d;
    for (const auto& cl : dnf(l)) {
        for (const auto& cr : dnf(r)) {
            Cube c = cl;
            c.insert(c.end(), cr.begin(), cr.end());
            d.push_back(std::move(c));
        }
    }
    return represent(normalize_dnf(std::move(d)));
}

FormulaId FormulaArena::disj(FormulaId l, FormulaId r) {
    if (l == tt_ || r == tt_)
        return tt_;
    if (l == ff_)
        return r;
    if (r == ff_)
        return l;
    if (l == r)
        return l;
    Dnf d = dnf(l);
    const Dnf& dr = dnf(r);
    d.insert(d.end(), dr.begin(), dr.end());
    return represent(normalize_dnf(std::move(d)));
}

FormulaId FormulaArena::next(FormulaId f) {
    if (f == tt_ || f == ff_)
        return f;
    return intern({Op::Next, 0, f});
}

FormulaId FormulaArena::eventually(FormulaId f) {
    if (f == tt_ || f == ff_)
        return f;
    return intern({Op::Eventually, 0, f});
}

FormulaId FormulaArena::always(FormulaId f) {
    if (f == tt_ || f == ff_)
        return f;
    return intern({Op::Always, 0, f});
}

FormulaId FormulaArena::until(FormulaId l, FormulaId r) {
    if (r == tt_ || r == ff_)
        return r; // a U tt = tt, a U ff = ff
    if (l == ff_)
        return r; // ff U b = b
    return intern({Op::Until, 0, l, r});
}

std::string FormulaArena::to_string(FormulaId f) const {
    // precedence: unary 4 > U 3 > & 2 > | 1
    auto render = [&](auto&& self, FormulaId g, int parent_prec) -> std::string {
        const FormulaNode& n = nodes_[g];
        auto wrap = [&](std::string s, int prec) {
            return prec < parent_prec ? "(" + std::move(s) + ")" : std::move(s);
        };
        switch (n.op) {
        case Op::True:
            return "tt";
        case Op::False:
            return "ff";
        case Op::Atom:
            return props_[n.atom];
        case Op::NotAtom:
            return "!" + props_[n.atom];
        case Op::Not:
            return "!" + self(self, n.left, 4);
        case Op::Next:
            return "X " + self(self, n.left, 4);
        case Op::Eventually:
            return "F " + self(self, n.left, 4);
        case Op::Always:
            return "G " + self(self, n.left, 4);
        case Op::Until:
            return wrap(self(self, n.left, 4) + " U " + self(self, n.right, 3), 3);
        case Op::And:
            return wrap(self(self, n.left, 2) + " & " + self(self, n.right, 3), 2);
        case Op::Or:
            return wrap(self(self, n.left, 1) + " | " + self(self, n.right, 2), 1);
        }
        return "?";
    };
    return render(render, f, 0);
}

std::vector<FormulaId> FormulaArena::subformulas(FormulaId f) const {
    std::vector<FormulaId> out;
    std::unordered_set<FormulaId> seen;
    auto walk = [&](auto&& self, FormulaId g) -> void {
        if (!seen.insert(g).second)
            return;
        const FormulaNode& n = nodes_[g];
        if (n.left != kNoFormula)
            self(self, n.left);
        if (n.right != kNoFormula)
            self(self, n.right);
        out.push_back(g);
    };
    walk(walk, f);
    return out;
}

FormulaId FormulaArena::to_nnf(FormulaId f) {
    auto rewrite = [&](auto&& self, FormulaId g, bool neg) -> FormulaId {
        const FormulaNode n = nodes_[g];
        switch (n.op) {
        case Op::True:
            return neg ? ff_ : tt_;
        case Op::False:
            return neg ? tt_ : ff_;
        case Op::Atom:
            return intern({neg ? Op::NotAtom : Op::Atom, n.atom});
        case Op::NotAtom:
            return intern({neg ? Op::Atom : Op::NotAtom, n.atom});
        case Op::Not:
            return self(self, n.left, !neg);
        case Op::And: {
            FormulaId l = self(self, n.left, neg);
            FormulaId r = self(self, n.right, neg);
            return neg ? disj(l, r) : conj(l, r);
        }
        case Op::Or: {
            FormulaId l = self(self, n.left, neg);
            FormulaId r = self(self, n.right, neg);
            return neg ? conj(l, r) : disj(l, r);
        }
        case Op::Next:
            return next(self(self, n.left, neg));
        case Op::Eventually:
            return neg ? always(self(self, n.left, true)) : eventually(self(self, n.left, false));
        case Op::Always:
            return neg ? eventually(self(self, n.left, true)) : always(self(self, n.left, false));
        case Op::Until:
            if (neg)
                throw NnfError("negated Until not in NNF fragment: !(" + to_string(g) + ")");
            return until(self(self, n.left, false), self(self, n.right, false));
        }
        return g;
    };
    return rewrite(rewrite, f, false);
}

FormulaId FormulaArena::af_step(FormulaId f, Letter nu) {
    std::uint64_t key = (static_cast<std::uint64_t>(f) << 32) | nu;
    auto it = af_cache_.find(key);
    if (it != af_cache_.end())
        return it->second;
    const FormulaNode n = nodes_[f];
    FormulaId result;
    switch (n.op) {
    case Op::True:
    case Op::False:
        result = f;
        break;
    case Op::Atom:
        result = ((nu >> n.atom) & 1u) ? tt_ : ff_;
        break;
    case Op::NotAtom:
        result = ((nu >> n.atom) & 1u) ? ff_ : tt_;
        break;
    case Op::And:
        result = conj(af_step(n.left, nu), af_step(n.right, nu));
        break;
    case Op::Or:
        result = disj(af_step(n.left, nu), af_step(n.right, nu));
        break;
    case Op::Next:
        result = n.left;
        break;
    case Op::Eventually:
        result = disj(af_step(n.left, nu), f);
        break;
    case Op::Always:
        result = conj(af_step(n.left, nu), f);
        break;
    case Op::Until:
        result = disj(af_step(n.right, nu), conj(af_step(n.left, nu), f));
        break;
    case Op::Not:
        throw std::logic_error("af_step requires NNF input");
    default:
        throw std::logic_error("af_step: bad node");
    }
    af_cache_.emplace(key, result);
    return result;
}

FormulaId FormulaArena::af_word(FormulaId f, const std::vector<Letter>& word) {
    for (Letter nu : word)
        f = af_step(f, nu);
    return f;
}

FormulaId FormulaArena::substitute(FormulaId f, const std::unordered_set<FormulaId>& tt_set,
                                   const std::unordered_set<FormulaId>& ff_set) {
    std::unordered_map<FormulaId, FormulaId> memo;
    auto sub = [&](auto&& self, FormulaId g) -> FormulaId {
        if (tt_set.count(g))
            return tt_;
        if (ff_set.count(g))
            return ff_;
        auto it = memo.find(g);
        if (it != memo.end())
            return it->second;
        const FormulaNode n = nodes_[g];
        FormulaId result;
        switch (n.op) {
        case Op::True:
        case Op::False:
        case Op::Atom:
        case Op::NotAtom:
            result = g;
            break;
        case Op::Not:
            result = negation(self(self, n.left));
            break;
        case Op::And:
            result = conj(self(self, n.left), self(self, n.right));
            break;
        case Op::Or:
            result = disj(self(self, n.left), self(self, n.right));
            break;
        case Op::Next:
            result = next(self(self, n.left));
            break;
        case Op::Eventually:
            result = eventually(self(self, n.left));
            break;
        case Op::Always:
            result = always(self(self, n.left));
            break;
        case Op::Until:
            result = until(self(self, n.left), self(self, n.right));
            break;
        default:
            result = g;
            break;
        }
        memo.emplace(g, result);
        return result;
    };
    return sub(sub, f);
}

std::vector<FormulaId> FormulaArena::g_subformulas(FormulaId f) const {
    std::vector<FormulaId> out;
    for (FormulaId g : subformulas(f)) {
        if (op(g) == Op::Always)
            out.push_back(g);
    }
    return out;
}

bool FormulaArena::eval_lasso(FormulaId f, const LassoWord& w) const {
    const std::size_t n = w.positions();
    if (w.period.empty())
        throw std::invalid_argument("eval_lasso: lasso needs a nonempty period");
    if (n > 64)
        throw std::invalid_argument("eval_lasso: lasso must have at most 64 positions");
    const std::uint64_t all = n == 64 ? ~0ull : (1ull << n) - 1;
    const std::size_t loop = w.prefix.size();
    // val bit i = formula holds at position i; shift moves each position to
    // its successor, with the last position looping back to the period start.
    auto advance = [&](std::uint64_t v) {
        std::uint64_t shifted = (v >> 1) & all & ~(1ull << (n - 1));
        if ((v >> loop) & 1u) // loop target feeds the last position
            shifted |= 1ull << (n - 1);
        return shifted;
    };
    std::unordered_map<FormulaId, std::uint64_t> val;
    auto eval = [&](auto&& self, FormulaId g) -> std::uint64_t {
        auto it = val.find(g);
        if (it != val.end())
            return it->second;
        const FormulaNode& nd = nodes_[g];
        std::uint64_t v = 0;
        switch (nd.op) {
        case Op::True:
            v = all;
            break;
        case Op::False:
            v = 0;
            break;
        case Op::Atom:
        case Op::NotAtom: {
            for (std::size_t i = 0; i < n; ++i)
                if ((w.at(i) >> nd.atom) & 1u)
                    v |= 1ull << i;
            if (nd.op == Op::NotAtom)
                v = ~v & all;
            break;
        }
        case Op::Not:
            v = ~self(self, nd.left) & all;
            break;
        case Op::And:
            v = self(self, nd.left) & self(self, nd.right);
            break;
        case Op::Or:
            v = self(self, nd.left) | self(self, nd.right);
            break;
        case Op::Next:
            v = advance(self(self, nd.left));
            break;
        case Op::Eventually: {
            std::uint64_t body = self(self, nd.left);
            v = 0; // least fixpoint
            for (;;) {
                std::uint64_t nv = body | advance(v);
                if (nv == v)
                    break;
                v = nv;
            }
            break;
        }
        case Op::Always: {
            std::uint64_t body = self(self, nd.left);
            v = all; // greatest fixpoint
            for (;;) {
                std::uint64_t nv = body & advance(v);
                if (nv == v)
                    break;
                v = nv;
            }
            break;
        }
        case Op::Until: {
            std::uint64_t hold = self(self, nd.left);
            std::uint64_t goal = self(self, nd.right);
            v = 0; // least fixpoint
            for (;;) {
                std::uint64_t nv = goal | (hold & advance(v));
                if (nv == v)
                    break;
                v = nv;
            }
            break;
        }
        }
        val.emplace(g, v);
        return v;
    };
    return (eval(eval, f) & 1u) != 0;
}

Fragment FormulaArena::classify_fragment(FormulaId f) const {
    auto pure_eventual = [&](auto&& self, FormulaId g) -> bool {
        const FormulaNode& n = nodes_[g];
        switch (n.op) {
        case Op::Eventually:
            return true;
        case Op::And:
        case Op::Or:
            return self(self, n.left) && self(self, n.right);
        default:
            return false;
        }
    };
    auto xa_safety = [&](auto&& self, FormulaId g) -> bool {
        const FormulaNode& n = nodes_[g];
        switch (n.op) {
        case Op::True:
        case Op::False:
        case Op::Atom:
        case Op::NotAtom:
            return true;
        case Op::Next:
            return self(self, n.left);
        case Op::And:
        case Op::Or:
            return self(self, n.left) && self(self, n.right);
        default:
            return false;
        }
    };
    if (pure_eventual(pure_eventual, f))
        return Fragment::PureEventual;
    if (xa_safety(xa_safety, f))
        return Fragment::XASafety;
    return Fragment::Other;
}

} // namespace ldpa
