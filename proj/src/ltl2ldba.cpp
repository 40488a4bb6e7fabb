// Distributed under the MIT License.
// See LICENSE for details.

#include "ldpa/ltl2ldba.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace ldpa {

MonitorResult monitor_step(FormulaArena& arena, FormulaId psi, const MonitorState& m, Letter nu) {
    FormulaId checked = arena.af_step(m.checking, nu);
    FormulaId gathered = arena.conj(arena.af_step(m.gathered, nu), psi);
    if (checked == arena.tt())
        return {{gathered, arena.tt()}, true};
    return {{checked, gathered}, false};
}

namespace {

class Translator {
public:
    Translator(FormulaArena& arena, FormulaId phi, std::size_t budget)
        : arena_(arena), phi_(phi), budget_(budget) {}

    LtlLdba run() {
        out_.arena = &arena_;
        out_.phi = phi_;
        out_.g_list = arena_.g_subformulas(phi_);
        if (out_.g_list.size() > 20)
            throw BudgetError("too many G-subformulas (" + std::to_string(out_.g_list.size()) +
                              ")");
        out_.aut.alphabet = Alphabet::subsets(arena_.props());

        build_initial_component();
        out_.initial_states = out_.aut.num_states;
        attach_jumps_and_close();
        label_states();
        return std::move(out_);
    }

private:
    std::uint32_t letters() const { return out_.aut.alphabet.size(); }

    void check_budget() const {
        if (out_.aut.num_states >= budget_)
            throw BudgetError("LDBA state budget of " + std::to_string(budget_) + " exceeded");
    }

    // ── initial component: Reach(phi) under af ─────────────────────────
    void build_initial_component() {
        out_.aut.initial = intern_init(phi_);
        for (std::uint32_t q = 0; q < out_.aut.num_states; ++q) {
            FormulaId f = out_.descs[q].formula;
            for (Letter nu = 0; nu < letters(); ++nu) {
                std::uint32_t t = intern_init(arena_.af_step(f, nu));
                out_.aut.add_edge(q, nu, t, false);
            }
        }
    }

    std::uint32_t intern_init(FormulaId f) {
        auto it = init_ids_.find(f);
        if (it != init_ids_.end())
            return it->second;
        check_budget();
        std::uint32_t id = out_.aut.add_state(false);
        StateDesc d;
        d.formula = f;
        out_.descs.push_back(std::move(d));
        init_ids_.emplace(f, id);
        return id;
    }

    // ── accepting subcomponents ─────────────────────────────────────────
    // phi' with members of G replaced by tt and the other G-subformulas by ff
    FormulaId substitute_gset(FormulaId f, std::uint32_t gset) {
        auto key = std::make_pair(f, gset);
        auto it = subst_cache_.find(key);
        if (it != subst_cache_.end())
            return it->second;
        std::unordered_set<FormulaId> tt_set, ff_set;
        for (std::size_t i = 0; i < out_.g_list.size(); ++i) {
            if ((gset >> i) & 1u)
                tt_set.insert(out_.g_list[i]);
            else
                ff_set.insert(out_.g_list[i]);
        }
        FormulaId result = arena_.substitute(f, tt_set, ff_set);
        subst_cache_.emplace(key, result);
        return result;
    }

    // body of the i-th monitor of subcomponent G: psi_i[G]
    FormulaId monitor_body(std::size_t i, std::uint32_t gset) {
        return substitute_gset(arena_.node(out_.g_list[i]).left, gset);
    }

    struct AccKey {
        std::uint32_t gset;
        FormulaId first;
        std::vector<MonitorState> monitors;
        std::uint32_t counter;
        auto tie() const { return std::make_tuple(gset, first, monitors_flat(), counter); }
        std::vector<FormulaId> monitors_flat() const {
            std::vector<FormulaId> v;
            for (const auto& m : monitors) {
                v.push_back(m.checking);
                v.push_back(m.gathered);
            }
            return v;
        }
        bool operator<(const AccKey& o) const { return tie() < o.tie(); }
    };

    std::uint32_t intern_acc(AccKey key) {
        auto it = acc_ids_.find(key);
        if (it != acc_ids_.end())
            return it->second;
        check_budget();
        std::uint32_t id = out_.aut.add_state(true);
        StateDesc d;
        d.accepting_part = true;
        d.gset = key.gset;
        d.first = key.first;
        d.monitors = key.monitors;
        d.counter = key.counter;
        out_.descs.push_back(std::move(d));
        acc_ids_.emplace(std::move(key), id);
        return id;
    }

    // Jump target for initial state phi' and subset G; kNoFormula-style
    // nullopt is signalled by returning false when the target is dead.
    bool jump_target(FormulaId phi_prime, std::uint32_t gset, AccKey& key) {
        FormulaId first = substitute_gset(phi_prime, gset);
        if (first == arena_.ff())
            return false; // dead target, pruned
        key.gset = gset;
        key.first = first;
        key.monitors.clear();
        for (std::size_t i = 0; i < out_.g_list.size(); ++i)
            if ((gset >> i) & 1u)
                key.monitors.push_back({monitor_body(i, gset), arena_.tt()});
        key.counter = 1;
        return true;
    }

    void attach_jumps_and_close() {
        std::uint32_t n_init = out_.aut.num_states;
        std::uint32_t n_subsets = 1u << out_.g_list.size();
        for (std::uint32_t q = 0; q < n_init; ++q) {
            for (std::uint32_t gset = 0; gset < n_subsets; ++gset) {
                AccKey key;
                if (!jump_target(out_.descs[q].formula, gset, key))
                    continue;
                out_.aut.jumps.emplace_back(q, intern_acc(std::move(key)));
            }
        }
        // states are only appended, so a plain sweep visits every new one
        for (std::uint32_t q = n_init; q < out_.aut.num_states; ++q)
            expand_acc(q);
    }

    void expand_acc(std::uint32_t q) {
        const StateDesc src = out_.descs[q];
        std::size_t n = src.monitors.size();
        for (Letter nu = 0; nu < letters(); ++nu) {
            AccKey key;
            key.gset = src.gset;
            key.first = arena_.af_step(src.first, nu);
            std::vector<bool> fires;
            std::size_t mi = 0;
            for (std::size_t i = 0; i < out_.g_list.size(); ++i) {
                if (!((src.gset >> i) & 1u))
                    continue;
                MonitorResult r = monitor_step(arena_, monitor_body(i, src.gset),
                                               src.monitors[mi], nu);
                key.monitors.push_back(r.state);
                fires.push_back(src.first == arena_.tt() && r.fired);
                ++mi;
            }
            bool accepting;
            if (n == 0) {
                key.counter = 1;
                accepting = src.first == arena_.tt();
            } else {
                // round-robin: advance past every firing index; accepting iff
                // the counter wrapped
                std::uint32_t j = src.counter;
                std::uint32_t advanced = 0;
                while (advanced < n && fires[j - 1]) {
                    j = j % static_cast<std::uint32_t>(n) + 1;
                    ++advanced;
                }
                accepting = src.counter + advanced > n;
                key.counter = j;
            }
            std::uint32_t t = intern_acc(std::move(key));
            out_.aut.add_edge(q, nu, t, accepting);
        }
    }

    // ── labels and base-index sets ──────────────────────────────────────
    void label_states() {
        out_.labels.reserve(out_.aut.num_states);
        for (std::uint32_t q = 0; q < out_.aut.num_states; ++q)
            out_.labels.push_back(label_of(out_.descs[q]));
        std::map<Cube, std::uint32_t> conjunct_ids;
        for (std::uint32_t q = 0; q < out_.aut.num_states; ++q) {
            std::vector<std::uint32_t> set;
            for (const Cube& cube : arena_.dnf(out_.labels[q])) {
                auto [it, fresh] = conjunct_ids.emplace(
                    cube, static_cast<std::uint32_t>(out_.base_table.size()));
                if (fresh)
                    out_.base_table.push_back(cube);
                set.push_back(it->second);
            }
            std::sort(set.begin(), set.end());
            out_.aut.base_sets.push_back(std::move(set));
        }
        out_.aut.has_base = true;
        out_.aut.state_names.reserve(out_.aut.num_states);
        for (std::uint32_t q = 0; q < out_.aut.num_states; ++q) {
            std::string name = render_state(out_.descs[q]);
            // accepting-part states additionally carry their language label
            if (out_.descs[q].accepting_part)
                name += " :: " + arena_.to_string(out_.labels[q]);
            out_.aut.state_names.push_back(std::move(name));
        }
    }

    FormulaId label_of(const StateDesc& d) {
        if (!d.accepting_part)
            return d.formula;
        // first & xi_1 & xi_2 & ... & G(psi_i[G]) for every member of G
        FormulaId label = d.first;
        std::size_t mi = 0;
        for (std::size_t i = 0; i < out_.g_list.size(); ++i) {
            if (!((d.gset >> i) & 1u))
                continue;
            label = arena_.conj(label, d.monitors[mi].checking);
            label = arena_.conj(label, d.monitors[mi].gathered);
            label = arena_.conj(label, arena_.always(monitor_body(i, d.gset)));
            ++mi;
        }
        return label;
    }

    std::string render_state(const StateDesc& d) {
        if (!d.accepting_part)
            return arena_.to_string(d.formula);
        std::ostringstream os;
        os << "<" << arena_.to_string(d.first);
        std::size_t mi = 0;
        for (std::size_t i = 0; i < out_.g_list.size(); ++i) {
            if (!((d.gset >> i) & 1u))
                continue;
            os << ",(" << arena_.to_string(d.monitors[mi].checking) << ","
               << arena_.to_string(d.monitors[mi].gathered) << ")";
            ++mi;
        }
        os << ">";
        if (d.monitors.size() > 1)
            os << "#" << d.counter;
        return os.str();
    }

    FormulaArena& arena_;
    FormulaId phi_;
    std::size_t budget_;
    LtlLdba out_;
    std::unordered_map<FormulaId, std::uint32_t> init_ids_;
    std::map<AccKey, std::uint32_t> acc_ids_;
    std::map<std::pair<FormulaId, std::uint32_t>, FormulaId> subst_cache_;
};

} // namespace

std::vector<Fragment> LtlLdba::label_fragments() const {
    std::vector<Fragment> out;
    out.reserve(labels.size());
    for (FormulaId label : labels)
        out.push_back(arena->classify_fragment(label));
    return out;
}

LtlLdba translate(FormulaArena& arena, FormulaId phi, std::size_t budget) {
    return Translator(arena, phi, budget).run();
}

} // namespace ldpa
