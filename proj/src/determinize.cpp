// Distributed under the MIT License.
// See LICENSE for details.

#include "ldpa/determinize.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ldpa {

namespace {

std::string render_ranking(const Ldba& a, const RankingState& r) {
    auto name = [&](std::uint32_t q) {
        if (q < a.state_names.size() && !a.state_names[q].empty())
            return a.state_names[q];
        return std::to_string(q);
    };
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < r.s.size(); ++i)
        os << (i ? "," : "") << name(r.s[i]);
    os << "},[";
    for (std::size_t i = 0; i < r.t.size(); ++i)
        os << (i ? "<" : "") << name(r.t[i]);
    os << "]";
    return os.str();
}

} // namespace

Determinization determinize(const Ldba& a, const Ord& ord, const DeterminizeOptions& opts) {
    if (!a.jumps.empty())
        throw std::invalid_argument("determinize requires a jump-free LDBA");
    RankingEngine engine(a, ord, opts.oracle, opts.keep_smallest);

    Determinization out;
    out.dpa.alphabet = a.alphabet;
    out.dpa.num_colors = engine.top_color();

    std::map<std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>, std::uint32_t>
        ids;
    auto intern = [&](RankingState r) {
        auto key = std::make_pair(r.s, r.t);
        auto it = ids.find(key);
        if (it != ids.end())
            return it->second;
        if (out.states.size() >= opts.budget)
            throw BudgetError("ranking-state budget of " + std::to_string(opts.budget) +
                              " exceeded");
        std::uint32_t id = out.dpa.add_state();
        ids.emplace(std::move(key), id);
        out.max_t = std::max<std::uint32_t>(out.max_t, static_cast<std::uint32_t>(r.t.size()));
        out.max_s = std::max<std::uint32_t>(out.max_s, static_cast<std::uint32_t>(r.s.size()));
        out.states.push_back(std::move(r));
        if (opts.progress)
            opts.progress->store(out.states.size(), std::memory_order_relaxed);
        return id;
    };

    RankingState init;
    if (a.in_qd[a.initial])
        throw std::invalid_argument("initial state lies in Q_d");
    init.s.push_back(a.initial);
    out.dpa.initial = intern(std::move(init));

    for (std::uint32_t q = 0; q < out.dpa.num_states; ++q) {
        if (opts.cancel && opts.cancel->load(std::memory_order_relaxed))
            throw CancelledError();
        RankingState cur = out.states[q]; // copy: states may reallocate
        for (Letter l = 0; l < a.alphabet.size(); ++l) {
            StepResult r = engine.step(cur.s, cur.t, l);
            std::uint32_t target = intern({std::move(r.s), std::move(r.t)});
            out.dpa.target[out.dpa.edge(q, l)] = target;
            out.dpa.color[out.dpa.edge(q, l)] = r.color;
        }
    }

    out.dpa.state_names.reserve(out.states.size());
    for (const RankingState& r : out.states)
        out.dpa.state_names.push_back(render_ranking(a, r));
    return out;
}

Dpa construct_dpa(const Ldba& a, const Ord& ord, std::size_t budget) {
    DeterminizeOptions opts;
    opts.budget = budget;
    return determinize(a, ord, opts).dpa;
}

Dpa construct_reduced_dpa(const Ldba& a, const Ord& ord, const RedundancyOracle& oracle,
                          std::size_t budget, bool keep_smallest) {
    DeterminizeOptions opts;
    opts.oracle = &oracle;
    opts.keep_smallest = keep_smallest;
    opts.budget = budget;
    return determinize(a, ord, opts).dpa;
}

RedundancyOracle syntactic_oracle(const Ldba& a) {
    if (!a.has_base)
        throw std::invalid_argument("automaton carries no base-index sets");
    std::size_t m = 0;
    for (const auto& set : a.base_sets)
        for (std::uint32_t i : set)
            m = std::max(m, static_cast<std::size_t>(i) + 1);
    return RedundancyOracle(a.base_sets, m);
}

WidthReport width_check(const RedundancyOracle& oracle, const Determinization& result) {
    WidthReport report;
    report.max_t = result.max_t;
    report.base_m = oracle.base_size();
    report.bound = oracle.base_size() + 1;
    report.checked = oracle.has_sets();
    report.ok = !report.checked || report.max_t <= report.bound;
    return report;
}

Ord choose_ord(const Ldba& a) { return Ord::discovery(a); }

Ord choose_ord(const Ldba& a, const std::vector<Fragment>& label_fragments) {
    auto category = [&](std::uint32_t q) {
        switch (label_fragments[q]) {
        case Fragment::PureEventual:
            return 0;
        case Fragment::Other:
            return 1;
        case Fragment::XASafety:
            return 2;
        }
        return 1;
    };
    std::vector<std::uint32_t> qd;
    for (std::uint32_t q = 0; q < a.num_states; ++q)
        if (a.in_qd[q])
            qd.push_back(q);
    std::stable_sort(qd.begin(), qd.end(),
                     [&](std::uint32_t x, std::uint32_t y) { return category(x) < category(y); });
    Ord ord;
    ord.rank.assign(a.num_states, Ord::kInf);
    std::uint32_t next = 1;
    for (std::uint32_t q : qd)
        ord.rank[q] = next++;
    return ord;
}

} // namespace ldpa
