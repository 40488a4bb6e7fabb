// Distributed under the MIT License.
// See LICENSE for details.

#include "ldpa/rundag.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace ldpa {

Ord Ord::discovery(const Ldba& a) {
    Ord ord;
    ord.rank.assign(a.num_states, kInf);
    std::uint32_t next = 1;
    for (std::uint32_t q = 0; q < a.num_states; ++q)
        if (a.in_qd[q])
            ord.rank[q] = next++;
    return ord;
}

RedundancyOracle::RedundancyOracle(std::vector<std::vector<std::uint32_t>> sets,
                                   std::size_t base_size)
    : sets_(std::move(sets)), base_size_(base_size) {}

bool RedundancyOracle::is_redundant(std::uint32_t v,
                                    const std::vector<std::uint32_t>& prefix) const {
    const auto& need = sets_[v];
    if (need.empty())
        return true; // empty union covers the empty language
    std::set<std::uint32_t> have;
    for (std::uint32_t q : prefix)
        have.insert(sets_[q].begin(), sets_[q].end());
    return std::all_of(need.begin(), need.end(),
                       [&](std::uint32_t i) { return have.count(i) != 0; });
}

RankingEngine::RankingEngine(const Ldba& a, const Ord& ord, const RedundancyOracle* oracle,
                             bool keep_smallest)
    : a_(a), ord_(ord), oracle_(oracle), keep_smallest_(keep_smallest),
      qd_count_(static_cast<std::uint32_t>(a.qd_size())) {}

StepResult RankingEngine::step(const std::vector<std::uint32_t>& s1,
                               const std::vector<std::uint32_t>& t1, Letter sigma) const {
    StepResult out;

    // s2 = post(s1) outside Q_d; Q_d successors of s1 are fresh candidates.
    std::set<std::uint32_t> s2;
    std::set<std::uint32_t> fresh_candidates;
    for (std::uint32_t q : s1) {
        for (std::uint32_t p : a_.succ[q][sigma]) {
            if (a_.in_qd[p])
                fresh_candidates.insert(p);
            else
                s2.insert(p);
        }
    }
    out.s.assign(s2.begin(), s2.end());

    // Continuing vertices, ordered by their minimal (= first) parent in t1.
    std::vector<std::uint32_t> t2;
    std::vector<std::uint32_t> succ_of(t1.size());
    for (std::size_t i = 0; i < t1.size(); ++i) {
        std::uint32_t p = a_.qd_succ(t1[i], sigma);
        succ_of[i] = p;
        if (std::find(t2.begin(), t2.end(), p) == t2.end())
            t2.push_back(p);
    }
    // Fresh vertices follow, ordered by Ord.
    std::vector<std::uint32_t> fresh;
    for (std::uint32_t p : fresh_candidates)
        if (std::find(t2.begin(), t2.end(), p) == t2.end())
            fresh.push_back(p);
    std::sort(fresh.begin(), fresh.end(),
              [&](std::uint32_t x, std::uint32_t y) { return ord_.rank[x] < ord_.rank[y]; });
    t2.insert(t2.end(), fresh.begin(), fresh.end());

    // Reduction: repeatedly drop the first redundant vertex; its incoming
    // runs are redirected, which counts as a merge for Dec below.
    std::set<std::uint32_t> removed;
    if (oracle_ && oracle_->has_sets()) {
        for (;;) {
            bool changed = false;
            for (std::size_t k = keep_smallest_ ? 1 : 0; k < t2.size(); ++k) {
                std::vector<std::uint32_t> prefix(t2.begin(),
                                                  t2.begin() + static_cast<std::ptrdiff_t>(k));
                if (oracle_->is_redundant(t2[k], prefix)) {
                    removed.insert(t2[k]);
                    t2.erase(t2.begin() + static_cast<std::ptrdiff_t>(k));
                    changed = true;
                    break;
                }
            }
            if (!changed)
                break;
        }
    }

    auto index_in_t2 = [&](std::uint32_t p) -> std::size_t {
        return static_cast<std::size_t>(std::find(t2.begin(), t2.end(), p) - t2.begin());
    };

    // Dec/Acc over the source level, 1-based indices.  A vertex joins Dec if
    // its successor's index decreased or its successor was merged away; it
    // joins Acc if it crosses an accepting transition into a surviving vertex.
    std::uint32_t min_dec = 0, min_acc = 0;
    for (std::size_t i = 0; i < t1.size(); ++i) {
        std::uint32_t ind1 = static_cast<std::uint32_t>(i) + 1;
        std::uint32_t p = succ_of[i];
        bool gone = removed.count(p) != 0;
        bool in_dec = gone || index_in_t2(p) + 1 < ind1;
        bool in_acc = !gone && a_.qd_acc(t1[i], sigma);
        if (in_dec && min_dec == 0)
            min_dec = ind1;
        if (in_acc && min_acc == 0)
            min_acc = ind1;
    }

    if (min_dec == 0 && min_acc != 0)
        out.color = 2 * min_acc;
    else if (min_dec != 0 && min_acc == 0)
        out.color = 2 * min_dec - 1;
    else if (min_dec != 0 && min_acc != 0)
        out.color = std::min(2 * min_dec - 1, 2 * min_acc);
    else
        out.color = top_color();
    out.t = std::move(t2);
    return out;
}

namespace {

RunDag build_dag(const RankingEngine& engine, const Ldba& a, const LassoWord& w,
                 std::size_t horizon) {
    RunDag dag;
    Level lvl;
    lvl.index = 0;
    if (a.in_qd[a.initial])
        lvl.t.push_back(a.initial);
    else
        lvl.s.push_back(a.initial);
    dag.levels.push_back(lvl);
    for (std::size_t i = 0; i < horizon; ++i) {
        StepResult r = engine.step(dag.levels.back().s, dag.levels.back().t, w.at(i));
        dag.colors.push_back(r.color);
        Level next;
        next.index = static_cast<std::uint32_t>(i + 1);
        next.s = std::move(r.s);
        next.t = std::move(r.t);
        dag.levels.push_back(std::move(next));
    }
    return dag;
}

} // namespace

RunDag build_run_dag(const Ldba& a, const Ord& ord, const LassoWord& w, std::size_t horizon) {
    return build_dag(RankingEngine(a, ord), a, w, horizon);
}

RunDag build_reduced_dag(const Ldba& a, const Ord& ord, const RedundancyOracle& oracle,
                         const LassoWord& w, std::size_t horizon, bool keep_smallest) {
    return build_dag(RankingEngine(a, ord, &oracle, keep_smallest), a, w, horizon);
}

std::vector<std::uint32_t> color_trace(const Ldba& a, const Ord& ord, const LassoWord& w,
                                       std::size_t horizon) {
    return build_run_dag(a, ord, w, horizon).colors;
}

std::uint32_t color_summary(const Ldba& a, const Ord& ord, const LassoWord& w,
                            const RedundancyOracle* oracle, bool keep_smallest) {
    RankingEngine engine(a, ord, oracle, keep_smallest);
    std::vector<std::uint32_t> s, t;
    if (a.in_qd[a.initial])
        t.push_back(a.initial);
    else
        s.push_back(a.initial);
    for (Letter l : w.prefix) {
        StepResult r = engine.step(s, t, l);
        s = std::move(r.s);
        t = std::move(r.t);
    }
    // Iterate whole periods until the level at period offset 0 repeats; the
    // minimum color on the detected cycle is the summary.
    std::map<std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>, std::size_t> seen;
    std::vector<std::uint32_t> min_color_per_iter;
    for (std::size_t iter = 0;; ++iter) {
        auto [it, fresh] = seen.emplace(std::make_pair(s, t), iter);
        if (!fresh) {
            std::uint32_t m = ~0u;
            for (std::size_t k = it->second; k < iter; ++k)
                m = std::min(m, min_color_per_iter[k]);
            return m;
        }
        std::uint32_t m = ~0u;
        for (Letter l : w.period) {
            StepResult r = engine.step(s, t, l);
            m = std::min(m, r.color);
            s = std::move(r.s);
            t = std::move(r.t);
        }
        min_color_per_iter.push_back(m);
    }
}

std::string dag_to_dot(const Ldba& a, const RunDag& dag, const LassoWord& w) {
    std::ostringstream os;
    auto name = [&](std::uint32_t q) {
        if (q < a.state_names.size() && !a.state_names[q].empty())
            return a.state_names[q];
        return std::to_string(q);
    };
    os << "digraph rundag {\n  rankdir=TB;\n  node [shape=box];\n";
    for (const Level& lvl : dag.levels) {
        os << "  subgraph cluster_" << lvl.index << " {\n";
        os << "    label=\"level " << lvl.index;
        if (lvl.index < dag.colors.size())
            os << "  (" << a.alphabet.letter_name(w.at(lvl.index)) << " / color "
               << dag.colors[lvl.index] << ")";
        os << "\";\n    rank=same;\n";
        for (std::uint32_t q : lvl.s)
            os << "    v" << lvl.index << "_" << q << " [label=\"" << name(q) << "\"];\n";
        for (std::size_t i = 0; i < lvl.t.size(); ++i)
            os << "    v" << lvl.index << "_" << lvl.t[i] << " [label=\"" << name(lvl.t[i]) << " #"
               << (i + 1) << "\", style=filled, fillcolor=lightgrey];\n";
        os << "  }\n";
    }
    for (std::size_t i = 0; i + 1 < dag.levels.size(); ++i) {
        const Level& cur = dag.levels[i];
        const Level& nxt = dag.levels[i + 1];
        auto present = [&](std::uint32_t q) {
            return std::find(nxt.s.begin(), nxt.s.end(), q) != nxt.s.end() ||
                   std::find(nxt.t.begin(), nxt.t.end(), q) != nxt.t.end();
        };
        auto edges_from = [&](std::uint32_t q) {
            Letter l = w.at(i);
            for (std::size_t j = 0; j < a.succ[q][l].size(); ++j) {
                std::uint32_t p = a.succ[q][l][j];
                if (!present(p))
                    continue; // merged away in the reduced DAG
                os << "  v" << i << "_" << q << " -> v" << (i + 1) << "_" << p;
                if (a.acc[q][l][j])
                    os << " [penwidth=2.5]";
                os << ";\n";
            }
        };
        for (std::uint32_t q : cur.s)
            edges_from(q);
        for (std::uint32_t q : cur.t)
            edges_from(q);
    }
    os << "}\n";
    return os.str();
}

} // namespace ldpa
