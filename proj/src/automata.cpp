// Distributed under the MIT License.
// See LICENSE for details.

#include "ldpa/automata.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace ldpa {

Alphabet Alphabet::subsets(std::vector<std::string> props) {
    if (props.size() > 16)
        throw std::invalid_argument("subset alphabet limited to 16 propositions");
    Alphabet a;
    a.props_ = std::move(props);
    a.symbols_ = false;
    return a;
}

Alphabet Alphabet::symbols(std::vector<std::string> names) {
    if (names.empty() || names.size() > 31)
        throw std::invalid_argument("symbol alphabet needs 1..31 symbols");
    Alphabet a;
    a.props_ = std::move(names);
    a.symbols_ = true;
    return a;
}

std::optional<Letter> Alphabet::letter_from_bits(std::uint32_t bits) const {
    if (!symbols_)
        return bits < size() ? std::optional<Letter>(bits) : std::nullopt;
    // one-hot decode
    if (bits == 0 || (bits & (bits - 1)) != 0)
        return std::nullopt;
    std::uint32_t idx = 0;
    while (!((bits >> idx) & 1u))
        ++idx;
    return idx < props_.size() ? std::optional<Letter>(idx) : std::nullopt;
}

std::string Alphabet::letter_name(Letter l) const {
    if (symbols_)
        return props_[l];
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 0; i < props_.size(); ++i) {
        if ((l >> i) & 1u) {
            if (!first)
                out += ",";
            out += props_[i];
            first = false;
        }
    }
    out += "}";
    return out;
}

std::size_t Ldba::qd_size() const {
    return static_cast<std::size_t>(std::count(in_qd.begin(), in_qd.end(), true));
}

std::vector<std::uint32_t> Dpa::used_colors() const {
    std::set<std::uint32_t> seen(color.begin(), color.end());
    return {seen.begin(), seen.end()};
}

std::vector<std::string> validate_ldba(const Ldba& a) {
    std::vector<std::string> out;
    auto name = [&](std::uint32_t q) {
        if (q < a.state_names.size() && !a.state_names[q].empty())
            return a.state_names[q];
        return std::to_string(q);
    };
    for (std::uint32_t q = 0; q < a.num_states; ++q) {
        for (Letter l = 0; l < a.alphabet.size(); ++l) {
            const auto& targets = a.succ[q][l];
            if (targets.empty())
                out.push_back("transition relation not total: state " + name(q) + " has no '" +
                              a.alphabet.letter_name(l) + "' successor");
            if (a.in_qd[q] && targets.size() > 1)
                out.push_back("nondeterminism within Q_d: state " + name(q) + " has " +
                              std::to_string(targets.size()) + " '" + a.alphabet.letter_name(l) +
                              "' successors");
            for (std::size_t i = 0; i < targets.size(); ++i) {
                if (a.in_qd[q] && !a.in_qd[targets[i]])
                    out.push_back("Q_d is not a trap: transition (" + name(q) + "," +
                                  a.alphabet.letter_name(l) + "," + name(targets[i]) +
                                  ") leaves Q_d");
                if (a.acc[q][l][i] && !(a.in_qd[q] && a.in_qd[targets[i]]))
                    out.push_back("accepting transition (" + name(q) + "," +
                                  a.alphabet.letter_name(l) + "," + name(targets[i]) +
                                  ") is not within Q_d");
            }
        }
    }
    if (a.initial < a.num_states && a.in_qd[a.initial])
        out.push_back("initial state " + name(a.initial) + " lies in Q_d");
    return out;
}

Ldba eliminate_jumps(const Ldba& a) {
    Ldba out = a;
    out.jumps.clear();
    for (auto [q, p] : a.jumps) {
        if (a.in_qd[q])
            throw std::invalid_argument("epsilon jump source " + std::to_string(q) +
                                        " lies in Q_d");
        if (!a.in_qd[p])
            throw std::invalid_argument("epsilon jump target " + std::to_string(p) +
                                        " lies outside Q_d");
        for (Letter l = 0; l < a.alphabet.size(); ++l) {
            std::uint32_t t = a.qd_succ(p, l);
            // dedupe: the same folded edge may arise from several jumps
            const auto& existing = out.succ[q][l];
            if (std::find(existing.begin(), existing.end(), t) == existing.end())
                out.add_edge(q, l, t, false);
        }
    }
    return out;
}

namespace {

// Reachable cycle through an accepting edge, on the product of the automaton
// with the lasso positions.  Tarjan SCC, iterative.
class LassoProduct {
public:
    LassoProduct(const Ldba& a, const LassoWord& w, bool with_jumps)
        : a_(a), w_(w), with_jumps_(with_jumps), n_(w.positions()) {}

    bool accepts(std::uint32_t from) {
        // node id = q * n + pos
        std::size_t total = std::size_t(a_.num_states) * n_;
        index_.assign(total, -1);
        low_.assign(total, 0);
        on_stack_.assign(total, false);
        scc_.assign(total, -1);
        next_index_ = 0;
        scc_count_ = 0;
        strongconnect(node(from, 0));
        // accepting edge inside one SCC => reachable alpha-cycle
        for (std::size_t v = 0; v < total; ++v) {
            if (index_[v] < 0)
                continue;
            std::uint32_t q = static_cast<std::uint32_t>(v / n_);
            std::size_t pos = v % n_;
            Letter l = w_.at(pos);
            std::size_t npos = w_.next_position(pos);
            const auto& targets = a_.succ[q][l];
            for (std::size_t i = 0; i < targets.size(); ++i) {
                if (!a_.acc[q][l][i])
                    continue;
                std::size_t u = node(targets[i], npos);
                if (index_[u] >= 0 && scc_[v] == scc_[u])
                    return true;
            }
        }
        return false;
    }

private:
    std::size_t node(std::uint32_t q, std::size_t pos) const { return std::size_t(q) * n_ + pos; }

    std::vector<std::size_t> successors(std::size_t v) const {
        std::uint32_t q = static_cast<std::uint32_t>(v / n_);
        std::size_t pos = v % n_;
        Letter l = w_.at(pos);
        std::size_t npos = w_.next_position(pos);
        std::vector<std::size_t> out;
        for (std::uint32_t t : a_.succ[q][l])
            out.push_back(node(t, npos));
        if (with_jumps_ && !a_.in_qd[q]) {
            for (auto [src, dst] : a_.jumps)
                if (src == q)
                    out.push_back(node(dst, pos)); // free move, no letter consumed
        }
        return out;
    }

    void strongconnect(std::size_t root) {
        struct Frame {
            std::size_t v;
            std::vector<std::size_t> succs;
            std::size_t next = 0;
        };
        std::vector<Frame> call;
        call.push_back({root, successors(root)});
        index_[root] = low_[root] = next_index_++;
        stack_.push_back(root);
        on_stack_[root] = true;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.next < f.succs.size()) {
                std::size_t u = f.succs[f.next++];
                if (index_[u] < 0) {
                    index_[u] = low_[u] = next_index_++;
                    stack_.push_back(u);
                    on_stack_[u] = true;
                    call.push_back({u, successors(u)});
                } else if (on_stack_[u]) {
                    low_[f.v] = std::min(low_[f.v], static_cast<long>(index_[u]));
                }
            } else {
                if (low_[f.v] == index_[f.v]) {
                    for (;;) {
                        std::size_t u = stack_.back();
                        stack_.pop_back();
                        on_stack_[u] = false;
                        scc_[u] = scc_count_;
                        if (u == f.v)
                            break;
                    }
                    ++scc_count_;
                }
                std::size_t v = f.v;
                call.pop_back();
                if (!call.empty())
                    low_[call.back().v] = std::min(low_[call.back().v], low_[v]);
            }
        }
    }

    const Ldba& a_;
    const LassoWord& w_;
    bool with_jumps_;
    std::size_t n_;
    std::vector<long> index_, low_;
    std::vector<int> scc_;
    std::vector<bool> on_stack_;
    std::vector<std::size_t> stack_;
    long next_index_ = 0;
    int scc_count_ = 0;
};

void check_word(const Alphabet& alphabet, const LassoWord& w) {
    if (w.period.empty())
        throw std::invalid_argument("lasso word needs a nonempty period");
    for (std::size_t i = 0; i < w.positions(); ++i)
        if (w.at(i) >= alphabet.size())
            throw std::invalid_argument("letter " + std::to_string(w.at(i)) +
                                        " not in the alphabet");
}

} // namespace

bool ldba_accepts_lasso(const Ldba& a, const LassoWord& w, std::uint32_t from) {
    check_word(a.alphabet, w);
    return LassoProduct(a, w, false).accepts(from);
}

bool ldba_accepts_lasso(const Ldba& a, const LassoWord& w) {
    return ldba_accepts_lasso(a, w, a.initial);
}

bool ldba_accepts_lasso_with_jumps(const Ldba& a, const LassoWord& w) {
    check_word(a.alphabet, w);
    return LassoProduct(a, w, true).accepts(a.initial);
}

bool dpa_accepts_lasso(const Dpa& d, const LassoWord& w) {
    check_word(d.alphabet, w);
    std::uint32_t q = d.initial;
    for (Letter l : w.prefix)
        q = d.step(q, l);
    // Iterate the period until the state at period offset 0 repeats; the
    // detected cycle decides acceptance.
    std::map<std::uint32_t, std::size_t> seen; // state -> iteration
    std::vector<std::uint32_t> min_color_per_iter;
    for (std::size_t iter = 0;; ++iter) {
        auto [it, fresh] = seen.emplace(q, iter);
        if (!fresh) {
            std::uint32_t m = ~0u;
            for (std::size_t k = it->second; k < iter; ++k)
                m = std::min(m, min_color_per_iter[k]);
            return m % 2 == 0;
        }
        std::uint32_t m = ~0u;
        for (Letter l : w.period) {
            m = std::min(m, d.edge_color(q, l));
            q = d.step(q, l);
        }
        min_color_per_iter.push_back(m);
    }
}

Dpa complement_dpa(const Dpa& d) {
    Dpa out = d;
    for (auto& c : out.color)
        ++c;
    out.num_colors = d.num_colors + 1;
    return out;
}

Dpa compress_colors(const Dpa& d) {
    std::vector<std::uint32_t> used = d.used_colors();
    std::map<std::uint32_t, std::uint32_t> remap;
    std::uint32_t prev = 0;
    for (std::uint32_t c : used) {
        std::uint32_t next = (prev == 0) ? (c % 2 == 1 ? 1 : 2)
                                         : (prev % 2 == c % 2 ? prev + 2 : prev + 1);
        remap[c] = next;
        prev = next;
    }
    Dpa out = d;
    for (auto& c : out.color)
        c = remap[c];
    out.num_colors = prev == 0 ? 1 : prev;
    return out;
}

} // namespace ldpa
