// Distributed under the MIT License.
// See LICENSE for details.

#include "ldpa/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <memory>
#include <random>
#include <sstream>
#include <thread>

namespace ldpa {

namespace {

std::uint32_t used_color_count(const Dpa& d) {
    return static_cast<std::uint32_t>(d.used_colors().size());
}

} // namespace

PipelineResult translate_pipeline(const std::string& formula, const PipelineConfig& cfg,
                                  const std::atomic<bool>* cancel,
                                  std::atomic<std::size_t>* progress) {
    auto start = std::chrono::steady_clock::now();
    FormulaArena arena;
    FormulaId parsed = parse_ltl(formula, arena);
    FormulaId nnf = arena.to_nnf(parsed);
    if (arena.prop_count() > cfg.max_props)
        throw BudgetError("formula uses " + std::to_string(arena.prop_count()) +
                          " propositions, limit is " + std::to_string(cfg.max_props));

    LtlLdba translation = translate(arena, nnf, cfg.budget);
    PipelineResult out;
    out.ldba = eliminate_jumps(translation.aut);
    out.stats.ldba_states = out.ldba.num_states;
    out.stats.qd_states = static_cast<std::uint32_t>(out.ldba.qd_size());

    Ord ord = choose_ord(out.ldba, translation.label_fragments());
    DeterminizeOptions opts;
    opts.budget = cfg.budget;
    opts.cancel = cancel;
    opts.progress = progress;
    opts.keep_smallest = cfg.keep_smallest;
    RedundancyOracle oracle;
    if (cfg.reduce) {
        oracle = syntactic_oracle(out.ldba);
        opts.oracle = &oracle;
    }
    Determinization det = determinize(out.ldba, ord, opts);
    out.stats.max_t = det.max_t;
    out.stats.base_m = translation.base_table.size();
    out.dpa = cfg.compress ? compress_colors(det.dpa) : std::move(det.dpa);
    out.stats.dpa_states = out.dpa.num_states;
    out.stats.colors = used_color_count(out.dpa);
    out.stats.millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    return out;
}

namespace {

struct RaceBranch {
    std::atomic<bool> cancel{false};
    std::atomic<std::size_t> progress{0};
    std::atomic<bool> done{false};
    std::optional<PipelineResult> result;
    std::exception_ptr error;
    bool nnf_rejected = false;
};

std::string negate_text(const std::string& formula) { return "!(" + formula + ")"; }

} // namespace

PipelineResult negation_race(const std::string& formula, const PipelineConfig& cfg) {
    // Probe whether the negation stays inside the NNF fragment before
    // spawning threads; a rejected negation degrades to a single translation.
    bool negation_expressible = true;
    try {
        FormulaArena probe;
        probe.to_nnf(parse_ltl(negate_text(formula), probe));
    } catch (const NnfError&) {
        negation_expressible = false;
    }
    if (!negation_expressible) {
        PipelineResult single = translate_pipeline(formula, cfg);
        single.stats.raced = false;
        return single;
    }

    RaceBranch pos, neg;
    auto run = [&cfg](RaceBranch& branch, const std::string& text) {
        try {
            branch.result = translate_pipeline(text, cfg, &branch.cancel, &branch.progress);
        } catch (...) {
            branch.error = std::current_exception();
        }
        branch.done.store(true);
    };
    std::thread tp(run, std::ref(pos), formula);
    std::thread tn(run, std::ref(neg), negate_text(formula));

    // Controller: once one branch finishes, cancel the other as soon as its
    // explored-state count proves it cannot win.
    while (!pos.done.load() || !neg.done.load()) {
        if (pos.done.load() && pos.result && !neg.done.load() &&
            neg.progress.load() > pos.result->dpa.num_states)
            neg.cancel.store(true);
        if (neg.done.load() && neg.result && !pos.done.load() &&
            pos.progress.load() > neg.result->dpa.num_states)
            pos.cancel.store(true);
        std::this_thread::sleep_for(std::chrono::microseconds(200));
    }
    tp.join();
    tn.join();

    auto finish_negated = [&](PipelineResult r) {
        r.dpa = complement_dpa(r.dpa);
        if (cfg.compress)
            r.dpa = compress_colors(r.dpa);
        r.stats.colors = used_color_count(r.dpa);
        r.stats.negation_won = true;
        return r;
    };

    PipelineResult out;
    if (pos.result && neg.result) {
        out = neg.result->dpa.num_states < pos.result->dpa.num_states
                  ? finish_negated(std::move(*neg.result))
                  : std::move(*pos.result);
    } else if (pos.result) {
        out = std::move(*pos.result);
    } else if (neg.result) {
        out = finish_negated(std::move(*neg.result));
    } else {
        std::rethrow_exception(pos.error ? pos.error : neg.error);
    }
    out.stats.raced = true;
    return out;
}

// ── cross-validation ────────────────────────────────────────────────────────

namespace {

template <typename Visit>
bool enumerate_words(const Alphabet& alphabet, const CrossConfig& cc, Visit&& visit) {
    std::uint32_t k = alphabet.size();
    if (cc.samples) {
        std::mt19937_64 rng(cc.seed);
        for (std::size_t i = 0; i < *cc.samples; ++i) {
            LassoWord w;
            std::size_t ul = rng() % (cc.max_prefix + 1);
            std::size_t vl = 1 + rng() % cc.max_period;
            for (std::size_t j = 0; j < ul; ++j)
                w.prefix.push_back(static_cast<Letter>(rng() % k));
            for (std::size_t j = 0; j < vl; ++j)
                w.period.push_back(static_cast<Letter>(rng() % k));
            if (!visit(w))
                return false;
        }
        return true;
    }
    for (std::size_t ul = 0; ul <= cc.max_prefix; ++ul) {
        for (std::size_t vl = 1; vl <= cc.max_period; ++vl) {
            LassoWord w;
            w.prefix.assign(ul, 0);
            w.period.assign(vl, 0);
            for (;;) {
                if (!visit(w))
                    return false;
                // odometer over prefix+period letters
                std::size_t pos = 0;
                bool carried = true;
                for (; pos < ul + vl && carried; ++pos) {
                    Letter& slot = pos < ul ? w.prefix[pos] : w.period[pos - ul];
                    if (++slot == k)
                        slot = 0;
                    else
                        carried = false;
                }
                if (carried)
                    break;
            }
        }
    }
    return true;
}

} // namespace

CrossReport crossvalidate_acceptors(const Alphabet& alphabet,
                                    const std::vector<NamedAcceptor>& acceptors,
                                    const CrossConfig& cc) {
    CrossReport report;
    for (const auto& [name, fn] : acceptors)
        report.acceptors.push_back(name);
    enumerate_words(alphabet, cc, [&](const LassoWord& w) {
        ++report.words_checked;
        bool first = acceptors.front().second(w);
        for (std::size_t i = 1; i < acceptors.size(); ++i) {
            if (acceptors[i].second(w) != first) {
                report.counterexample = w;
                std::ostringstream os;
                os << "lasso u=";
                for (Letter l : w.prefix)
                    os << alphabet.letter_name(l);
                os << " v=";
                for (Letter l : w.period)
                    os << alphabet.letter_name(l);
                os << ":";
                for (const auto& [name, fn] : acceptors)
                    os << " " << name << "=" << (fn(w) ? "accept" : "reject");
                report.detail = os.str();
                return false;
            }
        }
        return true;
    });
    return report;
}

CrossReport crossvalidate(const std::string& formula, const PipelineConfig& cfg,
                          const CrossConfig& cc) {
    auto arena = std::make_shared<FormulaArena>();
    FormulaId nnf = arena->to_nnf(parse_ltl(formula, *arena));
    LtlLdba translation = translate(*arena, nnf, cfg.budget);
    auto ldba = std::make_shared<Ldba>(eliminate_jumps(translation.aut));
    Ord ord = choose_ord(*ldba, translation.label_fragments());
    RedundancyOracle oracle = syntactic_oracle(*ldba);
    auto reduced = std::make_shared<Dpa>(
        construct_reduced_dpa(*ldba, ord, oracle, cfg.budget, cfg.keep_smallest));
    auto compressed = std::make_shared<Dpa>(compress_colors(*reduced));
    auto ord_ptr = std::make_shared<Ord>(ord);
    auto oracle_ptr = std::make_shared<RedundancyOracle>(oracle);

    std::vector<NamedAcceptor> acceptors;
    acceptors.emplace_back("ltl", [arena, nnf](const LassoWord& w) {
        return arena->eval_lasso(nnf, w);
    });
    acceptors.emplace_back("ldba", [ldba](const LassoWord& w) {
        return ldba_accepts_lasso(*ldba, w);
    });
    acceptors.emplace_back("summary", [ldba, ord_ptr](const LassoWord& w) {
        return color_summary(*ldba, *ord_ptr, w) % 2 == 0;
    });
    acceptors.emplace_back("summary-reduced", [ldba, ord_ptr, oracle_ptr](const LassoWord& w) {
        return color_summary(*ldba, *ord_ptr, w, oracle_ptr.get()) % 2 == 0;
    });
    std::vector<std::string> skipped;
    try {
        // The unreduced DPA can be exponentially larger; the per-word summary
        // acceptor above still covers the unreduced color semantics when the
        // materialized automaton does not fit the budget.
        auto plain = std::make_shared<Dpa>(construct_dpa(*ldba, ord, cfg.budget));
        acceptors.emplace_back("dpa", [plain](const LassoWord& w) {
            return dpa_accepts_lasso(*plain, w);
        });
    } catch (const BudgetError&) {
        skipped.push_back("dpa (budget exceeded)");
    }
    acceptors.emplace_back("dpa-reduced", [reduced](const LassoWord& w) {
        return dpa_accepts_lasso(*reduced, w);
    });
    acceptors.emplace_back("dpa-compressed", [compressed](const LassoWord& w) {
        return dpa_accepts_lasso(*compressed, w);
    });
    CrossReport report = crossvalidate_acceptors(ldba->alphabet, acceptors, cc);
    report.skipped = std::move(skipped);
    return report;
}

CrossReport crossvalidate(const Ldba& a, const PipelineConfig& cfg, const CrossConfig& cc) {
    auto ldba = std::make_shared<Ldba>(a.jumps.empty() ? a : eliminate_jumps(a));
    auto ord = std::make_shared<Ord>(choose_ord(*ldba));
    auto plain = std::make_shared<Dpa>(construct_dpa(*ldba, *ord, cfg.budget));
    auto compressed = std::make_shared<Dpa>(compress_colors(*plain));

    std::vector<NamedAcceptor> acceptors;
    acceptors.emplace_back("ldba", [ldba](const LassoWord& w) {
        return ldba_accepts_lasso(*ldba, w);
    });
    acceptors.emplace_back("summary", [ldba, ord](const LassoWord& w) {
        return color_summary(*ldba, *ord, w) % 2 == 0;
    });
    acceptors.emplace_back("dpa", [plain](const LassoWord& w) {
        return dpa_accepts_lasso(*plain, w);
    });
    acceptors.emplace_back("dpa-compressed", [compressed](const LassoWord& w) {
        return dpa_accepts_lasso(*compressed, w);
    });
    if (a.has_base) {
        auto oracle = std::make_shared<RedundancyOracle>(syntactic_oracle(*ldba));
        auto reduced = std::make_shared<Dpa>(
            construct_reduced_dpa(*ldba, *ord, *oracle, cfg.budget, cfg.keep_smallest));
        acceptors.emplace_back("dpa-reduced", [reduced](const LassoWord& w) {
            return dpa_accepts_lasso(*reduced, w);
        });
    }
    return crossvalidate_acceptors(ldba->alphabet, acceptors, cc);
}

// ── random LDBA generator ───────────────────────────────────────────────────

Ldba rand_ldba(std::uint64_t seed, std::uint32_t n_states, std::uint32_t n_sigma,
               double density, double acc_density) {
    if (n_states < 2)
        throw std::invalid_argument("rand_ldba needs at least 2 states");
    if (n_sigma < 1 || n_sigma > 26)
        throw std::invalid_argument("rand_ldba needs 1..26 letters");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    std::vector<std::string> names;
    for (std::uint32_t i = 0; i < n_sigma; ++i)
        names.push_back(std::string(1, static_cast<char>('a' + i)));

    Ldba a;
    a.alphabet = Alphabet::symbols(names);
    // Q_d = the last qd_size states; state 0 is initial.
    std::uint32_t qd_size = 1 + static_cast<std::uint32_t>(rng() % (n_states - 1));
    std::uint32_t qd_start = n_states - qd_size;
    for (std::uint32_t q = 0; q < n_states; ++q)
        a.add_state(q >= qd_start);
    for (std::uint32_t q = 0; q < n_states; ++q) {
        for (Letter l = 0; l < n_sigma; ++l) {
            if (q >= qd_start) {
                std::uint32_t t = qd_start + static_cast<std::uint32_t>(rng() % qd_size);
                a.add_edge(q, l, t, coin(rng) < acc_density);
            } else {
                for (std::uint32_t t = 0; t < n_states; ++t)
                    if (coin(rng) < density)
                        a.add_edge(q, l, t, false);
                if (a.succ[q][l].empty()) {
                    std::uint32_t t = static_cast<std::uint32_t>(rng() % n_states);
                    a.add_edge(q, l, t, false);
                }
            }
        }
    }
    return a;
}

// ── benchmark families ──────────────────────────────────────────────────────

std::string family_name(Family f) {
    switch (f) {
    case Family::R:
        return "R";
    case Family::G:
        return "G";
    case Family::F:
        return "F";
    case Family::Theta:
        return "theta";
    }
    return "?";
}

std::string family_formula(Family f, std::uint32_t n) {
    auto big_and = [](const std::vector<std::string>& parts) {
        std::string out;
        for (std::size_t i = 0; i < parts.size(); ++i)
            out += (i ? " & " : "") + parts[i];
        return out;
    };
    std::vector<std::string> parts;
    switch (f) {
    case Family::R:
        for (std::uint32_t i = 1; i <= n; ++i)
            parts.push_back("(G F p" + std::to_string(i) + " | F G p" + std::to_string(i + 1) +
                            ")");
        return big_and(parts);
    case Family::G: {
        std::vector<std::string> ps, qs;
        for (std::uint32_t i = 1; i <= n; ++i) {
            ps.push_back("G F p" + std::to_string(i));
            qs.push_back("G F q" + std::to_string(i));
        }
        return "(" + big_and(ps) + ") -> (" + big_and(qs) + ")";
    }
    case Family::F:
        for (std::uint32_t i = 1; i <= n; ++i)
            parts.push_back("(G F p" + std::to_string(i) + " -> G F q" + std::to_string(i) + ")");
        return big_and(parts);
    case Family::Theta: {
        std::vector<std::string> ps;
        for (std::uint32_t i = 1; i <= n; ++i)
            ps.push_back("G F p" + std::to_string(i));
        return "!((" + big_and(ps) + ") -> G (q -> F r))";
    }
    }
    return "tt";
}

std::vector<BenchRecord> bench_families(Family f, std::uint32_t n_min, std::uint32_t n_max,
                                        const PipelineConfig& cfg) {
    std::vector<BenchRecord> out;
    for (std::uint32_t n = n_min; n <= n_max; ++n) {
        BenchRecord rec;
        rec.family = family_name(f);
        rec.n = n;
        PipelineConfig run_cfg = cfg;
        run_cfg.max_props = std::max<std::uint32_t>(cfg.max_props, 2 * n + 2);
        try {
            PipelineResult r = cfg.race ? negation_race(family_formula(f, n), run_cfg)
                                        : translate_pipeline(family_formula(f, n), run_cfg);
            rec.states = r.stats.dpa_states;
            rec.colors = r.stats.colors;
            rec.max_t = r.stats.max_t;
            rec.base_m = r.stats.base_m;
            rec.millis = r.stats.millis;
        } catch (const BudgetError& e) {
            rec.error = e.what();
        }
        out.push_back(std::move(rec));
    }
    return out;
}

std::string bench_csv(const std::vector<BenchRecord>& records) {
    std::ostringstream os;
    os << "family,n,states,colors,max_t,base_m,millis\n";
    for (const auto& r : records) {
        if (!r.error.empty()) {
            os << r.family << "," << r.n << ",,,,,\n";
            continue;
        }
        os << r.family << "," << r.n << "," << r.states << "," << r.colors << "," << r.max_t
           << "," << r.base_m << "," << r.millis << "\n";
    }
    return os.str();
}

} // namespace ldpa
