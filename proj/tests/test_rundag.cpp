// Distributed under the MIT License.
// See LICENSE for details.

#include <doctest.h>

#include <set>

#include "ldpa/pipeline.hpp"
#include "ldpa/rundag.hpp"
#include "support.hpp"

using namespace ldpa;
using namespace ldpa::testing;

namespace {

std::vector<std::uint32_t> take(const std::vector<std::uint32_t>& v, std::size_t n) {
    return {v.begin(), v.begin() + static_cast<std::ptrdiff_t>(std::min(n, v.size()))};
}

} // namespace

TEST_CASE("run DAG of the running example: levels and indices") {
    Ldba a = fig1_ldba();
    Ord ord = Ord::discovery(a);

    SUBCASE("w = abb(ab)^w: state 4 has index 1 at level 2") {
        RunDag dag = build_run_dag(a, ord, sym_lasso("abb", "ab"), 4);
        CHECK(dag.levels[2].t == std::vector<std::uint32_t>{3, 2}); // [4 < 3]
        CHECK(dag.levels[0].s == std::vector<std::uint32_t>{0});
        CHECK(dag.levels[0].t.empty());
    }
    SUBCASE("w = aab^w: V2^d = {2}, V4^d = {4,3}") {
        RunDag dag = build_run_dag(a, ord, sym_lasso("aa", "b"), 5);
        CHECK(dag.levels[2].t == std::vector<std::uint32_t>{1});    // [2]
        CHECK(dag.levels[4].t == std::vector<std::uint32_t>{3, 2}); // [4 < 3]
    }
    SUBCASE("horizon 0: single level {q0}") {
        RunDag dag = build_run_dag(a, ord, sym_lasso("", "a"), 0);
        REQUIRE(dag.levels.size() == 1);
        CHECK(dag.levels[0].s == std::vector<std::uint32_t>{0});
        CHECK(dag.colors.empty());
    }
}

TEST_CASE("color trace matches the worked example") {
    Ldba a = fig1_ldba();
    Ord ord = Ord::discovery(a);
    SUBCASE("reject word abb(ab)^w: 7 7 4 3 3 3 ...") {
        auto trace = color_trace(a, ord, sym_lasso("abb", "ab"), 8);
        CHECK(take(trace, 6) == std::vector<std::uint32_t>{7, 7, 4, 3, 3, 3});
        CHECK(color_summary(a, ord, sym_lasso("abb", "ab")) == 3);
    }
    SUBCASE("accept word aab^w: 7 2 7 4 4 ...") {
        auto trace = color_trace(a, ord, sym_lasso("aa", "b"), 8);
        CHECK(take(trace, 5) == std::vector<std::uint32_t>{7, 2, 7, 4, 4});
        CHECK(color_summary(a, ord, sym_lasso("aa", "b")) == 4);
    }
    SUBCASE("a^w: the smallest accepting run settles at index 1") {
        CHECK(color_summary(a, ord, sym_lasso("", "a")) == 2);
    }
    SUBCASE("Q_d never entered: constant top color 7") {
        Ldba b = fig1_ldba();
        // cut the guesses into Q_d; the three Q_d states stay as dead weight
        b.succ[0][0].pop_back();
        b.acc[0][0].pop_back();
        b.succ[0][1].pop_back();
        b.acc[0][1].pop_back();
        REQUIRE(validate_ldba(b).empty());
        auto trace = color_trace(b, Ord::discovery(b), sym_lasso("ab", "ba"), 6);
        CHECK(trace == std::vector<std::uint32_t>(6, 7));
    }
}

TEST_CASE("reduced DAG with the dead-state oracle") {
    Ldba a = fig1_with_base();
    Ord ord = Ord::discovery(a);
    RedundancyOracle oracle = syntactic_oracle(a);

    SUBCASE("state 4 never appears in reduced levels") {
        RunDag dag = build_reduced_dag(a, ord, oracle, sym_lasso("abb", "ab"), 10);
        for (const Level& lvl : dag.levels)
            for (std::uint32_t q : lvl.t)
                CHECK(q != 3);
    }
    SUBCASE("no-op oracle reproduces the plain DAG") {
        RedundancyOracle noop;
        RunDag plain = build_run_dag(a, ord, sym_lasso("abb", "ab"), 8);
        RunDag red = build_reduced_dag(a, ord, noop, sym_lasso("abb", "ab"), 8);
        for (std::size_t i = 0; i < plain.levels.size(); ++i) {
            CHECK(plain.levels[i].s == red.levels[i].s);
            CHECK(plain.levels[i].t == red.levels[i].t);
        }
        CHECK(plain.colors == red.colors);
    }
    SUBCASE("reduced summary parity still decides acceptance") {
        CHECK(color_summary(a, ord, sym_lasso("aa", "b"), &oracle) % 2 == 0);
        CHECK(color_summary(a, ord, sym_lasso("abb", "ab"), &oracle) % 2 == 1);
    }
    SUBCASE("keep-smallest refrains from merging at index 1") {
        RunDag dag = build_reduced_dag(a, ord, oracle, sym_lasso("abb", "ab"), 6,
                                       /*keep_smallest=*/true);
        bool saw_dead = false;
        for (const Level& lvl : dag.levels)
            saw_dead |= !lvl.t.empty() && lvl.t.front() == 3;
        CHECK(saw_dead); // 4 survives while it is the smallest vertex
        // parity is still sound under the refraining variant
        CHECK(color_summary(a, ord, sym_lasso("aa", "b"), &oracle, true) % 2 == 0);
        CHECK(color_summary(a, ord, sym_lasso("abb", "ab"), &oracle, true) % 2 == 1);
    }
}

TEST_CASE("property: incremental ordering equals the run-prefix pre-order") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 120; ++i) {
        Ldba a = rand_ldba(500 + i, 2 + i % 6, 2);
        Ord ord = random_ord(a, rng);
        LassoWord w = random_lasso(rng, 2, 4, 4);
        std::size_t horizon = 12;
        RunDag dag = build_run_dag(a, ord, w, horizon);
        auto brute = brute_level_orders(a, ord, w, horizon);
        REQUIRE(brute.size() == dag.levels.size());
        for (std::size_t lvl = 0; lvl < brute.size(); ++lvl) {
            CAPTURE(i);
            CAPTURE(lvl);
            CHECK(dag.levels[lvl].t == brute[lvl]);
        }
    }
}

TEST_CASE("property: along a run the index only decreases") {
    std::mt19937_64 rng(22);
    for (int i = 0; i < 100; ++i) {
        Ldba a = rand_ldba(700 + i, 2 + i % 6, 2);
        Ord ord = random_ord(a, rng);
        LassoWord w = random_lasso(rng, 2, 3, 3);
        RunDag dag = build_run_dag(a, ord, w, 10);
        for (std::size_t lvl = 0; lvl + 1 < dag.levels.size(); ++lvl) {
            const auto& t1 = dag.levels[lvl].t;
            const auto& t2 = dag.levels[lvl + 1].t;
            for (std::size_t k = 0; k < t1.size(); ++k) {
                std::uint32_t succ = a.qd_succ(t1[k], w.at(lvl));
                auto it = std::find(t2.begin(), t2.end(), succ);
                REQUIRE(it != t2.end());
                CHECK(static_cast<std::size_t>(it - t2.begin()) <= k);
            }
        }
    }
}

TEST_CASE("property: ordering totality") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 60; ++i) {
        Ldba a = rand_ldba(800 + i, 2 + i % 6, 2);
        RunDag dag = build_run_dag(a, Ord::discovery(a), random_lasso(rng, 2, 3, 3), 10);
        for (const Level& lvl : dag.levels) {
            std::set<std::uint32_t> seen(lvl.t.begin(), lvl.t.end());
            CHECK(seen.size() == lvl.t.size()); // strict total order, no duplicates
            for (std::uint32_t q : lvl.t)
                CHECK(a.in_qd[q]);
        }
    }
}

TEST_CASE("property: summary parity decides acceptance (small sweep)") {
    std::mt19937_64 rng(24);
    for (int i = 0; i < 80; ++i) {
        Ldba a = rand_ldba(900 + i, 2 + i % 6, 2);
        Ord ord = random_ord(a, rng);
        for (int j = 0; j < 25; ++j) {
            LassoWord w = random_lasso(rng, 2, 3, 3);
            CAPTURE(i);
            CAPTURE(j);
            CHECK((color_summary(a, ord, w) % 2 == 0) == ldba_accepts_lasso(a, w));
        }
    }
}

TEST_CASE("property: acceptance is independent of the chosen Ord") {
    std::mt19937_64 rng(25);
    for (int i = 0; i < 50; ++i) {
        Ldba a = rand_ldba(1100 + i, 3 + i % 5, 2);
        Ord o1 = random_ord(a, rng);
        Ord o2 = random_ord(a, rng);
        for (int j = 0; j < 20; ++j) {
            LassoWord w = random_lasso(rng, 2, 3, 3);
            CHECK((color_summary(a, o1, w) % 2) == (color_summary(a, o2, w) % 2));
        }
    }
}

TEST_CASE("dag_to_dot reproduces levels and colors") {
    Ldba a = fig1_ldba();
    RunDag dag = build_run_dag(a, Ord::discovery(a), sym_lasso("abb", "ab"), 4);
    std::string dot = dag_to_dot(a, dag, sym_lasso("abb", "ab"));
    CHECK(dot.find("level 0") != std::string::npos);
    CHECK(dot.find("color 7") != std::string::npos);
    CHECK(dot.find("color 4") != std::string::npos);
    CHECK(dot.find("#1") != std::string::npos); // index annotations
}
