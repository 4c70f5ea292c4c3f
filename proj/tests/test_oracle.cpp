#include "capdom/oracle.hpp"
#include "capdom/primaldual.hpp"

#include "testutil.hpp"

#include <doctest.h>

using namespace capdom;
using namespace capdom::testutil;

TEST_CASE("star optimum is a single center copy") {
    Instance star = star_instance(Rational(10), 10);
    auto solution = exact_opt(star);
    CHECK(solution.opt == Rational(1));
    CHECK(solution.x[0] == 1);
    CHECK(check_feasible(solution.f, star).feasible);
}

TEST_CASE("single vertex optimum is the ceiling") {
    Instance one = make_instance({{1, 2, 3}}, {});
    auto solution = exact_opt(one);
    CHECK(solution.opt == Rational(2));
    CHECK(solution.x == Multiplicity{2});
}

TEST_CASE("oracle refuses oversized instances") {
    auto gen = gen_outerplanar(11, 1);
    CHECK_THROWS_WITH_AS(exact_opt(gen.inst, 10), doctest::Contains("oracle scale exceeded"),
                         ScaleError);
    CHECK_NOTHROW(exact_opt(gen.inst, 11));
}

TEST_CASE("flow feasibility basics") {
    Instance star = star_instance(Rational(10), 10);
    Multiplicity zero(10, 0);
    CHECK(!feasibility_flow(zero, star));
    Multiplicity center(10, 0);
    center[0] = 1;
    CHECK(feasibility_flow(center, star));

    DemandAssignment witness;
    REQUIRE(feasibility_flow_witness(center, star, &witness));
    CHECK(check_feasible(witness, star).feasible);
    auto in = inbound_totals(witness, star);
    CHECK(in[0] <= star.capacity(0));
}

TEST_CASE("flow feasibility agrees with the interval Hall condition on paths") {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        Rng rng(seed);
        int n = 2 + static_cast<int>(rng.below(7));
        std::vector<std::array<long long, 3>> wcd;
        std::vector<std::pair<int, int>> edges;
        for (int v = 0; v < n; ++v) {
            wcd.push_back({1, rng.int_in(1, 4), rng.int_in(0, 4)});
            if (v > 0) edges.push_back({v - 1, v});
        }
        Instance path = make_instance(wcd, edges);
        Multiplicity x(n, 0);
        for (int v = 0; v < n; ++v) x[v] = rng.int_in(0, 2);
        CHECK(feasibility_flow(x, path) == interval_hall_feasible_on_path(x, path));
    }
}

TEST_CASE("oracle agrees with an independent brute force on the exhaustive family") {
    // all connected sub-drawings of triangulated polygons, n <= 5 in full,
    // a seeded slice of n = 6 to keep the unit suite quick
    int checked = 0;
    for (int n = 1; n <= 6; ++n) {
        auto family = exhaustive_sub_embeddings(n);
        std::size_t step = n < 6 ? 1 : 7;
        for (std::size_t i = 0; i < family.size(); i += step) {
            Rng rng(1000 + 31 * i + n);
            Instance inst = with_random_weights(family[i], rng, 1, 2);
            auto exact = exact_opt(inst);
            CHECK(exact.opt == brute_opt(inst));
            CHECK(check_feasible(exact.f, inst).feasible);
            auto x = multiplicity_of(exact.f, inst);
            for (int v = 0; v < inst.vertex_count(); ++v) CHECK(x[v] <= exact.x[v]);
            ++checked;
        }
    }
    MESSAGE("cross-checked instances: ", checked);
    REQUIRE(checked > 300);
}

TEST_CASE("oracle optimal assignments satisfy the redundant constraint") {
    for (int n = 2; n <= 5; ++n) {
        auto family = exhaustive_sub_embeddings(n);
        for (std::size_t i = 0; i < family.size(); i += 3) {
            Rng rng(77 * i + n);
            Instance inst = with_random_weights(family[i], rng, 1, 2);
            auto exact = exact_opt(inst);
            auto normalized = normalize(exact.f, inst);
            CHECK(verify_lemma1(normalized, inst));
        }
    }
}

TEST_CASE("the redundant constraint can fail before normalization") {
    Instance pair = make_instance({{1, 2, 1}, {1, 2, 0}}, {{0, 1}});
    DemandAssignment f;
    f.add(0, 1, Rational(5)); // far beyond d(0) = 1: d(0) x(1) = ceil(5/2) = 3 < 5
    CHECK(!verify_lemma1(f, pair));
    CHECK(verify_lemma1(normalize(f, pair), pair));
    CHECK(verify_lemma1(DemandAssignment{}, pair));
}

TEST_CASE("optimum is invariant under relabeling") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        auto gen = gen_outerplanar(2 + static_cast<int>(seed % 6), seed);
        const Instance& inst = gen.inst;
        const int n = inst.vertex_count();
        Rng rng(seed * 13);
        std::vector<int> perm(n);
        for (int v = 0; v < n; ++v) perm[v] = v;
        for (int v = n - 1; v > 0; --v)
            std::swap(perm[v], perm[rng.below(static_cast<std::uint64_t>(v) + 1)]);

        std::vector<VertexParams> params(n);
        for (int v = 0; v < n; ++v) params[perm[v]] = inst.params(v);
        std::vector<std::pair<int, int>> edges;
        for (auto [u, v] : inst.edges()) edges.push_back({perm[u], perm[v]});
        Instance relabeled = Instance::validated(std::move(params), std::move(edges));
        CHECK(exact_opt(inst).opt == exact_opt(relabeled).opt);
    }
}

TEST_CASE("weak duality against greedy certificates") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        auto gen = gen_outerplanar(1 + static_cast<int>(seed % 8), seed);
        auto run = greedy_charging(gen.inst);
        REQUIRE(verify_dual(run.dual, gen.inst).empty());
        CHECK(run.dual_val <= exact_opt(gen.inst).opt);
    }
}

TEST_CASE("integrality gap construction") {
    auto report = lp_gap_demo(Rational(10), 10);
    CHECK(report.fractional_cost == Rational(1, 10));
    CHECK(report.integer_opt == Rational(1));
    CHECK(report.gap == Rational(10));
    CHECK(report.relaxed_constraints_hold);
    CHECK(!report.third_violations.empty());

    auto tiny = lp_gap_demo(Rational(2), 2);
    CHECK(tiny.gap == Rational(2));

    auto fractional_alpha = lp_gap_demo(Rational(7, 2), 6);
    CHECK(fractional_alpha.gap == Rational(7, 2));

    CHECK_THROWS_AS(lp_gap_demo(Rational(1), 5), ValidationError);
    CHECK_THROWS_AS(lp_gap_demo(Rational(2), 1), ValidationError);
}

TEST_CASE("every petal violates the dropped constraint") {
    auto report = lp_gap_demo(Rational(10), 10);
    // the fractional solution parks each unit at a petal: all of them violate
    CHECK(report.third_violations.size() == 10);
    for (const auto& violation : report.third_violations) CHECK(violation.lhs < violation.rhs);
}
