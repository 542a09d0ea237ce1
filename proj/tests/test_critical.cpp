#include "common.hpp"

using namespace wkam;
using namespace wkam::testing;

TEST(CriticalValue, ConstantCost) {
    for (std::size_t n : {1, 2, 5}) {
        const auto crit = critical_value(gen_constant<Q>(n, q("7/2")));
        EXPECT_EQ(crit.alpha0, q("-7/2"));
        EXPECT_EQ(crit.witness_cycle.size(), 1u);
    }
}

TEST(CriticalValue, T2) {
    const auto crit = critical_value(t2());
    EXPECT_EQ(crit.alpha0, q("-1/2"));
    EXPECT_EQ(crit.witness_cycle, (std::vector<Index>{0, 1}));
    EXPECT_EQ(crit.reduced, matrix({{"3/2", "-1/2"}, {"1/2", "5/2"}}));
    const auto cycles = oracle::enum_cycles(t2());
    EXPECT_EQ(cycles.cycle_count, 3u);
    EXPECT_EQ(*cycles.min_mean, q("1/2"));
}

TEST(CriticalValue, T3AndFrenkelKontorova) {
    EXPECT_EQ(critical_value(t3()).alpha0, q("0"));
    const auto fk = gen_fk<Q>(8, q("1"), fk_potential<Q>(8, "quad"));
    EXPECT_EQ(critical_value(fk).alpha0, q("0"));
}

TEST(CriticalValue, GraphModeErrors) {
    EXPECT_THROW(critical_value(CostInstance<Q>(matrix({{"1", "2"}, {"inf", "inf"}}))), std::invalid_argument);
    const auto crit = critical_value(CostInstance<Q>(matrix({{"inf", "1"}, {"3", "inf"}})));
    EXPECT_EQ(crit.alpha0, q("-2"));
}

TEST(CriticalValue, SelfLoopBound) {
    for (const auto& inst : random_instances(40, 8)) {
        const auto crit = critical_value(inst);
        for (Index x = 0; x < inst.size(); ++x) EXPECT_GE(crit.alpha0, -inst(x, x).value());
    }
}

TEST(IsDominated, Examples) {
    const auto k = gen_constant<Q>(3, q("2"));
    EXPECT_TRUE(is_dominated(k, ValueFunction<Q>::constant(3, q("0")), q("-2")));
    const auto bad = is_dominated(k, ValueFunction<Q>::constant(3, q("0")), q("-3"));
    EXPECT_FALSE(bad);
    ASSERT_TRUE(bad.witness.has_value());
    EXPECT_EQ(*bad.witness, (std::pair<Index, Index>{0, 0}));
    EXPECT_TRUE(is_dominated(t2(), fn({"0", "-1/2"}), q("-1/2")));
    EXPECT_FALSE(is_dominated(t2(), fn({"0", "1"}), q("-1/2")));
}

TEST(SolveSubsolution, FeasibleExactlyFromAlpha0) {
    const auto inst = t2();
    const auto at = solve_subsolution(inst, q("-1/2"));
    ASSERT_TRUE(at.feasible());
    EXPECT_TRUE(is_dominated(inst, *at.solution, q("-1/2")));
    EXPECT_LE((*at.solution)[1].value() - (*at.solution)[0].value(), q("-1/2"));
    const auto below = solve_subsolution(inst, q("-3/2"));
    ASSERT_FALSE(below.feasible());
    EXPECT_LT(cycle_weight(wkam::detail::shifted_costs(inst, q("-3/2")), below.negative_cycle), EQ(q("0")));
}

TEST(SolveSubsolution, RandomInstancesAgreeWithCycleEnumeration) {
    for (const auto& inst : random_instances(60, 8, 500)) {
        const auto crit = critical_value(inst);
        EXPECT_EQ(crit.alpha0, -*oracle::enum_cycles(inst).min_mean);
        EXPECT_TRUE(solve_subsolution(inst, crit.alpha0).feasible());
        EXPECT_FALSE(solve_subsolution(inst, Q(crit.alpha0 - Q(1, 8))).feasible());
        EXPECT_EQ(cycle_weight(crit.reduced, crit.witness_cycle), EQ(q("0")));
    }
}

TEST(Domination, PreservedByLaxOleinikAndConvexity) {
    for (const auto& inst : random_instances(30, 6, 900)) {
        const auto crit = critical_value(inst);
        const auto u = *solve_subsolution(inst, crit.alpha0).solution;
        const auto v = shifted(lax_oleinik_neg(inst, u), crit.alpha0);
        EXPECT_TRUE(is_dominated(inst, v, crit.alpha0));
        const auto mix = linear_combination(std::vector{u, v}, std::vector<Q>{Q(1, 3), Q(2, 3)});
        EXPECT_TRUE(is_dominated(inst, mix, crit.alpha0));
    }
}

TEST(FloatMode, CriticalValueMatchesExact) {
    for (std::uint64_t s = 1; s <= 20; ++s) {
        const auto exact = critical_value(gen_random<Q>(5, s, -5, 5)).alpha0;
        const auto approx = critical_value(gen_random<double>(5, s, -5, 5)).alpha0;
        EXPECT_NEAR(approx, exact.get_d(), 1e-9);
    }
}
