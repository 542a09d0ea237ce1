#include "common.hpp"

using namespace wkam;
using namespace wkam::testing;

namespace {

std::set<std::pair<Index, Index>> all_pairs(std::size_t n) {
    std::set<std::pair<Index, Index>> out;
    for (Index x = 0; x < n; ++x)
        for (Index y = 0; y < n; ++y) out.insert({x, y});
    return out;
}

std::set<std::pair<Index, Index>> touching(std::size_t n, Index p) {
    std::set<std::pair<Index, Index>> out;
    for (auto e : all_pairs(n))
        if (e.first == p || e.second == p) out.insert(e);
    return out;
}

}  // namespace

TEST(Calibrated, Examples) {
    const auto k = gen_constant<Q>(3, q("4"));
    const auto kc = critical_value(k);
    EXPECT_TRUE(is_calibrated(k, kc, ValueFunction<Q>::constant(3, q("0")), Chain{{0, 2, 1, 1}}));

    const auto i2 = t2();
    const auto c2 = critical_value(i2);
    EXPECT_TRUE(is_calibrated(i2, c2, fn({"0", "-1/2"}), Chain{{0, 1}}));
    EXPECT_FALSE(is_calibrated(i2, c2, fn({"0", "-1/2"}), Chain{{0, 0}}));

    // h_a = (0, 0, 9) on T3: the step a -> c costs exactly h_a(c) - h_a(a).
    const auto i3 = t3();
    const auto c3 = critical_value(i3);
    const auto ha = peierls_barrier(i3, c3).h.row(0);
    EXPECT_EQ(ha, fn({"0", "0", "9"}));
    EXPECT_TRUE(is_calibrated(i3, c3, ha, Chain{{0, 2}}));
    EXPECT_FALSE(is_calibrated(i3, c3, ha, Chain{{2, 0}}));

    EXPECT_THROW(is_calibrated(i2, c2, fn({"0", "-1/2"}), Chain{{0}}), std::invalid_argument);
    EXPECT_THROW(is_calibrated(i2, c2, fn({"0", "-1/2"}), Chain{{0, 7}}), std::invalid_argument);
    EXPECT_THROW(is_calibrated(i2, c2, fn({"0", "4"}), Chain{{0, 1}}), std::invalid_argument);
}

TEST(AubryOf, Examples) {
    const auto k = gen_constant<Q>(3, q("4"));
    EXPECT_EQ(aubry_of(k, critical_value(k), ValueFunction<Q>::constant(3, q("0"))), (std::vector<Index>{0, 1, 2}));
    const auto i2 = t2();
    EXPECT_EQ(aubry_of(i2, critical_value(i2), fn({"0", "-1/2"})), (std::vector<Index>{0, 1}));
    const auto i3 = t3();
    const auto c3 = critical_value(i3);
    EXPECT_EQ(aubry_of(i3, c3, peierls_barrier(i3, c3).h.row(0)), (std::vector<Index>{0, 1}));
}

TEST(AubryOf, PointBetweenTwoStaticClassesWithoutACycle) {
    // a and c carry zero self-loops, b sits on the tight path a -> b -> c only.
    const CostInstance<Q> inst(matrix({{"0", "0", "9"}, {"9", "9", "0"}, {"9", "9", "0"}}));
    const auto crit = critical_value(inst);
    EXPECT_EQ(crit.alpha0, q("0"));
    const auto u = fn({"0", "0", "0"});
    EXPECT_EQ(aubry_of(inst, crit, u), (std::vector<Index>{0, 1, 2}));
    EXPECT_EQ(oracle::calibrated_chains(inst, crit, u).vertices, (std::vector<Index>{0, 1, 2}));
}

TEST(StrictSubsolution, Examples) {
    const auto k = gen_constant<Q>(3, q("1"));
    const auto kc = critical_value(k);
    const auto zero = ValueFunction<Q>::constant(3, q("0"));
    EXPECT_EQ(strict_subsolution(k, kc, zero), zero);

    const auto i3 = t3();
    const auto c3 = critical_value(i3);
    const auto ha = peierls_barrier(i3, c3).h.row(0);
    const auto s = strict_subsolution(i3, c3, ha);
    EXPECT_TRUE(is_dominated(i3, s, c3.alpha0));
    const auto strict = strict_pairs(i3, c3, s);
    for (auto e : touching(3, 2)) EXPECT_TRUE(strict.contains(e));
    EXPECT_EQ(s[0], ha[0]);
    EXPECT_EQ(s[1], ha[1]);
}

TEST(StrictSubsolution, SolutionOnAFullZeroCycleIsUnchanged) {
    const auto i2 = t2();
    const auto c2 = critical_value(i2);
    const auto u = fn({"0", "-1/2"});
    EXPECT_EQ(strict_subsolution(i2, c2, u), u);
}

TEST(MaxStrict, Examples) {
    const auto k = gen_constant<Q>(3, q("2"));
    const auto kc = critical_value(k);
    const auto u1 = max_strict_subsolution(k, kc);
    EXPECT_EQ(u1[0], u1[1]);
    EXPECT_EQ(u1[1], u1[2]);
    EXPECT_TRUE(strict_pairs(k, kc, u1).empty());

    const auto i3 = t3();
    const auto c3 = critical_value(i3);
    const auto s3 = strict_pairs(i3, c3, max_strict_subsolution(i3, c3));
    auto expected = touching(3, 2);
    expected.insert({0, 0});
    expected.insert({1, 1});
    EXPECT_EQ(s3, expected);

    const auto i2 = t2();
    const auto c2 = critical_value(i2);
    const auto s2 = strict_pairs(i2, c2, max_strict_subsolution(i2, c2));
    EXPECT_EQ(s2, (std::set<std::pair<Index, Index>>{{0, 0}, {1, 1}}));
}

TEST(MaxStrict, StrictFixedPointInequalitiesOffAubry) {
    for (const auto& inst : random_instances(40, 6, 7000)) {
        const auto crit = critical_value(inst);
        const auto a = aubry(inst, crit, peierls_barrier(inst, crit)).sets;
        const auto u1 = max_strict_subsolution(inst, crit);
        EXPECT_TRUE(is_dominated(inst, u1, crit.alpha0));
        const auto down = shifted(lax_oleinik_neg(inst, u1), crit.alpha0);
        const auto up = shifted(lax_oleinik_pos(inst, u1), Q(-crit.alpha0));
        for (Index x = 0; x < inst.size(); ++x) {
            if (a.contains(x)) continue;
            EXPECT_LT(u1[x], down[x]);
            EXPECT_LT(up[x], u1[x]);
        }
        for (Index x = 0; x < inst.size(); ++x)
            for (Index y = 0; y < inst.size(); ++y) EXPECT_EQ(is_strict_at(inst, crit, u1, x, y), !a.edges.contains({x, y}));
    }
}
