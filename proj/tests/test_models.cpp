#include "common.hpp"

using namespace wkam;
using namespace wkam::testing;

namespace {

SquareMatrix<Q> two_point_metric() {
    SquareMatrix<Q> d(2, Q(0));
    d(0, 1) = d(1, 0) = Q(1);
    return d;
}

}  // namespace

TEST(Generators, Constant) {
    const auto inst = gen_constant<Q>(3, q("7/2"));
    EXPECT_EQ(inst.size(), 3u);
    EXPECT_EQ(inst(2, 1), EQ(q("7/2")));
    EXPECT_THROW(gen_constant<Q>(0, q("1")), std::invalid_argument);
}

TEST(Generators, RandomIsDeterministicAndOnTheGrid) {
    EXPECT_EQ(dump(gen_random<Q>(5, 42, -5, 5)), dump(gen_random<Q>(5, 42, -5, 5)));
    EXPECT_NE(dump(gen_random<Q>(5, 42, -5, 5)), dump(gen_random<Q>(5, 43, -5, 5)));
    const auto inst = gen_random<Q>(6, 9, -2, 3);
    for (Index x = 0; x < 6; ++x)
        for (Index y = 0; y < 6; ++y) {
            const Q v = inst(x, y).value();
            EXPECT_LE(q("-2"), v);
            EXPECT_LE(v, q("3"));
            EXPECT_EQ(Q(v * 4).get_den(), 1);
        }
    const auto fl = gen_random<double>(6, 9, -2, 3);
    for (Index x = 0; x < 6; ++x)
        for (Index y = 0; y < 6; ++y) EXPECT_EQ(fl(x, y).value(), inst(x, y).value().get_d());
    EXPECT_THROW(gen_random<Q>(2, 1, 3, 2), std::invalid_argument);
}

TEST(Generators, FrenkelKontorova) {
    const auto flat = gen_fk<Q>(6, q("1"), fk_potential<Q>(6, "flat"));
    const auto a = analyze(flat);
    EXPECT_EQ(a.crit.alpha0, q("0"));
    EXPECT_EQ(a.aubry.sets.vertices, (std::vector<Index>{0, 1, 2, 3, 4, 5}));
    EXPECT_EQ(flat(0, 2), EQ(q("1/9")));
    EXPECT_EQ((*flat.metric)(1, 5), q("1/3"));

    const auto cosine = gen_fk<Q>(8, q("1"), fk_potential<Q>(8, "cos"));
    EXPECT_EQ(analyze(cosine).aubry.sets.vertices, (std::vector<Index>{0}));

    const auto wells = gen_fk<Q>(8, q("0"), fk_potential<Q>(8, "wells=0;4"));
    const auto aw = analyze(wells);
    EXPECT_TRUE(aw.aubry.sets.contains(0));
    EXPECT_TRUE(aw.aubry.sets.contains(4));

    EXPECT_THROW(gen_fk<Q>(3, q("1"), {q("0"), q("-1"), q("0")}), std::invalid_argument);
    EXPECT_THROW(gen_fk<Q>(3, q("-1"), fk_potential<Q>(3, "flat")), std::invalid_argument);
    EXPECT_THROW(fk_potential<Q>(4, "wells=7"), InputError);
    EXPECT_EQ(fk_potential<Q>(3, "0,1/2,2"), (std::vector<Q>{q("0"), q("1/2"), q("2")}));
}

TEST(LengthSpace, Examples) {
    const auto d = two_point_metric();
    const auto ok = check_length_space(d, Q(1), Q(1));
    EXPECT_TRUE(ok.ok);
    EXPECT_EQ(ok.witness_chains.at({0, 1}), (std::vector<Index>{0, 1}));
    const auto bad = check_length_space(d, Q(1), q("1/2"));
    EXPECT_FALSE(bad.ok);
    EXPECT_TRUE(bad.failing_pair.has_value());

    const auto circle = gen_fk<Q>(8, q("1"), fk_potential<Q>(8, "flat"));
    const auto rep = check_length_space(*circle.metric, Q(1), q("1/8"));
    EXPECT_TRUE(rep.ok);
    EXPECT_EQ(rep.witness_chains.at({0, 3}).size(), 4u);
    EXPECT_THROW(check_length_space(d, q("1/2"), Q(1)), std::invalid_argument);
    EXPECT_THROW(check_length_space(d, Q(1), Q(0)), std::invalid_argument);
}

TEST(Growth, ConstantCost) {
    auto inst = gen_constant<Q>(2, q("5"));
    inst.metric = two_point_metric();
    const auto g = growth_constants(inst, {Q(0), Q(3)}, {Q(0), Q(1)});
    EXPECT_EQ(g.C[0].second, q("-5"));
    EXPECT_EQ(g.C[1].second, q("-2"));
    EXPECT_EQ(g.A[1].second, q("5"));
    EXPECT_THROW(growth_constants(gen_constant<Q>(2, q("5")), {Q(0)}, {Q(0)}), std::invalid_argument);
}

TEST(Lipschitz, SolutionsAndAnOutlier) {
    const auto inst = gen_fk<Q>(8, q("1"), fk_potential<Q>(8, "quad"));
    const auto a = analyze(inst);
    const auto [k, b] = lipschitz_constants(inst, a.crit.alpha0, Q(1), q("1/8"));
    const auto h0 = weak_kam_neg(a.bar, 0);
    EXPECT_TRUE(lipschitz_large_check(inst, h0, k, b).ok);
    EXPECT_TRUE(lipschitz_large_check(inst, ValueFunction<Q>::constant(8, q("3")), Q(0), Q(0)).ok);

    auto outlier = h0;
    outlier[4] += EQ(q("100"));
    const auto res = lipschitz_large_check(inst, outlier, k, b);
    EXPECT_FALSE(res.ok);
    ASSERT_TRUE(res.witness.has_value());
    EXPECT_TRUE(res.witness->first == 4 || res.witness->second == 4);
}

TEST(Apriori, MinimisersStayClose) {
    const auto inst = gen_fk<Q>(8, q("2"), fk_potential<Q>(8, "cos"));
    const auto a = analyze(inst);
    const auto [k, b] = lipschitz_constants(inst, a.crit.alpha0, Q(1), q("1/8"));
    for (Index x = 0; x < 8; ++x) EXPECT_TRUE(apriori_radius_check(inst, weak_kam_neg(a.bar, x), k, b, q("1/4")).ok);
    EXPECT_THROW(apriori_radius_check(inst, weak_kam_neg(a.bar, 0), Q(0), b, q("1/4")), std::invalid_argument);
}
