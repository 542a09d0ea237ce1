#include "common.hpp"

using namespace wkam;
using namespace wkam::testing;

namespace {

struct Solved {
    CostInstance<Q> inst;
    CriticalData<Q> crit;
    BarrierData<Q> bar;
};

Solved solve(CostInstance<Q> inst) {
    auto crit = critical_value(inst);
    auto bar = peierls_barrier(inst, crit);
    return {std::move(inst), std::move(crit), std::move(bar)};
}

}  // namespace

TEST(PeierlsBarrier, ConstantCostIsZero) {
    const auto s = solve(gen_constant<Q>(3, q("5")));
    for (Index x = 0; x < 3; ++x)
        for (Index y = 0; y < 3; ++y) EXPECT_EQ(s.bar.h(x, y), EQ(q("0")));
}

TEST(PeierlsBarrier, T2) {
    const auto s = solve(t2());
    EXPECT_EQ(s.bar.h.entries, matrix({{"0", "-1/2"}, {"1/2", "0"}}));
    const auto ref = oracle::liminf_barrier_bounded(s.inst, s.crit, 12);
    EXPECT_TRUE(ref.stabilized);
    EXPECT_EQ(ref.h, s.bar.h.entries);
}

TEST(PeierlsBarrier, T3) {
    const auto s = solve(t3());
    EXPECT_EQ(s.bar.h.entries, matrix({{"0", "0", "9"}, {"0", "0", "9"}, {"9", "9", "18"}}));
    const auto ref = oracle::liminf_barrier(s.inst, s.crit);
    EXPECT_TRUE(ref.stabilized);
    EXPECT_EQ(ref.h, s.bar.h.entries);
}

TEST(PeierlsBarrier, ClosedFormAndInvariants) {
    for (const auto& inst : random_instances(40, 8, 3000)) {
        const auto s = solve(inst);
        const auto a = aubry(s.inst, s.crit, s.bar);
        const auto phi = mane_potential(s.inst, s.crit);
        EXPECT_EQ(barrier_closed_form(phi_one(s.inst, s.crit), a.sets.vertices).entries, s.bar.h.entries);
        for (Index x = 0; x < inst.size(); ++x)
            for (Index y = 0; y < inst.size(); ++y) {
                EXPECT_LE(phi(x, y), s.bar.h(x, y));
                for (Index z = 0; z < inst.size(); ++z) EXPECT_LE(s.bar.h(x, z), s.bar.h(x, y) + s.bar.h(y, z));
            }
        EXPECT_EQ(phi_n(s.inst, s.crit, s.bar.iterations_to_fix).entries, s.bar.h.entries);
    }
}

TEST(Aubry, Examples) {
    const auto k = solve(gen_constant<Q>(3, q("1")));
    const auto ak = aubry(k.inst, k.crit, k.bar);
    EXPECT_EQ(ak.sets.vertices, (std::vector<Index>{0, 1, 2}));
    EXPECT_EQ(ak.sets.edges.size(), 9u);

    const std::set<std::pair<Index, Index>> ab{{0, 1}, {1, 0}};
    const auto s2 = solve(t2());
    const auto a2 = aubry(s2.inst, s2.crit, s2.bar);
    EXPECT_EQ(a2.sets.vertices, (std::vector<Index>{0, 1}));
    EXPECT_EQ(a2.sets.edges, ab);

    const auto s3 = solve(t3());
    const auto a3 = aubry(s3.inst, s3.crit, s3.bar);
    EXPECT_EQ(a3.sets.vertices, (std::vector<Index>{0, 1}));
    EXPECT_EQ(a3.sets.edges, ab);
    EXPECT_EQ(a3.sets, oracle::enum_zero_cycles(s3.inst, s3.crit));
}

TEST(WeakKam, BarrierRowsAndColumns) {
    const auto s = solve(t2());
    EXPECT_EQ(weak_kam_neg(s.bar, 0), fn({"0", "-1/2"}));
    for (Index x = 0; x < 2; ++x) {
        EXPECT_TRUE(is_weak_kam(s.inst, s.crit, weak_kam_neg(s.bar, x), Sign::negative));
        EXPECT_TRUE(is_weak_kam(s.inst, s.crit, weak_kam_pos(s.bar, x), Sign::positive));
        EXPECT_TRUE(is_dominated(s.inst, weak_kam_neg(s.bar, x), s.crit.alpha0));
    }
    const auto k = solve(gen_constant<Q>(2, q("4")));
    EXPECT_TRUE(is_weak_kam(k.inst, k.crit, ValueFunction<Q>::constant(2, q("0")), Sign::negative));
}

TEST(WeakKam, PotentialRowsAreSolutionsExactlyOnAubry) {
    const auto s3 = solve(t3());
    const auto phi = mane_potential(s3.inst, s3.crit);
    EXPECT_TRUE(is_weak_kam(s3.inst, s3.crit, phi.row(0), Sign::negative));
    EXPECT_FALSE(is_weak_kam(s3.inst, s3.crit, phi.row(2), Sign::negative));
    const auto image = shifted(lax_oleinik_neg(s3.inst, phi.row(2)), s3.crit.alpha0);
    EXPECT_EQ(image[0], phi(2, 0));
    EXPECT_EQ(image[1], phi(2, 1));
    EXPECT_NE(image[2], phi(2, 2));
}

TEST(Limits, Examples) {
    const auto s2 = solve(t2());
    EXPECT_EQ(u_minus(s2.inst, s2.crit, fn({"0", "-1/2"})), fn({"0", "-1/2"}));
    const auto k = solve(gen_constant<Q>(3, q("2")));
    EXPECT_EQ(u_minus(k.inst, k.crit, ValueFunction<Q>::constant(3, q("0"))), ValueFunction<Q>::constant(3, q("0")));
    EXPECT_THROW(u_minus(s2.inst, s2.crit, fn({"0", "5"})), std::invalid_argument);
}

TEST(Limits, MonotoneToSolutions) {
    for (const auto& inst : random_instances(30, 6, 4000)) {
        const auto crit = critical_value(inst);
        const auto u = *solve_subsolution(inst, crit.alpha0).solution;
        const auto lo = u_minus(inst, crit, u), hi = u_plus(inst, crit, u);
        EXPECT_TRUE(approx_le(u, lo, inst.compare()));
        EXPECT_TRUE(approx_le(hi, u, inst.compare()));
        EXPECT_TRUE(is_weak_kam(inst, crit, lo, Sign::negative));
        EXPECT_TRUE(is_weak_kam(inst, crit, hi, Sign::positive));
    }
}

TEST(Conjugate, Examples) {
    const auto k = solve(gen_constant<Q>(2, q("3")));
    const auto rk = conjugate_check(k.inst, k.crit, ValueFunction<Q>::constant(2, q("0")));
    EXPECT_TRUE(rk.ok());
    EXPECT_EQ(rk.u_mpmp, ValueFunction<Q>::constant(2, q("0")));

    const auto s3 = solve(t3());
    const auto u = *solve_subsolution(s3.inst, s3.crit.alpha0).solution;
    const auto r3 = conjugate_check(s3.inst, s3.crit, u);
    EXPECT_TRUE(r3.ok());
    EXPECT_EQ(r3.u_mp, r3.u_mpmp);

    const auto h = weak_kam_neg(s3.bar, 0);
    const auto rh = conjugate_check(s3.inst, s3.crit, h);
    EXPECT_EQ(rh.u_m, h);
}

TEST(InfSolutions, Examples) {
    const auto s2 = solve(t2());
    const auto ha = weak_kam_neg(s2.bar, 0), hb = weak_kam_neg(s2.bar, 1);
    EXPECT_EQ(inf_solutions(s2.inst, s2.crit, {ha}), ha);
    EXPECT_EQ(inf_solutions(s2.inst, s2.crit, {ha, hb}), fn({"0", "-1/2"}));
    EXPECT_EQ(inf_solutions(s2.inst, s2.crit, {ha, shifted(ha, q("1"))}), ha);
    EXPECT_THROW(inf_solutions(s2.inst, s2.crit, {}), std::invalid_argument);
}

TEST(Representation, Examples) {
    const auto k = solve(gen_constant<Q>(2, q("1")));
    const auto rk = representation_check(k.inst, k.crit, k.bar, ValueFunction<Q>::constant(2, q("0")), 3);
    EXPECT_TRUE(rk.bounded);
    EXPECT_EQ(rk.sup, k.bar.h.entries);

    const auto s2 = solve(t2());
    const auto r = representation_check(s2.inst, s2.crit, s2.bar, weak_kam_neg(s2.bar, 0), 4);
    EXPECT_TRUE(r.bounded);
    EXPECT_EQ(r.sup(0, 0), s2.bar.h(0, 0));
    EXPECT_EQ(r.sup(0, 1), s2.bar.h(0, 1));
    EXPECT_EQ(representation_attainment(s2.inst, s2.crit, s2.bar, 4), s2.bar.h.entries);
}

TEST(MinFormula, Examples) {
    const auto k = solve(gen_constant<Q>(3, q("2")));
    EXPECT_TRUE(min_formula_check(k.inst, k.crit, k.bar, 1));
    const auto s2 = solve(t2());
    EXPECT_TRUE(min_formula_check(s2.inst, s2.crit, s2.bar, 1));
    const auto s3 = solve(t3());
    EXPECT_TRUE(min_formula_check(s3.inst, s3.crit, s3.bar, 3));
    EXPECT_THROW(min_formula_check(s3.inst, s3.crit, s3.bar, 0), std::invalid_argument);
}

TEST(FloatMode, BarrierMatchesExact) {
    for (std::uint64_t s = 1; s <= 15; ++s) {
        const auto ei = gen_random<Q>(4, s, -5, 5);
        const auto fi = gen_random<double>(4, s, -5, 5);
        const auto ec = critical_value(ei);
        const auto fc = critical_value(fi);
        const auto eh = peierls_barrier(ei, ec).h;
        const auto fh = peierls_barrier(fi, fc).h;
        for (Index x = 0; x < 4; ++x)
            for (Index y = 0; y < 4; ++y) EXPECT_NEAR(fh(x, y).value(), eh(x, y).value().get_d(), 1e-8);
        EXPECT_EQ(aubry(ei, ec, peierls_barrier(ei, ec)).sets, aubry(fi, fc, peierls_barrier(fi, fc)).sets);
    }
}
