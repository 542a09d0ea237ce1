#pragma once

#include "barrier.hpp"

namespace wkam {

/// Everything the solver derives from one total instance.
template <Scalar T>
struct Analysis {
    CriticalData<T> crit;
    PotentialTable<T> phi;   // Mane potential
    PotentialTable<T> phi1;  // phi_1
    BarrierData<T> bar;
    AubryResult<T> aubry;
    ValueFunction<T> F, f;
};

template <Scalar T>
Analysis<T> analyze(const CostInstance<T>& inst) {
    Analysis<T> a;
    a.crit = critical_value(inst);
    a.phi = mane_potential(inst, a.crit);
    a.phi1 = phi_one(inst, a.crit);
    a.bar = peierls_barrier(inst, a.crit);
    a.aubry = aubry(inst, a.crit, a.bar);
    a.F = a.aubry.jumps;
    a.f = jump_f(inst, a.crit, a.phi);
    return a;
}

/// Re-derives the Aubry data from a replacement barrier table (used to audit
/// externally supplied tables).
template <Scalar T>
Analysis<T> with_barrier(const CostInstance<T>& inst, Analysis<T> a, SquareMatrix<Extended<T>> h) {
    a.bar.h.entries = std::move(h);
    a.aubry = aubry(inst, a.crit, a.bar);
    a.F = a.aubry.jumps;
    return a;
}

}  // namespace wkam
