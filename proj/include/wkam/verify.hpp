#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "models.hpp"
#include "oracle.hpp"
#include "subsolution.hpp"

namespace wkam::oracle {

/// One named property; a failure always carries a witness.
struct Check {
    std::string name;
    bool pass = true;
    std::string witness;
};

struct OracleReport {
    std::size_t n = 0;
    std::string mode;
    std::string alpha0;
    std::vector<Check> checks;

    bool ok() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }
    std::vector<const Check*> failures() const {
        std::vector<const Check*> out;
        for (const auto& c : checks)
            if (!c.pass) out.push_back(&c);
        return out;
    }
    const Check* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

struct VerifyOptions {
    std::uint64_t seed = 1;
    std::size_t samples = 20;
    std::size_t max_index = 4;   // n, m, l in the composition inequalities
    std::size_t horizon = 6;     // N in the representation bound
    std::size_t walk_steps = 4;  // longest c_n compared against enumeration
    std::vector<std::string> only;  // run just these checks when nonempty
};

namespace detail {

template <Scalar T>
class Verifier {
  public:
    using Witness = std::optional<std::string>;

    Verifier(const CostInstance<T>& inst, const Analysis<T>& a, const VerifyOptions& opts)
        : inst_(inst), a_(a), opts_(opts), cmp_(inst.compare()), n_(inst.size()) {}

    OracleReport run() {
        rep_.n = n_;
        rep_.mode = ScalarTraits<T>::mode_name;
        rep_.alpha0 = ScalarTraits<T>::to_string(a_.crit.alpha0);
        samples_ = subsolution_sampler(inst_, a_, opts_.seed, opts_.samples);
        tropical_checks();
        critical_checks();
        potential_checks();
        barrier_checks();
        aubry_checks();
        limit_checks();
        subsolution_checks();
        if (inst_.metric) metric_checks();
        return std::move(rep_);
    }

  private:
    const CostInstance<T>& inst_;
    const Analysis<T>& a_;
    VerifyOptions opts_;
    Compare<T> cmp_;
    std::size_t n_;
    OracleReport rep_;
    std::vector<ValueFunction<T>> samples_;

    void add(const std::string& name, const std::function<Witness()>& body) {
        if (!opts_.only.empty() && std::find(opts_.only.begin(), opts_.only.end(), name) == opts_.only.end()) return;
        Check c{name, true, {}};
        try {
            if (auto w = body()) {
                c.pass = false;
                c.witness = *w;
            }
        } catch (const GuardError& e) {
            c.witness = std::string("skipped: ") + e.what();
        } catch (const std::exception& e) {
            c.pass = false;
            c.witness = std::string("exception: ") + e.what();
        }
        rep_.checks.push_back(std::move(c));
    }

    std::string label(Index x) const { return inst_.labels[x]; }
    std::string pair(Index x, Index y) const { return "(" + label(x) + "," + label(y) + ")"; }
    std::string triple(Index x, Index y, Index z) const { return "(" + label(x) + "," + label(y) + "," + label(z) + ")"; }
    static std::string str(const Extended<T>& v) { return v.to_string(); }
    std::string str(const ValueFunction<T>& u) const {
        std::string out = "[";
        for (Index i = 0; i < u.size(); ++i) out += (i ? ", " : "") + str(u[i]);
        return out + "]";
    }
    std::string set_str(const std::vector<Index>& v) const {
        std::string out = "{";
        for (Index i = 0; i < v.size(); ++i) out += (i ? "," : "") + label(v[i]);
        return out + "}";
    }
    std::string edges_str(const std::set<std::pair<Index, Index>>& e) const {
        std::string out = "{";
        bool first = true;
        for (auto [x, y] : e) {
            out += (first ? "" : ",") + pair(x, y);
            first = false;
        }
        return out + "}";
    }

    Witness compare_matrices(const SquareMatrix<Extended<T>>& got, const SquareMatrix<Extended<T>>& want, const char* what) const {
        for (Index x = 0; x < n_; ++x)
            for (Index y = 0; y < n_; ++y)
                if (!cmp_.eq(got(x, y), want(x, y)))
                    return std::string(what) + " differs at " + pair(x, y) + ": " + str(got(x, y)) + " vs " + str(want(x, y));
        return std::nullopt;
    }

    Witness compare_functions(const ValueFunction<T>& got, const ValueFunction<T>& want, const char* what) const {
        for (Index x = 0; x < n_; ++x)
            if (!cmp_.eq(got[x], want[x]))
                return std::string(what) + " differs at " + label(x) + ": " + str(got[x]) + " vs " + str(want[x]);
        return std::nullopt;
    }

    Extended<T> times_alpha(std::size_t k) const { return Extended<T>(T(a_.crit.alpha0 * T(static_cast<long>(k)))); }

    // ---------------------------------------------------------------------

    void tropical_checks() {
        add("tropical.semigroup", [&]() -> Witness {
            std::vector<PotentialTable<T>> pw{PotentialTable<T>{}};
            for (std::size_t k = 1; k <= 2 * opts_.max_index; ++k) pw.push_back(cost_power(inst_, k));
            for (std::size_t p = 1; p <= opts_.max_index; ++p)
                for (std::size_t q = 1; q <= opts_.max_index; ++q)
                    if (auto w = compare_matrices(min_plus_product(pw[p].entries, pw[q].entries), pw[p + q].entries,
                                                  "c_n (x) c_m vs c_{n+m}"))
                        return *w + " with n=" + std::to_string(p) + ", m=" + std::to_string(q);
            return std::nullopt;
        });
        add("tropical.enumerated_walks", [&]() -> Witness {
            for (std::size_t k = 1; k <= opts_.walk_steps; ++k) {
                const auto ck = cost_power(inst_, k);
                for (Index x = 0; x < n_; ++x)
                    for (Index y = 0; y < n_; ++y)
                        if (!cmp_.eq(ck(x, y), enum_walks(inst_, x, y, k)))
                            return "c_" + std::to_string(k) + pair(x, y) + " = " + str(ck(x, y)) + " but enumeration gives " +
                                   str(enum_walks(inst_, x, y, k));
            }
            return std::nullopt;
        });
        add("tropical.monotone", [&]() -> Witness {
            for (std::size_t s = 0; s + 1 < samples_.size(); ++s) {
                const auto lo = pointwise_min(samples_[s], samples_[s + 1]);
                if (!approx_le(lax_oleinik_neg(inst_, lo), lax_oleinik_neg(inst_, samples_[s]), cmp_))
                    return "T-(min(u,v)) exceeds T-(u) for u = " + str(samples_[s]);
            }
            return std::nullopt;
        });
        add("tropical.constant_shift", [&]() -> Witness {
            const T k = ScalarTraits<T>::from_ratio(7, 4);
            for (const auto& u : samples_)
                if (auto w = compare_functions(lax_oleinik_neg(inst_, shifted(u, k)), shifted(lax_oleinik_neg(inst_, u), k),
                                               "T-(u+k) vs T-(u)+k"))
                    return *w;
            return std::nullopt;
        });
        add("tropical.reversal", [&]() -> Witness {
            const auto rev = reverse_cost(inst_);
            for (const auto& u : samples_) {
                const auto direct = lax_oleinik_pos(inst_, u);
                const auto via = negated(lax_oleinik_neg(rev, negated(u)));
                if (!(direct == via)) return "T+ u differs from -T-_rev(-u) for u = " + str(u);
            }
            return std::nullopt;
        });
    }

    void critical_checks() {
        add("critical.cycle_enumeration", [&]() -> Witness {
            const auto e = enum_cycles(inst_);
            if (!e.min_mean || !cmp_.eq(a_.crit.alpha0, T(-*e.min_mean)))
                return "alpha0 = " + ScalarTraits<T>::to_string(a_.crit.alpha0) + " but the minimum simple-cycle mean is " +
                       (e.min_mean ? ScalarTraits<T>::to_string(*e.min_mean) : std::string("undefined"));
            return std::nullopt;
        });
        add("critical.witness_cycle", [&]() -> Witness {
            const auto w = cycle_weight(a_.crit.reduced, a_.crit.witness_cycle);
            if (!cmp_.eq(w, Extended<T>(T(0)))) return "witness cycle " + set_str(a_.crit.witness_cycle) + " has reduced weight " + str(w);
            return std::nullopt;
        });
        add("critical.feasibility", [&]() -> Witness {
            const auto at = solve_subsolution(inst_, a_.crit.alpha0);
            if (!at.feasible()) return "infeasible at alpha0, negative cycle " + set_str(at.negative_cycle);
            if (!is_dominated(inst_, *at.solution, a_.crit.alpha0)) return "solution at alpha0 is not dominated: " + str(*at.solution);
            for (long q : {1L, 2L, 4L}) {
                const T below = a_.crit.alpha0 - ScalarTraits<T>::from_ratio(1, q);
                const auto res = solve_subsolution(inst_, below);
                if (res.feasible()) return "feasible at alpha0 - 1/" + std::to_string(q);
                if (!cmp_.lt(cycle_weight(detail_shift(below), res.negative_cycle), Extended<T>(T(0))))
                    return "reported cycle " + set_str(res.negative_cycle) + " is not negative at alpha0 - 1/" + std::to_string(q);
            }
            return std::nullopt;
        });
        add("critical.self_loop_bound", [&]() -> Witness {
            for (Index x = 0; x < n_; ++x)
                if (!cmp_.le(Extended<T>(T(0)), inst_(x, x) + Extended<T>(a_.crit.alpha0)))
                    return "alpha0 < -c(x,x) at " + label(x);
            return std::nullopt;
        });
        add("critical.invariance", [&]() -> Witness {
            for (const auto& u : samples_) {
                const auto v = shifted(lax_oleinik_neg(inst_, u), a_.crit.alpha0);
                if (auto d = is_dominated(inst_, v, a_.crit.alpha0); !d)
                    return "T-u + alpha0 not dominated at " + pair(d.witness->first, d.witness->second) + " for u = " + str(u);
            }
            return std::nullopt;
        });
        add("critical.convexity", [&]() -> Witness {
            for (std::size_t s = 0; s + 1 < samples_.size(); ++s) {
                const T t = ScalarTraits<T>::from_ratio(static_cast<long>(s % 5) + 1, 7);
                const auto mix = linear_combination(std::vector{samples_[s], samples_[s + 1]}, std::vector<T>{t, T(T(1) - t)});
                if (!is_dominated(inst_, mix, a_.crit.alpha0)) return "convex combination not dominated: " + str(mix);
            }
            return std::nullopt;
        });
    }

    SquareMatrix<Extended<T>> detail_shift(const T& alpha) const { return wkam::detail::shifted_costs(inst_, alpha); }

    void potential_checks() {
        const auto& phi = a_.phi;
        add("potential.axioms", [&]() -> Witness {
            for (Index x = 0; x < n_; ++x) {
                if (!cmp_.eq(phi(x, x), Extended<T>(T(0)))) return "phi" + pair(x, x) + " = " + str(phi(x, x));
                for (Index y = 0; y < n_; ++y) {
                    if (!cmp_.le(phi(x, y), a_.crit.r(x, y))) return "phi exceeds c + alpha0 at " + pair(x, y);
                    for (Index z = 0; z < n_; ++z)
                        if (!cmp_.le(phi(x, z), phi(x, y) + phi(y, z))) return "triangle inequality fails at " + triple(x, y, z);
                }
            }
            return std::nullopt;
        });
        add("potential.sup_representation", [&]() -> Witness {
            for (const auto& u : samples_)
                for (Index x = 0; x < n_; ++x)
                    for (Index y = 0; y < n_; ++y)
                        if (!cmp_.le(u[y] - u[x], phi(x, y))) return "u(y) - u(x) > phi at " + pair(x, y) + " for u = " + str(u);
            for (Index x = 0; x < n_; ++x)
                for (Index y = 0; y < n_; ++y) {
                    std::optional<Extended<T>> best;
                    for (Index z = 0; z < n_; ++z) {
                        const auto v = phi(z, y) - phi(z, x);
                        if (!best || *best < v) best = v;
                    }
                    if (!cmp_.eq(*best, phi(x, y))) return "rows of phi do not attain phi at " + pair(x, y);
                }
            return std::nullopt;
        });
        add("potential.rows_dominated", [&]() -> Witness {
            for (Index x = 0; x < n_; ++x) {
                if (!is_dominated(inst_, phi.row(x), a_.crit.alpha0)) return "phi_x not dominated for x = " + label(x);
                if (!is_dominated(inst_, phi.negated_column(x), a_.crit.alpha0)) return "phi^x not dominated for x = " + label(x);
            }
            return std::nullopt;
        });
        add("potential.phi1_vs_phi", [&]() -> Witness {
            for (Index x = 0; x < n_; ++x)
                for (Index y = 0; y < n_; ++y) {
                    if (x != y && !cmp_.eq(a_.phi1(x, y), phi(x, y))) return "phi_1 and phi differ at " + pair(x, y);
                    if (x == y && !cmp_.le(Extended<T>(T(0)), a_.phi1(x, x))) return "phi_1 negative on the diagonal at " + label(x);
                }
            return std::nullopt;
        });
        add("potential.recursion", [&]() -> Witness {
            auto prev = phi_n(inst_, a_.crit, 1);
            for (std::size_t k = 1; k <= opts_.max_index; ++k) {
                const auto next = phi_n(inst_, a_.crit, k + 1);
                for (Index x = 0; x < n_; ++x)
                    if (auto w = compare_functions(next.row(x), shifted(lax_oleinik_neg(inst_, prev.row(x)), a_.crit.alpha0),
                                                   "phi_{n+1,x} vs T- phi_{n,x} + alpha0"))
                        return *w + " (x = " + label(x) + ", n = " + std::to_string(k) + ")";
                prev = next;
            }
            return std::nullopt;
        });
        add("potential.finiteness_identity", [&]() -> Witness {
            for (Index x = 0; x < n_; ++x) {
                ValueFunction<T> it = phi.row(x);
                for (std::size_t k = 1; k <= opts_.max_index; ++k) {
                    it = shifted(lax_oleinik_neg(inst_, it), a_.crit.alpha0);
                    if (auto w = compare_functions(it, phi_n(inst_, a_.crit, k).row(x), "T^n phi_x + n alpha0 vs phi_{n,x}"))
                        return *w + " (x = " + label(x) + ", n = " + std::to_string(k) + ")";
                }
            }
            return std::nullopt;
        });
        add("potential.vanishing", [&]() -> Witness {
            for (Index x = 0; x < n_; ++x) {
                ValueFunction<T> one = a_.phi1.row(x), full = phi.row(x);
                for (std::size_t m = 1; m <= opts_.max_index + 1; ++m) {
                    one = lax_oleinik_pos(inst_, one);
                    full = lax_oleinik_pos(inst_, full);
                    const auto zero = Extended<T>(T(0));
                    if (!cmp_.eq(one[x] - times_alpha(m), zero))
                        return "T+^m phi_1x(x) - m alpha0 = " + str(one[x] - times_alpha(m)) + " at " + label(x) + ", m = " + std::to_string(m);
                    if (!cmp_.eq(full[x] - times_alpha(m), zero))
                        return "T+^m phi_x(x) - m alpha0 = " + str(full[x] - times_alpha(m)) + " at " + label(x) + ", m = " + std::to_string(m);
                }
            }
            return std::nullopt;
        });
        add("potential.jumps", [&]() -> Witness {
            for (Index x = 0; x < n_; ++x) {
                if (!cmp_.eq(a_.F[x], a_.phi1(x, x))) return "F(x) != phi_1(x,x) at " + label(x);
                if (!cmp_.eq(a_.f[x], -a_.F[x])) return "f(x) != -F(x) at " + label(x);
                if (!cmp_.le(Extended<T>(T(0)), a_.F[x])) return "F negative at " + label(x);
            }
            return std::nullopt;
        });
    }

    void barrier_checks() {
        const auto& h = a_.bar.h;
        add("barrier.triangle", [&]() -> Witness {
            for (Index x = 0; x < n_; ++x)
                for (Index y = 0; y < n_; ++y)
                    for (Index z = 0; z < n_; ++z)
                        if (!cmp_.le(h(x, z), h(x, y) + h(y, z)))
                            return "h(x,z) > h(x,y) + h(y,z) at " + triple(x, y, z) + ": " + str(h(x, z)) + " > " + str(h(x, y)) +
                                   " + " + str(h(y, z));
            return std::nullopt;
        });
        add("barrier.above_phi", [&]() -> Witness {
            for (Index x = 0; x < n_; ++x)
                for (Index y = 0; y < n_; ++y)
                    if (!cmp_.le(a_.phi(x, y), h(x, y))) return "h < phi at " + pair(x, y);
            return std::nullopt;
        });
        add("barrier.liminf", [&]() -> Witness {
            const auto ref = liminf_barrier(inst_, a_.crit);
            if (!ref.stabilized) return std::string("liminf reference did not stabilise");
            return compare_matrices(h.entries, ref.h, "h vs liminf of c_n + n alpha0");
        });
        add("barrier.closed_form", [&]() -> Witness {
            return compare_matrices(h.entries, barrier_closed_form(a_.phi1, a_.aubry.sets.vertices).entries,
                                    "h vs min over A of phi_1(x,a) + phi_1(a,y)");
        });
        add("barrier.weak_kam", [&]() -> Witness {
            for (Index x = 0; x < n_; ++x) {
                if (!is_weak_kam(inst_, a_.crit, h.row(x), Sign::negative)) return "h_x is not a negative solution, x = " + label(x);
                if (!is_weak_kam(inst_, a_.crit, h.negated_column(x), Sign::positive))
                    return "h^x is not a positive solution, x = " + label(x);
            }
            return std::nullopt;
        });
        add("barrier.composition", [&]() -> Witness {
            const std::size_t K = opts_.max_index;
            std::vector<SquareMatrix<Extended<T>>> cn{{}}, ph{{}};
            for (std::size_t k = 1; k <= 2 * K; ++k) {
                cn.push_back(cost_power(inst_, k).entries);
                ph.push_back(phi_n(inst_, a_.crit, k).entries);
            }
            for (Index x = 0; x < n_; ++x)
                for (Index y = 0; y < n_; ++y)
                    for (Index z = 0; z < n_; ++z)
                        for (std::size_t m = 1; m <= K; ++m) {
                            const auto am = times_alpha(m);
                            if (!cmp_.le(h(x, z), h(x, y) + cn[m](y, z) + am))
                                return "h(x,z) > h(x,y) + c_m(y,z) + m alpha0 at " + triple(x, y, z) + ", m = " + std::to_string(m);
                            if (!cmp_.le(h(x, z), cn[m](x, y) + h(y, z) + am))
                                return "h(x,z) > c_m(x,y) + h(y,z) + m alpha0 at " + triple(x, y, z) + ", m = " + std::to_string(m);
                            if (!cmp_.le(h(x, z), h(x, y) + ph[m](y, z)))
                                return "h(x,z) > h(x,y) + phi_n(y,z) at " + triple(x, y, z) + ", n = " + std::to_string(m);
                            for (std::size_t k = 1; k <= K; ++k) {
                                if (!cmp_.le(ph[k + m](x, z), ph[k](x, y) + cn[m](y, z) + am))
                                    return "phi_{n+m}(x,z) > phi_n(x,y) + c_m(y,z) + m alpha0 at " + triple(x, y, z);
                                for (std::size_t l = 1; l <= K; ++l)
                                    if (k <= l + m && !cmp_.le(ph[k](x, z), ph[m](x, y) + ph[l](y, z)))
                                        return "phi_n(x,z) > phi_m(x,y) + phi_l(y,z) at " + triple(x, y, z) + " with n=" +
                                               std::to_string(k) + ", m=" + std::to_string(m) + ", l=" + std::to_string(l);
                            }
                        }
            return std::nullopt;
        });
        add("barrier.min_formula", [&]() -> Witness {
            for (std::size_t k = 1; k <= 3; ++k)
                if (!min_formula_check(inst_, a_.crit, a_.bar, k)) return "min formula fails for n = " + std::to_string(k);
            return std::nullopt;
        });
        add("barrier.representation", [&]() -> Witness {
            for (const auto& u : samples_)
                if (!representation_check(inst_, a_.crit, a_.bar, u, opts_.horizon).bounded)
                    return "S > h for u = " + str(u);
            const std::size_t N = std::max(opts_.horizon, a_.bar.iterations_to_fix);
            return compare_matrices(representation_attainment(inst_, a_.crit, a_.bar, N), h.entries,
                                    "max over phi_1 rows of S vs h");
        });
        add("barrier.inf_solutions", [&]() -> Witness {
            for (Index x = 0; x < n_; ++x)
                for (Index y = x + 1; y < n_; ++y) {
                    const auto m = inf_solutions(inst_, a_.crit, {h.row(x), h.row(y)});
                    if (!is_weak_kam(inst_, a_.crit, m, Sign::negative)) return "min(h_x, h_y) not a solution at " + pair(x, y);
                }
            return std::nullopt;
        });
    }

    void aubry_checks() {
        const auto& sets = a_.aubry.sets;
        add("aubry.four_way", [&]() -> Witness {
            std::vector<Index> by_F, by_phi;
            for (Index x = 0; x < n_; ++x) {
                if (jump_is_zero(inst_, a_.F[x])) by_F.push_back(x);
                if (is_weak_kam(inst_, a_.crit, a_.phi.row(x), Sign::negative)) by_phi.push_back(x);
            }
            const auto ref = enum_zero_cycles(inst_, a_.crit).vertices;
            if (sets.vertices != by_F || sets.vertices != by_phi || sets.vertices != ref)
                return "h(x,x)=0: " + set_str(sets.vertices) + ", F=0: " + set_str(by_F) + ", phi_x solution: " + set_str(by_phi) +
                       ", zero cycles: " + set_str(ref);
            return std::nullopt;
        });
        add("aubry.edges", [&]() -> Witness {
            const auto ref = enum_zero_cycles(inst_, a_.crit).edges;
            if (sets.edges != ref) return "barrier edges " + edges_str(sets.edges) + " vs zero-cycle edges " + edges_str(ref);
            for (auto [x, y] : sets.edges)
                if (!sets.contains(x) || !sets.contains(y)) return "edge " + pair(x, y) + " leaves the projected set";
            return std::nullopt;
        });
    }

    void limit_checks() {
        add("limits.stabilization", [&]() -> Witness {
            const std::size_t cap = std::max<std::size_t>(4 * n_ * n_, 4);
            for (const auto& u : samples_) {
                const std::size_t steps = std::max(u_minus_limit(inst_, a_.crit, u).steps, u_plus_limit(inst_, a_.crit, u).steps);
                if (steps > cap)
                    return "u_-/u_+ needed " + std::to_string(steps) + " > " + std::to_string(cap) + " steps for u = " + str(u);
            }
            return std::nullopt;
        });
        add("limits.solutions", [&]() -> Witness {
            for (const auto& u : samples_) {
                const auto lo = u_minus(inst_, a_.crit, u), hi = u_plus(inst_, a_.crit, u);
                if (!is_weak_kam(inst_, a_.crit, lo, Sign::negative) || !approx_le(u, lo, cmp_))
                    return "u_- is not a negative solution above u for u = " + str(u);
                if (!is_weak_kam(inst_, a_.crit, hi, Sign::positive) || !approx_le(hi, u, cmp_))
                    return "u_+ is not a positive solution below u for u = " + str(u);
            }
            return std::nullopt;
        });
        add("limits.extremal", [&]() -> Witness {
            for (const auto& u : samples_) {
                std::optional<ValueFunction<T>> lower, upper;
                for (Index x = 0; x < n_; ++x) {
                    const auto hx = a_.bar.h.row(x), hup = a_.bar.h.negated_column(x);
                    std::optional<Extended<T>> up_shift, down_shift;
                    for (Index y = 0; y < n_; ++y) {
                        const auto d = u[y] - hx[y];
                        if (!up_shift || *up_shift < d) up_shift = d;
                        const auto e = u[y] - hup[y];
                        if (!down_shift || e < *down_shift) down_shift = e;
                    }
                    const auto w = shifted(hx, up_shift->value()), v = shifted(hup, down_shift->value());
                    lower = lower ? pointwise_min(*lower, w) : w;
                    if (!upper) upper = v;
                    else
                        for (Index y = 0; y < n_; ++y) (*upper)[y] = max((*upper)[y], v[y]);
                }
                if (auto w = compare_functions(u_minus(inst_, a_.crit, u), *lower, "u_- vs least solution above u")) return *w;
                if (auto w = compare_functions(u_plus(inst_, a_.crit, u), *upper, "u_+ vs greatest solution below u")) return *w;
            }
            return std::nullopt;
        });
        add("limits.conjugate", [&]() -> Witness {
            for (const auto& u : samples_) {
                const auto rep = conjugate_check(inst_, a_.crit, u);
                if (!rep.ok())
                    return std::string("conjugate identities fail (") + (rep.idempotent ? "" : "u_-+ != u_-+-+ ") +
                           (rep.minus_plus_above ? "" : "T-T+ < u ") + (rep.plus_minus_below ? "" : "T+T- > u ") +
                           (rep.operator_idempotent ? "" : "T-T+ not idempotent") + ") for u = " + str(u);
            }
            return std::nullopt;
        });
        add("limits.aubry_invariance", [&]() -> Witness {
            for (const auto& u : samples_) {
                const auto v = shifted(lax_oleinik_neg(inst_, u), a_.crit.alpha0);
                if (aubry_of(inst_, a_.crit, u) != aubry_of(inst_, a_.crit, v))
                    return "A_u changes under T- + alpha0 for u = " + str(u);
            }
            return std::nullopt;
        });
    }

    void subsolution_checks() {
        add("subsolution.chain_criterion", [&]() -> Witness {
            guard(n_, kMaxWalkPoints, "chain criterion");
            for (const auto& u : samples_) {
                const auto ref = calibrated_chains(inst_, a_.crit, u);
                const auto got = aubry_of(inst_, a_.crit, u);
                if (got != ref.vertices) return "A_u = " + set_str(got) + " but chains give " + set_str(ref.vertices) + " for u = " + str(u);
                const auto edges = edge_aubry_of(inst_, a_.crit, u);
                if (edges != ref.edges) return "edge set " + edges_str(edges) + " vs chains " + edges_str(ref.edges) + " for u = " + str(u);
            }
            return std::nullopt;
        });
        add("subsolution.strict", [&]() -> Witness {
            for (const auto& u : samples_) {
                const auto s = strict_subsolution(inst_, a_.crit, u);
                if (!is_dominated(inst_, s, a_.crit.alpha0)) return "strict construction not dominated for u = " + str(u);
                const auto ref = calibrated_chains(inst_, a_.crit, u);
                const auto strict = strict_pairs(inst_, a_.crit, s);
                for (Index x = 0; x < n_; ++x)
                    for (Index y = 0; y < n_; ++y)
                        if (strict.contains({x, y}) == ref.edges.contains({x, y}))
                            return "strictness wrong at " + pair(x, y) + " for u = " + str(u);
                for (Index x : ref.vertices)
                    if (!cmp_.eq(s[x], u[x])) return "u' differs from u on A_u at " + label(x);
            }
            return std::nullopt;
        });
        add("subsolution.max_strict", [&]() -> Witness {
            const auto u1 = max_strict_subsolution(inst_, a_.crit);
            if (!is_dominated(inst_, u1, a_.crit.alpha0)) return "u_1 not dominated: " + str(u1);
            const auto strict = strict_pairs(inst_, a_.crit, u1);
            for (Index x = 0; x < n_; ++x)
                for (Index y = 0; y < n_; ++y)
                    if (strict.contains({x, y}) == a_.aubry.sets.edges.contains({x, y})) return "strictness wrong at " + pair(x, y);
            const auto down = shifted(lax_oleinik_neg(inst_, u1), a_.crit.alpha0);
            const auto up = shifted(lax_oleinik_pos(inst_, u1), T(-a_.crit.alpha0));
            for (Index x = 0; x < n_; ++x)
                if (!a_.aubry.sets.contains(x) && !(cmp_.lt(u1[x], down[x]) && cmp_.lt(up[x], u1[x])))
                    return "strict fixed-point inequalities fail off A at " + label(x);
            return std::nullopt;
        });
        add("subsolution.tight_pairs", [&]() -> Witness {
            for (const auto& u : samples_) {
                const auto image = shifted(lax_oleinik_neg(inst_, u), a_.crit.alpha0);
                for (Index y = 0; y < n_; ++y)
                    for (Index x = 0; x < n_; ++x)
                        if (is_tight(inst_, a_.crit, u, y, x) && !cmp_.eq(u[x], image[x]))
                            return "tight pair " + pair(y, x) + " but u(x) != T-u(x) + alpha0 for u = " + str(u);
            }
            return std::nullopt;
        });
        add("subsolution.convex_calibration", [&]() -> Witness {
            std::vector<ValueFunction<T>> pool = samples_;
            for (Index x = 0; x < n_; ++x) pool.push_back(a_.bar.h.row(x));
            std::vector<Chain> chains;
            const auto& cyc = a_.crit.witness_cycle;
            Chain around{cyc};
            around.points.push_back(cyc.front());
            chains.push_back(around);
            for (Index x = 0; x < n_; ++x)
                for (Index y = 0; y < n_; ++y) chains.push_back(Chain{{x, y}});
            std::mt19937_64 rng(opts_.seed ^ 0x9e3779b97f4a7c15ULL);
            for (std::size_t t = 0; t < pool.size(); ++t) {
                const auto& u = pool[t];
                const auto& v = pool[rng() % pool.size()];
                const auto mix = linear_combination(std::vector{u, v}, std::vector<T>{ScalarTraits<T>::from_ratio(1, 3),
                                                                                      ScalarTraits<T>::from_ratio(2, 3)});
                for (const auto& ch : chains) {
                    const bool both = is_calibrated(inst_, a_.crit, u, ch) && is_calibrated(inst_, a_.crit, v, ch);
                    if (is_calibrated(inst_, a_.crit, mix, ch) != both) return "calibration of a mix disagrees with its parts";
                }
            }
            return std::nullopt;
        });
        add("subsolution.in_between", [&]() -> Witness {
            for (const auto& u : samples_) {
                const auto top = shifted(lax_oleinik_neg(inst_, u), a_.crit.alpha0);
                const auto bottom = shifted(lax_oleinik_pos(inst_, u), T(-a_.crit.alpha0));
                const std::vector<T> w{ScalarTraits<T>::from_ratio(2, 5), ScalarTraits<T>::from_ratio(3, 5)};
                if (!is_dominated(inst_, linear_combination(std::vector{u, top}, w), a_.crit.alpha0))
                    return "v between u and T-u + alpha0 not dominated for u = " + str(u);
                if (!is_dominated(inst_, linear_combination(std::vector{u, bottom}, w), a_.crit.alpha0))
                    return "v between T+u - alpha0 and u not dominated for u = " + str(u);
            }
            return std::nullopt;
        });
    }

    /// B = 1 and K the smallest positive distance at which the space is a length space.
    std::optional<LengthSpaceReport<T>> length_scale() const {
        std::vector<T> distances;
        for (Index x = 0; x < n_; ++x)
            for (Index y = 0; y < n_; ++y)
                if (T(0) < (*inst_.metric)(x, y)) distances.push_back((*inst_.metric)(x, y));
        std::sort(distances.begin(), distances.end());
        for (const auto& K : distances) {
            auto rep = check_length_space(*inst_.metric, T(1), K);
            if (rep.ok) return rep;
        }
        return std::nullopt;
    }

    void metric_checks() {
        const auto scale = length_scale();
        add("models.length_space", [&]() -> Witness {
            if (n_ == 1) return std::nullopt;
            if (!scale) return std::string("no scale K makes the metric a 1-length space");
            for (const auto& [p, chain] : scale->witness_chains) {
                const T bound = T(2) * scale->B * (*inst_.metric)(p.first, p.second) / scale->K + T(1);
                if (!cmp_.le(T(static_cast<long>(chain.size()) - 1), bound)) return "chain for " + pair(p.first, p.second) + " too long";
            }
            return std::nullopt;
        });
        if (!scale) return;
        const auto [k, b] = lipschitz_constants(inst_, a_.crit.alpha0, scale->B, scale->K);
        add("models.lipschitz", [&, k = k, b = b]() -> Witness {
            std::vector<ValueFunction<T>> pool = samples_;
            for (Index x = 0; x < n_; ++x) pool.push_back(a_.bar.h.row(x));
            for (const auto& u : pool)
                if (auto r = lipschitz_large_check(inst_, u, k, b); !r)
                    return "|u(x) - u(y)| > k d + b at " + pair(r.witness->first, r.witness->second) + " for u = " + str(u);
            return std::nullopt;
        });
        add("models.apriori", [&, k = k, b = b]() -> Witness {
            if (!(T(0) < k)) return std::nullopt;
            for (const auto& u : samples_) {
                const auto r = apriori_radius_check(inst_, u, k, b, scale->K);
                if (!r.ok) return "minimiser " + label(r.witness->second) + " for " + label(r.witness->first) + " outside the radius";
            }
            return std::nullopt;
        });
    }
};

}  // namespace detail

/// Every solver invariant against the brute-force references, on one instance.
template <Scalar T>
OracleReport verify(const CostInstance<T>& inst, const Analysis<T>& a, const VerifyOptions& opts = {}) {
    return detail::Verifier<T>(inst, a, opts).run();
}

template <Scalar T>
OracleReport verify_all(const CostInstance<T>& inst, const VerifyOptions& opts = {}) {
    guard(inst.size(), kMaxCyclePoints, "verify_all");
    return verify(inst, analyze(inst), opts);
}

}  // namespace wkam::oracle
