// Walks through the main quantities on a small instance.

#include <iostream>

#include <wkam/wkam.hpp>

int main() {
    using namespace wkam;
    using Q = Rational;

    SquareMatrix<Extended<Q>> c(3);
    const long raw[3][3] = {{1, 0, 9}, {0, 9, 9}, {9, 9, 9}};
    for (Index x = 0; x < 3; ++x)
        for (Index y = 0; y < 3; ++y) c(x, y) = Extended<Q>(Q(raw[x][y]));
    const CostInstance<Q> inst(c);

    const auto a = analyze(inst);
    std::cout << "alpha0 = " << a.crit.alpha0 << "\n";

    std::cout << "h =\n";
    for (Index x = 0; x < inst.size(); ++x) {
        for (Index y = 0; y < inst.size(); ++y) std::cout << "  " << a.bar.h(x, y).to_string();
        std::cout << "\n";
    }

    std::cout << "Aubry set:";
    for (Index x : a.aubry.sets.vertices) std::cout << " " << inst.labels[x];
    std::cout << "\n";

    const auto u1 = max_strict_subsolution(inst, a.crit);
    std::cout << "strict sub-solution:";
    for (Index x = 0; x < inst.size(); ++x) std::cout << " " << u1[x].to_string();
    std::cout << "\n";

    const auto report = oracle::verify(inst, a);
    std::cout << report.checks.size() << " checks, " << (report.ok() ? "all pass" : "failures") << "\n";
    return report.ok() ? 0 : 1;
}
