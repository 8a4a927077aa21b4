#include "peswr/characteristics.hpp"

namespace peswr {

double characteristic_solution(const SpaceFn& zeta_i, const SpaceTimeFn& divergence,
                               const SpaceTimeFn& f, double x, double t,
                               const PhysicalParams& params, int panels) {
    const double u0 = params.u0;
    double out = zeta_i(x - u0 * t);
    if (t <= 0.0) return out;
    int n = std::max(2, panels);
    if (n % 2 != 0) ++n;
    const double h = t / n;
    auto g = [&](double s) { return f(x - u0 * s, t - s) - divergence(x - u0 * s, t - s); };
    double acc = g(0.0) + g(t);
    for (int k = 1; k < n; ++k) acc += (k % 2 ? 4.0 : 2.0) * g(k * h);
    out += acc * h / 3.0;
    return out;
}

} // namespace peswr
