#ifndef PESWR_CHARACTERISTICS_HPP
#define PESWR_CHARACTERISTICS_HPP

#include <functional>

#include "peswr/core.hpp"

namespace peswr {

using SpaceFn = std::function<double(double)>;
using SpaceTimeFn = std::function<double(double, double)>;

/** Exact transport solution along characteristics,
 *      zeta(x,t) = zeta_i(x - u0 t)
 *                  + int_0^t (f - div)(x - u0 s, t - s) ds,
 * with the integral evaluated by composite Simpson on `panels`
 * subintervals (rounded up to an even count). Serves as the oracle for
 * the upwind scheme. */
double characteristic_solution(const SpaceFn& zeta_i, const SpaceTimeFn& divergence,
                               const SpaceTimeFn& f, double x, double t,
                               const PhysicalParams& params, int panels = 256);

} // namespace peswr

#endif
