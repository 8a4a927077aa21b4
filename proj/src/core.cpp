#include "peswr/core.hpp"

#include <cmath>
#include <string>

namespace peswr {

void PhysicalParams::validate() const {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
    if (!(reynolds > 0.0)) throw std::invalid_argument("reynolds must be > 0");
    if (!(reynolds_v > 0.0)) throw std::invalid_argument("reynolds_v must be > 0");
    if (!(froude > 0.0)) throw std::invalid_argument("froude must be > 0");
    if (!(u0 > 0.0)) throw std::invalid_argument("u0 must be > 0");
    if (!(alpha_b >= 0.0)) throw std::invalid_argument("alpha_b must be >= 0");
}

void GridSpec::validate() const {
    if (nx < 4) throw std::invalid_argument("nx must be >= 4");
    if (nz < 2) throw std::invalid_argument("nz must be >= 2");
    if (nt < 0) throw std::invalid_argument("nt must be >= 0");
    if (!(dx > 0.0) || !(dz > 0.0) || !(dt > 0.0))
        throw std::invalid_argument("grid steps must be positive");
    if (std::abs(nz * dz - 1.0) > 1e-12)
        throw std::invalid_argument("nz*dz must equal the unit depth");
}

GridSpec make_grid(int nx, int nz, int nt, double t_final, double half_length) {
    if (nt < 1) throw std::invalid_argument("nt must be >= 1");
    if (!(t_final > 0.0) || !(half_length > 0.0))
        throw std::invalid_argument("t_final and half_length must be positive");
    GridSpec g;
    g.nx = nx;
    g.nz = nz;
    g.nt = nt;
    g.dx = half_length / nx;
    g.dz = 1.0 / nz;
    g.dt = t_final / nt;
    g.half_length = half_length;
    g.t_final = t_final;
    g.validate();
    return g;
}

bool cfl_ok(const PhysicalParams& params, const GridSpec& grid) {
    return params.u0 * grid.dt / grid.dx <= 1.0 + 1e-14;
}

static bool all_finite(const std::vector<double>& a) {
    for (double x : a)
        if (!std::isfinite(x)) return false;
    return true;
}

bool VelocityField::finite() const { return all_finite(u) && all_finite(v); }
bool SurfaceField::finite() const { return all_finite(zeta); }

PhysicalParams nondimensionalize(double vel_scale, double length, double depth,
                                 double coriolis, double viscosity, double gravity) {
    if (!(vel_scale > 0.0) || !(length > 0.0) || !(depth > 0.0) ||
        !(coriolis > 0.0) || !(viscosity > 0.0) || !(gravity > 0.0))
        throw std::invalid_argument("nondimensionalize: all scales must be > 0");
    PhysicalParams p;
    p.epsilon = vel_scale / (coriolis * length);
    p.reynolds = vel_scale * length / viscosity;
    p.reynolds_v = (depth * depth) / (length * length) * p.reynolds;
    p.froude = vel_scale / std::sqrt(gravity * depth);
    p.u0 = 1.0;
    return p;
}

double mean_velocity(std::span<const double> column, double dz) {
    const size_t n = column.size();
    if (n < 2) throw std::invalid_argument("mean_velocity: column too short");
    if (std::abs(static_cast<double>(n - 1) * dz - 1.0) > 1e-9)
        throw std::invalid_argument("mean_velocity: column length does not match dz");
    double s = 0.5 * (column[0] + column[n - 1]);
    for (size_t j = 1; j + 1 < n; ++j) s += column[j];
    return dz * s;
}

std::vector<double> vertical_modes(int nz, int n) {
    if (n < 0 || n > nz)
        throw std::invalid_argument("vertical_modes: mode index out of range [0, nz]");
    const double dz = 1.0 / nz;
    const double amp = (n == 0) ? 1.0 : std::sqrt(2.0);
    std::vector<double> e(static_cast<size_t>(nz) + 1);
    for (int j = 0; j <= nz; ++j) {
        const double z = -1.0 + j * dz;
        e[static_cast<size_t>(j)] = amp * std::cos(n * M_PI * z);
    }
    return e;
}

std::vector<double> column_weights(int nz, double dz) {
    std::vector<double> w(static_cast<size_t>(nz) + 1, dz);
    w.front() = 0.5 * dz;
    w.back() = 0.5 * dz;
    return w;
}

} // namespace peswr
