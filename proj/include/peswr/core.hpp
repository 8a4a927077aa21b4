#ifndef PESWR_CORE_HPP
#define PESWR_CORE_HPP

#include <span>
#include <stdexcept>
#include <vector>

namespace peswr {

/** Dimensionless numbers of the linearized vertical-slice ocean model.
 *
 * The slice drops the transverse direction, so v0 only matters for the
 * Fourier-Laplace symbol toolkit; the time-domain solvers ignore it. */
struct PhysicalParams {
    double epsilon;   // Rossby number, > 0
    double reynolds;  // horizontal Reynolds number, > 0
    double reynolds_v; // vertical Reynolds number Re', > 0
    double froude;    // Froude number, > 0
    double u0;        // background x-velocity, > 0
    double v0 = 0.0;  // background y-velocity (symbol analysis only)
    double alpha_b = 0.0; // bottom friction coefficient, >= 0

    void validate() const;
};

/** Staggered-grid resolution for one subdomain.
 *
 * Velocity lives on nx columns and nz+1 levels (z_j = -1 + j*dz, unit
 * depth), the water height on nx half-integer cells. The monodomain
 * union grid shares these steps and has 2*nx-1 velocity columns.
 */
struct GridSpec {
    int nx;            // velocity columns per subdomain, >= 4
    int nz;            // vertical intervals, >= 2
    int nt;            // time steps
    double dx;
    double dz;
    double dt;
    double half_length; // subdomain extent L in x
    double t_final;

    void validate() const;
};

GridSpec make_grid(int nx, int nz, int nt, double t_final, double half_length);

// u0*dt/dx <= 1, required by the explicit upwind transport step.
bool cfl_ok(const PhysicalParams& params, const GridSpec& grid);

/** Horizontal velocity perturbation (u, v) at cell centers, row-major
 *  with I = i + j*ncol. */
struct VelocityField {
    int ncol = 0;
    int nlev = 0; // nz + 1
    std::vector<double> u;
    std::vector<double> v;

    VelocityField() = default;
    VelocityField(int ncol_, int nlev_)
        : ncol(ncol_), nlev(nlev_),
          u(static_cast<size_t>(ncol_) * nlev_, 0.0),
          v(static_cast<size_t>(ncol_) * nlev_, 0.0) {}

    size_t idx(int i, int j) const { return static_cast<size_t>(j) * ncol + i; }
    bool finite() const;
};

/** Water-height perturbation at half-integer cells. */
struct SurfaceField {
    std::vector<double> zeta;

    SurfaceField() = default;
    explicit SurfaceField(int ncell) : zeta(static_cast<size_t>(ncell), 0.0) {}
    bool finite() const;
};

struct State {
    VelocityField velocity;
    SurfaceField surface;
    int step_index = 0;
};

/** epsilon = U/(f L), Re = U L / nu, Re' = (H/L)^2 Re, Fr = U/sqrt(g H). */
PhysicalParams nondimensionalize(double vel_scale, double length, double depth,
                                 double coriolis, double viscosity, double gravity);

/** Trapezoidal depth average of a velocity column over the unit water
 *  column: dz*(c0/2 + c1 + ... + c_{n-1} + cn/2). */
double mean_velocity(std::span<const double> column, double dz);

/** Neumann eigenmode e_n(z_j) = alpha_n cos(n pi z_j) sampled on the
 *  velocity levels, alpha_0 = 1, alpha_n = sqrt(2) for n > 0. */
std::vector<double> vertical_modes(int nz, int n);

// Trapezoid weights dz*(1/2, 1, ..., 1, 1/2); they sum to 1.
std::vector<double> column_weights(int nz, double dz);

} // namespace peswr

#endif
