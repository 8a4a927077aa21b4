#ifndef PESWR_LAYOUT_HPP
#define PESWR_LAYOUT_HPP

#include "peswr/core.hpp"

namespace peswr {

enum class Side { Minus, Plus, Mono };

/** Index geometry of one computational domain on the staggered grid.
 *
 * Velocity columns i = 0..ncol-1, zeta cells m = 0..nzeta-1. The three
 * layouts share the interface at x = 0:
 *   Minus: columns at (i-(nx-1))*dx, interface column i = ncol-1.
 *   Plus : columns at i*dx, interface column i = 0.
 *   Mono : union grid, columns at (i-(nx-1))*dx, no interface closure.
 * Zeta cells sit at the half-integer points between columns; the face of
 * velocity column i toward smaller x carries zeta index i + z0 with
 * z0 = 0 (Minus, Mono) or z0 = -1 (Plus). Out-of-range indices mean the
 * face is closed by an outer ghost or by the transmission condition.
 */
struct DomainLayout {
    Side side = Side::Mono;
    int ncol = 0;
    int nzeta = 0;
    int nz = 0;
    double dx = 0.0;
    double x_first = 0.0; // x of velocity column 0

    static DomainLayout make(Side side, const GridSpec& grid);

    int zeta_left_of_col(int i) const {
        return i + (side == Side::Plus ? -1 : 0);
    }
    int zeta_right_of_col(int i) const { return zeta_left_of_col(i) + 1; }

    // Velocity columns bounding zeta cell m (may be out of range at edges).
    int col_left_of_zeta(int m) const {
        return m - 1 - (side == Side::Plus ? -1 : 0);
    }
    int col_right_of_zeta(int m) const { return col_left_of_zeta(m) + 1; }

    double x_velocity(int i) const { return x_first + i * dx; }
    double x_zeta(int m) const {
        return x_velocity(col_left_of_zeta(m)) + 0.5 * dx;
    }

    bool has_interface_left() const { return side == Side::Plus; }
    bool has_interface_right() const { return side == Side::Minus; }
    int interface_column() const { return side == Side::Plus ? 0 : ncol - 1; }

    State zero_state() const {
        State s;
        s.velocity = VelocityField(ncol, nz + 1);
        s.surface = SurfaceField(nzeta);
        return s;
    }
};

// Copy the subdomain portion of a monodomain state.
State restrict_state(const State& mono, const DomainLayout& mono_layout,
                     const DomainLayout& sub);

} // namespace peswr

#endif
