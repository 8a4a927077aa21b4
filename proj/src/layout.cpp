#include "peswr/layout.hpp"

namespace peswr {

DomainLayout DomainLayout::make(Side side, const GridSpec& grid) {
    DomainLayout d;
    d.side = side;
    d.nz = grid.nz;
    d.dx = grid.dx;
    switch (side) {
    case Side::Minus:
        d.ncol = grid.nx;
        d.nzeta = grid.nx;
        d.x_first = -(grid.nx - 1) * grid.dx;
        break;
    case Side::Plus:
        d.ncol = grid.nx;
        d.nzeta = grid.nx;
        d.x_first = 0.0;
        break;
    case Side::Mono:
        d.ncol = 2 * grid.nx - 1;
        d.nzeta = 2 * grid.nx;
        d.x_first = -(grid.nx - 1) * grid.dx;
        break;
    }
    return d;
}

State restrict_state(const State& mono, const DomainLayout& mono_layout,
                     const DomainLayout& sub) {
    if (mono.velocity.ncol != mono_layout.ncol)
        throw std::invalid_argument("restrict_state: state does not match layout");
    const int nx = sub.ncol;
    // Column/zeta offsets of the subdomain inside the union grid.
    const int col0 = (sub.side == Side::Plus) ? nx - 1 : 0;
    const int zet0 = (sub.side == Side::Plus) ? nx : 0;
    State out = sub.zero_state();
    out.step_index = mono.step_index;
    for (int j = 0; j <= sub.nz; ++j)
        for (int i = 0; i < nx; ++i) {
            out.velocity.u[out.velocity.idx(i, j)] =
                mono.velocity.u[mono.velocity.idx(col0 + i, j)];
            out.velocity.v[out.velocity.idx(i, j)] =
                mono.velocity.v[mono.velocity.idx(col0 + i, j)];
        }
    for (int m = 0; m < sub.nzeta; ++m)
        out.surface.zeta[static_cast<size_t>(m)] =
            mono.surface.zeta[static_cast<size_t>(zet0 + m)];
    return out;
}

} // namespace peswr
