#include "peswr/solver.hpp"

#include <cmath>

namespace peswr {

double apply_physical_bc(BoundarySide side, double interior,
                         const PhysicalParams& params, const GridSpec& grid) {
    switch (side) {
    case BoundarySide::Surface:
    case BoundarySide::OuterX:
        return interior;
    case BoundarySide::Bottom: {
        const double h = 0.5 * params.alpha_b * grid.dz;
        return interior * (1.0 - h) / (1.0 + h);
    }
    }
    return interior;
}

SurfaceField transport_step(const SurfaceField& surface,
                            std::span<const double> mean_u,
                            const PhysicalParams& params, const GridSpec& grid,
                            double inflow) {
    const size_t ncell = surface.zeta.size();
    if (mean_u.size() != ncell + 1)
        throw std::invalid_argument("transport_step: mean_u must have ncell+1 edges");
    const double nu = params.u0 * grid.dt / grid.dx;
    if (nu > 1.0 + 1e-14)
        throw SolverError("transport_step: CFL violated (u0*dt/dx > 1)");
    const double r = grid.dt / grid.dx;
    SurfaceField out(static_cast<int>(ncell));
    for (size_t m = 0; m < ncell; ++m) {
        const double upstream = (m == 0) ? inflow : surface.zeta[m - 1];
        out.zeta[m] = (1.0 - nu) * surface.zeta[m] + nu * upstream
                      - r * (mean_u[m + 1] - mean_u[m]);
    }
    return out;
}

namespace {

struct RowIndex {
    static int u(int j) { return 2 * j; }
    static int v(int j) { return 2 * j + 1; }
};

} // namespace

MomentumSystem assemble_momentum_system(const PhysicalParams& params,
                                        const GridSpec& grid,
                                        const DomainLayout& layout,
                                        const TransmissionParams* tp) {
    params.validate();
    grid.validate();
    if (!cfl_ok(params, grid))
        throw ConfigurationError("momentum system: CFL violated (u0*dt/dx > 1)");
    if (layout.side != Side::Mono && tp == nullptr)
        throw ConfigurationError("momentum system: subdomain needs transmission parameters");

    const int nz = grid.nz;
    const int nlev = nz + 1;
    const int bsize = 2 * nlev;
    const double dx = grid.dx;
    const double dz = grid.dz;
    const double re = params.reynolds;
    const double rev = params.reynolds_v;
    const double u0 = params.u0;
    const double eps = params.epsilon;

    // L such that the semi-discrete system reads dX/dt + L X + known = 0.
    BlockTridiagonal L(layout.ncol, bsize);

    const double adv_in = 0.5 * u0 / dx;   // face value coupling per 1/dx
    const double visc = 1.0 / (re * dx * dx);
    const double vz = 1.0 / (rev * dz * dz);
    const double robin = apply_physical_bc(BoundarySide::Bottom, 1.0, params, grid);
    const std::vector<double> w = column_weights(nz, dz);

    for (int i = 0; i < layout.ncol; ++i) {
        const bool left_if = layout.has_interface_left() && i == 0;
        const bool right_if = layout.has_interface_right() && i == layout.ncol - 1;
        const double fw = (left_if || right_if) ? 2.0 : 1.0; // half-cell factor

        for (int j = 0; j < nlev; ++j) {
            for (int comp = 0; comp < 2; ++comp) {
                const int row = 2 * j + comp;
                const int self = row;
                // Right face.
                if (i < layout.ncol - 1) {
                    L.diag(i, row, self) += fw * (adv_in + visc);
                    L.super(i, row, self) += fw * (adv_in - visc);
                } else if (!right_if) {
                    L.diag(i, row, self) += fw * u0 / dx; // outer ghost copy
                }
                // Left face, entering with a minus sign.
                if (i > 0) {
                    L.sub(i, row, self) += fw * (-adv_in - visc);
                    L.diag(i, row, self) += fw * (-adv_in + visc);
                } else if (!left_if) {
                    L.diag(i, row, self) += -fw * u0 / dx;
                }
                // Vertical diffusion with ghost closures.
                if (j > 0 && j < nz) {
                    L.diag(i, row, self) += 2.0 * vz;
                    L.diag(i, row, 2 * (j - 1) + comp) += -vz;
                    L.diag(i, row, 2 * (j + 1) + comp) += -vz;
                } else if (j == 0) {
                    L.diag(i, row, self) += (2.0 - robin) * vz;
                    L.diag(i, row, 2 * (j + 1) + comp) += -vz;
                } else {
                    L.diag(i, row, self) += vz;
                    L.diag(i, row, 2 * (j - 1) + comp) += -vz;
                }
            }
            // Coriolis coupling.
            L.diag(i, RowIndex::u(j), RowIndex::v(j)) += -1.0 / eps;
            L.diag(i, RowIndex::v(j), RowIndex::u(j)) += 1.0 / eps;
        }

        if (left_if || right_if) {
            const InterfaceRowCoeffs c =
                interface_momentum_rows(layout.side, *tp, params, grid);
            for (int j = 0; j < nlev; ++j) {
                L.diag(i, RowIndex::u(j), RowIndex::u(j)) += c.uu;
                L.diag(i, RowIndex::u(j), RowIndex::v(j)) += c.uv;
                L.diag(i, RowIndex::v(j), RowIndex::u(j)) += c.vu;
                L.diag(i, RowIndex::v(j), RowIndex::v(j)) += c.vv;
                for (int m = 0; m < nlev; ++m) {
                    L.diag(i, RowIndex::u(j), RowIndex::u(m)) += c.u_mean_u * w[m];
                    L.diag(i, RowIndex::u(j), RowIndex::v(m)) += c.u_mean_v * w[m];
                    L.diag(i, RowIndex::v(j), RowIndex::u(m)) += c.v_mean_u * w[m];
                }
            }
        }
    }

    MomentumSystem sys(layout, bsize);
    const double idt = 1.0 / grid.dt;
    for (int i = 0; i < layout.ncol; ++i)
        for (int r = 0; r < bsize; ++r)
            for (int cidx = 0; cidx < bsize; ++cidx) {
                const double l = L.diag(i, r, cidx);
                sys.lhs.diag(i, r, cidx) = 0.5 * l + (r == cidx ? idt : 0.0);
                sys.rhs_op.diag(i, r, cidx) = -0.5 * l + (r == cidx ? idt : 0.0);
                const double ls = L.sub(i, r, cidx);
                sys.lhs.sub(i, r, cidx) = 0.5 * ls;
                sys.rhs_op.sub(i, r, cidx) = -0.5 * ls;
                const double lt = L.super(i, r, cidx);
                sys.lhs.super(i, r, cidx) = 0.5 * lt;
                sys.rhs_op.super(i, r, cidx) = -0.5 * lt;
            }
    sys.lhs_qr = std::make_unique<BandedQR>(sys.lhs);
    return sys;
}

double column_mean(const VelocityField& vel, std::span<const double> weights, int i) {
    double s = 0.0;
    for (int j = 0; j < vel.nlev; ++j) s += weights[j] * vel.u[vel.idx(i, j)];
    return s;
}

double kinetic_energy(const State& s) {
    double e = 0.0;
    for (double x : s.velocity.u) e += x * x;
    for (double x : s.velocity.v) e += x * x;
    return e;
}

SliceSolver::SliceSolver(Side side, const PhysicalParams& params, const GridSpec& grid,
                         const TransmissionParams* tp)
    : side_(side), params_(params), grid_(grid),
      layout_(DomainLayout::make(side, grid)),
      weights_(column_weights(grid.nz, grid.dz)) {
    if (tp != nullptr) {
        tp->validate();
        tp_ = *tp;
    }
    system_ = std::make_unique<MomentumSystem>(
        assemble_momentum_system(params, grid, layout_, tp ? &*tp_ : nullptr));
}

std::vector<double> SliceSolver::edge_means(const State& state) const {
    const int nzeta = layout_.nzeta;
    std::vector<double> e(static_cast<size_t>(nzeta) + 1, 0.0);
    for (int m = 0; m <= nzeta; ++m) {
        int col = m + (layout_.side == Side::Plus ? 0 : -1);
        if (layout_.side == Side::Plus && m == 0) {
            // Interface edge: the whole flux there comes in through b_zeta.
            e[0] = 0.0;
            continue;
        }
        if (col < 0) col = 0;
        if (col >= layout_.ncol) col = layout_.ncol - 1;
        e[static_cast<size_t>(m)] = column_mean(state.velocity, weights_, col);
    }
    return e;
}

void SliceSolver::step(State& state, const TransmissionRecord* incoming) const {
    if (state.step_index >= grid_.nt)
        throw SolverError("step: step_index already at nt");
    if (side_ != Side::Mono) {
        if (incoming == nullptr)
            throw SolverError("step: subdomain requires a transmission record");
        const Side want = (side_ == Side::Plus) ? Side::Plus : Side::Minus;
        if (incoming->side != want || incoming->nlev != grid_.nz + 1 ||
            incoming->nt != grid_.nt)
            throw SolverError("step: record shape/side mismatch");
    }
    const int k = state.step_index;
    const int nlev = grid_.nz + 1;
    const int bsize = 2 * nlev;
    const double fr2 = params_.froude * params_.froude;

    // Water height first (explicit, time-k data only).
    const SurfaceField zeta_old = state.surface;
    if (!freeze_surface_) {
        const std::vector<double> e = edge_means(state);
        double inflow;
        if (side_ == Side::Plus)
            inflow = incoming->b_zeta[static_cast<size_t>(k)] / params_.u0;
        else
            inflow = state.surface.zeta[0];
        state.surface = transport_step(state.surface, e, params_, grid_, inflow);
    }

    // Momentum: lhs X_{k+1} = rhs_op X_k - pressure(<zeta>) + records.
    std::vector<double> x(static_cast<size_t>(layout_.ncol) * bsize);
    for (int i = 0; i < layout_.ncol; ++i)
        for (int j = 0; j < nlev; ++j) {
            x[static_cast<size_t>(i) * bsize + 2 * j] =
                state.velocity.u[state.velocity.idx(i, j)];
            x[static_cast<size_t>(i) * bsize + 2 * j + 1] =
                state.velocity.v[state.velocity.idx(i, j)];
        }
    std::vector<double> rhs;
    system_->rhs_op.matvec(x, rhs);

    auto zavg = [&](int m) {
        return 0.5 * (zeta_old.zeta[static_cast<size_t>(m)] +
                      state.surface.zeta[static_cast<size_t>(m)]);
    };
    for (int i = 0; i < layout_.ncol; ++i) {
        const bool left_if = layout_.has_interface_left() && i == 0;
        const bool right_if = layout_.has_interface_right() && i == layout_.ncol - 1;
        const double w = (left_if || right_if) ? 2.0 / grid_.dx : 1.0 / grid_.dx;
        double zr, zl = 0.0;
        if (right_if)
            zr = zavg(layout_.nzeta - 1); // own value extrapolated to the face
        else
            zr = zavg(layout_.zeta_right_of_col(i));
        if (!left_if) zl = zavg(layout_.zeta_left_of_col(i));
        for (int j = 0; j < nlev; ++j) {
            const size_t urow = static_cast<size_t>(i) * bsize + 2 * j;
            if (left_if)
                rhs[urow] -= w * zr / fr2; // interface face comes from b_zeta
            else
                rhs[urow] -= w * (zr - zl) / fr2;
        }
        if (left_if || right_if) {
            const InterfaceRowCoeffs c =
                interface_momentum_rows(layout_.side, *tp_, params_, grid_);
            double bz_avg = 0.0;
            if (side_ == Side::Plus)
                bz_avg = 0.5 * (incoming->b_zeta[static_cast<size_t>(k)] +
                                incoming->b_zeta[static_cast<size_t>(k) + 1]);
            for (int j = 0; j < nlev; ++j) {
                const size_t urow = static_cast<size_t>(i) * bsize + 2 * j;
                rhs[urow] += c.rhs_record_scale * incoming->b_u[incoming->idx(j, k)]
                             + c.rhs_bzeta_scale * bz_avg;
                rhs[urow + 1] += c.rhs_record_scale * incoming->b_v[incoming->idx(j, k)];
            }
        }
    }

    std::vector<double> sol = rhs;
    system_->lhs_qr->solve(sol);

    // Contract: relative residual <= 1e-12.
    std::vector<double> ax;
    system_->lhs.matvec(sol, ax);
    double rn = 0.0, bn = 0.0;
    for (size_t p = 0; p < ax.size(); ++p) {
        const double d = ax[p] - rhs[p];
        rn += d * d;
        bn += rhs[p] * rhs[p];
    }
    if (std::sqrt(rn) > 1e-12 * std::max(std::sqrt(bn), 1e-30))
        throw SolverError("momentum solve: residual above tolerance");

    for (int i = 0; i < layout_.ncol; ++i)
        for (int j = 0; j < nlev; ++j) {
            state.velocity.u[state.velocity.idx(i, j)] =
                sol[static_cast<size_t>(i) * bsize + 2 * j];
            state.velocity.v[state.velocity.idx(i, j)] =
                sol[static_cast<size_t>(i) * bsize + 2 * j + 1];
        }
    if (!state.velocity.finite() || !state.surface.finite())
        throw SolverError("step: non-finite field values");
    ++state.step_index;
}

void SliceSolver::record_trace(InterfaceTrace& tr, const State& state, int k) const {
    int icol;
    int zcell;
    switch (side_) {
    case Side::Plus: icol = 0; zcell = 0; break;
    case Side::Minus: icol = layout_.ncol - 1; zcell = layout_.nzeta - 1; break;
    default: icol = (layout_.ncol - 1) / 2; zcell = icol; break;
    }
    for (int j = 0; j < grid_.nz + 1; ++j) {
        tr.u[tr.idx(j, k)] = state.velocity.u[state.velocity.idx(icol, j)];
        tr.v[tr.idx(j, k)] = state.velocity.v[state.velocity.idx(icol, j)];
    }
    tr.zeta_adjacent[static_cast<size_t>(k)] = state.surface.zeta[static_cast<size_t>(zcell)];
    tr.mean_u[static_cast<size_t>(k)] = column_mean(state.velocity, weights_, icol);
}

Trajectory SliceSolver::run(const State& initial, const TransmissionRecord* incoming,
                            bool store_full) const {
    if (initial.velocity.ncol != layout_.ncol ||
        static_cast<int>(initial.surface.zeta.size()) != layout_.nzeta)
        throw SolverError("run: initial state does not match layout");
    Trajectory traj;
    traj.trace = InterfaceTrace(grid_.nz + 1, grid_.nt);
    State s = initial;
    s.step_index = 0;
    record_trace(traj.trace, s, 0);
    if (store_full) traj.states.push_back(s);
    for (int k = 0; k < grid_.nt; ++k) {
        step(s, incoming);
        record_trace(traj.trace, s, k + 1);
        if (store_full) traj.states.push_back(s);
    }
    traj.final_state = std::move(s);
    return traj;
}

} // namespace peswr
