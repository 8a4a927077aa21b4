#ifndef PESWR_SOLVER_HPP
#define PESWR_SOLVER_HPP

#include <memory>
#include <optional>
#include <vector>

#include "peswr/banded_qr.hpp"
#include "peswr/block_tridiag.hpp"
#include "peswr/core.hpp"
#include "peswr/layout.hpp"
#include "peswr/transmission.hpp"

namespace peswr {

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigurationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class BoundarySide { Surface, Bottom, OuterX };

/** Ghost value closing the interior stencil at a physical boundary.
 * Surface and outer-x are homogeneous Neumann copies; the bottom applies
 * the second-order Robin closure, which reduces to a copy at alpha_b=0. */
double apply_physical_bc(BoundarySide side, double interior,
                         const PhysicalParams& params, const GridSpec& grid);

/** One explicit upwind update of the water height.
 * mean_u holds the depth-averaged velocity at the nzeta+1 cell edges;
 * inflow is the upstream value entering the leftmost cell. */
SurfaceField transport_step(const SurfaceField& surface,
                            std::span<const double> mean_u,
                            const PhysicalParams& params, const GridSpec& grid,
                            double inflow);

/** Constant-coefficient Crank-Nicolson operator pair for one domain:
 * lhs = I/dt + L/2 (QR-factored once) and rhs_op = I/dt - L/2. */
struct MomentumSystem {
    DomainLayout layout;
    BlockTridiagonal lhs;
    BlockTridiagonal rhs_op;
    std::unique_ptr<BandedQR> lhs_qr;

    MomentumSystem(const DomainLayout& lay, int bsize)
        : layout(lay), lhs(lay.ncol, bsize), rhs_op(lay.ncol, bsize) {}
};

MomentumSystem assemble_momentum_system(const PhysicalParams& params,
                                        const GridSpec& grid,
                                        const DomainLayout& layout,
                                        const TransmissionParams* tp);

struct Trajectory {
    State final_state;
    InterfaceTrace trace;
    std::vector<State> states; // filled only when requested
};

/** Time stepper for one domain (monodomain or either subdomain).
 *
 * Each step advances the water height by the explicit upwind scheme and
 * then solves the implicit momentum system with the surface gradient
 * averaged over the old and new level. Subdomain instances consume a
 * TransmissionRecord for their interface closure. Instances own no
 * shared mutable data, so distinct instances may run concurrently. */
class SliceSolver {
public:
    SliceSolver(Side side, const PhysicalParams& params, const GridSpec& grid,
                const TransmissionParams* tp);

    const DomainLayout& layout() const { return layout_; }
    const MomentumSystem& system() const { return *system_; }

    // Diagnostic mode: keep zeta pinned at its current values.
    void set_freeze_surface(bool f) { freeze_surface_ = f; }

    void step(State& state, const TransmissionRecord* incoming) const;
    Trajectory run(const State& initial, const TransmissionRecord* incoming,
                   bool store_full = false) const;

private:
    std::vector<double> edge_means(const State& state) const;
    void record_trace(InterfaceTrace& tr, const State& state, int k) const;

    Side side_;
    PhysicalParams params_;
    GridSpec grid_;
    std::optional<TransmissionParams> tp_;
    DomainLayout layout_;
    std::unique_ptr<MomentumSystem> system_;
    std::vector<double> weights_;
    bool freeze_surface_ = false;
};

double column_mean(const VelocityField& vel, std::span<const double> weights, int i);

// Sum of u^2 + v^2 over all cells (unweighted).
double kinetic_energy(const State& s);

} // namespace peswr

#endif
