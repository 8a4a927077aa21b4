#ifndef PESWR_SWR_HPP
#define PESWR_SWR_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "peswr/rng.hpp"
#include "peswr/solver.hpp"

namespace peswr {

enum class GuessKind { Zero, Random, Sinusoid };

struct SwrConfig {
    int max_iterations = 12;
    double tolerance = 0.0; // stop early when the field error drops below
    GuessKind guess = GuessKind::Zero;
    uint64_t seed = 1;       // random guess
    int sinusoid_periods = 1;
    double sinusoid_amplitude = 1.0;
    TransmissionParams tp{0.0, 0.0};
    bool parallel = false; // run the two subdomain solves concurrently

    void validate() const;
};

struct ErrorReport {
    std::vector<double> per_iteration_error;           // vs monodomain, final time
    std::vector<double> per_iteration_interface_error; // record delta between sweeps
};

struct SwrResult {
    ErrorReport report;
    State final_minus;
    State final_plus;
    State reference_final; // monodomain restriction target
};

/** One whole-window subdomain solve driven by an incoming record;
 * returns the trajectory and the outgoing record for the neighbor
 * (update_transmission plus, from the minus side, the water-height
 * functional series). */
std::pair<Trajectory, TransmissionRecord>
solve_subdomain(Side side, const TransmissionRecord& incoming, const State& initial,
                const PhysicalParams& params, const GridSpec& grid,
                const TransmissionParams& tp);

/** Relative L2 distance over all velocity and surface cells of the two
 * subdomains at final time; falls back to the absolute norm when the
 * reference vanishes. */
double l2_error(const State& minus_state, const State& plus_state,
                const State& mono_reference, const GridSpec& grid);

TransmissionRecord zero_guess(Side side, const GridSpec& grid);
TransmissionRecord random_guess(Side side, const GridSpec& grid, Rng& rng);
TransmissionRecord sinusoid_guess(Side side, int periods, double amplitude,
                                  const GridSpec& grid);

/** Jacobi sweep of the waveform relaxation over the full window: both
 * subdomains solve with iteration-n records, then exchange. The initial
 * state is given on the union grid. Deterministic for a fixed config. */
SwrResult swr_run(const SwrConfig& config, const State& initial_union,
                  const PhysicalParams& params, const GridSpec& grid);

} // namespace peswr

#endif
