#ifndef PESWR_OPTIMIZER_HPP
#define PESWR_OPTIMIZER_HPP

#include <vector>

#include "peswr/swr.hpp"

namespace peswr {

/** Sweep plan for the transmission-parameter study on the zero-solution
 *  random-guess test. Factors are multiplicative relative to the Taylor
 *  values. */
struct SweepSpec {
    std::vector<double> alpha_factors; // log-spaced, must contain > 0 entries
    bool beta_grid = false;            // false: beta fixed at its Taylor value
    std::vector<double> beta_factors;  // used when beta_grid
    int fixed_iterations = 4;
    int trials = 3; // random seeds averaged
    uint64_t seed_base = 1;

    void validate() const;
};

std::vector<double> log_factors(double lo, double hi, int count);

struct SweepRow {
    double factor = 0.0;
    double value = 0.0; // resulting alpha or beta
    double mean_error = 0.0;
};

struct AlphaSweepResult {
    double alpha_opt = 0.0;
    double alpha_tay = 0.0;
    std::vector<SweepRow> table;
};

/** Mean final-iteration error over the trial seeds for each alpha factor;
 * returns the argmin (ties broken toward the factor nearest 1) and the
 * full table. The base config supplies guess/iteration settings; alpha
 * is overridden per grid point, beta stays at the base value. */
AlphaSweepResult optimize_alpha(const SweepSpec& spec, const SwrConfig& base,
                                const PhysicalParams& params, const GridSpec& grid);

/** Error spread when beta sweeps around its Taylor value at fixed alpha. */
std::vector<SweepRow> beta_sensitivity(const SweepSpec& spec, const SwrConfig& base,
                                       double alpha_fixed, const PhysicalParams& params,
                                       const GridSpec& grid);

} // namespace peswr

#endif
