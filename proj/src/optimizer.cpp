#include "peswr/optimizer.hpp"

#include <cmath>

namespace peswr {

void SweepSpec::validate() const {
    if (alpha_factors.empty()) throw std::invalid_argument("alpha grid must be non-empty");
    for (double f : alpha_factors)
        if (!(f > 0.0)) throw std::invalid_argument("alpha factors must be > 0");
    if (beta_grid) {
        if (beta_factors.empty())
            throw std::invalid_argument("beta grid must be non-empty when enabled");
        for (double f : beta_factors)
            if (!(f > 0.0)) throw std::invalid_argument("beta factors must be > 0");
    }
    if (fixed_iterations < 1) throw std::invalid_argument("fixed_iterations >= 1");
    if (trials < 1) throw std::invalid_argument("trials >= 1");
}

std::vector<double> log_factors(double lo, double hi, int count) {
    if (!(lo > 0.0) || !(hi > lo) || count < 1)
        throw std::invalid_argument("log_factors: bad range");
    std::vector<double> out;
    out.reserve(static_cast<size_t>(count));
    if (count == 1) {
        out.push_back(std::sqrt(lo * hi));
        return out;
    }
    const double step = (std::log(hi) - std::log(lo)) / (count - 1);
    for (int k = 0; k < count; ++k) out.push_back(std::exp(std::log(lo) + k * step));
    return out;
}

namespace {

double mean_final_error(const SwrConfig& base, const TransmissionParams& tp,
                        const SweepSpec& spec, const PhysicalParams& params,
                        const GridSpec& grid) {
    const DomainLayout mono = DomainLayout::make(Side::Mono, grid);
    const State zero = mono.zero_state();
    double acc = 0.0;
    for (int t = 0; t < spec.trials; ++t) {
        SwrConfig cfg = base;
        cfg.tp = tp;
        cfg.max_iterations = spec.fixed_iterations;
        cfg.tolerance = 0.0;// run all iterations
        cfg.seed = spec.seed_base + static_cast<uint64_t>(t);
        const SwrResult res = swr_run(cfg, zero, params, grid);
        acc += res.report.per_iteration_error.back();
    }
    return acc / spec.trials;
}

} // namespace

AlphaSweepResult optimize_alpha(const SweepSpec& spec, const SwrConfig& base,
                                const PhysicalParams& params, const GridSpec& grid) {
    spec.validate();
    AlphaSweepResult out;
    out.alpha_tay = alpha_taylor(params);
    for (double f : spec.alpha_factors) {
        TransmissionParams tp = base.tp;
        tp.alpha = f * out.alpha_tay;
        SweepRow row;
        row.factor = f;
        row.value = tp.alpha;
        row.mean_error = mean_final_error(base, tp, spec, params, grid);
        out.table.push_back(row);
    }
    size_t best = 0;
    for (size_t k = 1; k < out.table.size(); ++k) {
        const SweepRow& cand = out.table[k];
        const SweepRow& cur = out.table[best];
        if (cand.mean_error < cur.mean_error ||
            (cand.mean_error == cur.mean_error &&
             std::abs(std::log(cand.factor)) < std::abs(std::log(cur.factor))))
            best = k;
    }
    out.alpha_opt = out.table[best].value;
    return out;
}

std::vector<SweepRow> beta_sensitivity(const SweepSpec& spec, const SwrConfig& base,
                                       double alpha_fixed, const PhysicalParams& params,
                                       const GridSpec& grid) {
    spec.validate();
    const std::vector<double> factors =
        spec.beta_grid ? spec.beta_factors : std::vector<double>{1.0};
    const double beta_tay = beta_taylor(params);
    std::vector<SweepRow> table;
    for (double f : factors) {
        TransmissionParams tp{alpha_fixed, f * beta_tay};
        SweepRow row;
        row.factor = f;
        row.value = tp.beta;
        row.mean_error = mean_final_error(base, tp, spec, params, grid);
        table.push_back(row);
    }
    return table;
}

} // namespace peswr
