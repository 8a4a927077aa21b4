#ifndef PESWR_EXPERIMENTS_HPP
#define PESWR_EXPERIMENTS_HPP

#include <string>
#include <vector>

#include "peswr/config.hpp"

namespace peswr {

/** Runs the configured experiment and writes its CSV outputs plus a
 * manifest (config hash, seed, file list) under cfg.out_dir. Returns 0
 * on success; solver/configuration failures surface as exceptions for
 * the CLI to report. */
int run_experiment(const RunConfig& cfg);

// Initial condition builders on the union grid.
State build_initial_state(const RunConfig& cfg, const GridSpec& grid);

// Snapshot writers; run_id names the files `<run_id>_k<step>.csv`.
std::string write_velocity_snapshot(const std::string& dir, const std::string& run_id,
                                    const State& s, const DomainLayout& layout);
std::string write_surface_snapshot(const std::string& dir, const std::string& run_id,
                                   const State& s, const DomainLayout& layout);

} // namespace peswr

#endif
