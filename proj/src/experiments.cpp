#include "peswr/experiments.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "peswr/characteristics.hpp"
#include "peswr/csv.hpp"
#include "peswr/symbols.hpp"

namespace fs = std::filesystem;

namespace peswr {

namespace {

struct Emitter {
    fs::path dir;
    std::vector<std::string> files;

    std::ofstream open(const std::string& name) {
        fs::create_directories(dir);
        files.push_back(name);
        std::ofstream os(dir / name);
        if (!os) throw std::runtime_error("cannot write " + (dir / name).string());
        return os;
    }

    void manifest(const RunConfig& cfg) {
        std::ofstream os(dir / "manifest.txt");
        char hex[32];
        std::snprintf(hex, sizeof(hex), "%016llx",
                      static_cast<unsigned long long>(config_hash(cfg)));
        os << "config_hash=" << hex << "\n";
        os << "seed=" << cfg.seed << "\n";
        for (const std::string& f : files) os << "file " << f << "\n";
    }
};

std::string step_name(const std::string& run_id, int k) {
    std::ostringstream ss;
    ss << run_id << "_k" << k << ".csv";
    return ss.str();
}

void write_errors_csv(Emitter& em, const ErrorReport& rep) {
    std::ofstream os = em.open("errors.csv");
    os << "iteration,field_error,interface_error\n";
    for (size_t k = 0; k < rep.per_iteration_error.size(); ++k)
        os << (k + 1) << ',' << csv_num(rep.per_iteration_error[k]) << ','
           << csv_num(rep.per_iteration_interface_error[k]) << '\n';
}

std::vector<double> parse_epsilon_list(const RunConfig& cfg) {
    std::vector<double> eps;
    if (cfg.epsilon_list.empty()) {
        eps.push_back(cfg.epsilon);
        return eps;
    }
    std::stringstream ss(cfg.epsilon_list);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        eps.push_back(std::stod(tok));
    }
    if (eps.empty()) throw ConfigError("epsilon_list parsed to no values");
    return eps;
}

int run_mono(const RunConfig& cfg, Emitter& em) {
    const PhysicalParams p = cfg.physical();
    const GridSpec g = cfg.grid();
    const DomainLayout lay = DomainLayout::make(Side::Mono, g);
    const State init = build_initial_state(cfg, g);
    SliceSolver solver(Side::Mono, p, g, nullptr);

    em.files.push_back(write_velocity_snapshot(em.dir.string(), "mono_vel", init, lay));
    em.files.push_back(write_surface_snapshot(em.dir.string(), "mono_zeta", init, lay));
    State s = init;
    for (int k = 0; k < g.nt; ++k) {
        solver.step(s, nullptr);
        const bool at_end = (k + 1 == g.nt);
        if (at_end || (cfg.snapshot_every > 0 && (k + 1) % cfg.snapshot_every == 0)) {
            em.files.push_back(
                write_velocity_snapshot(em.dir.string(), "mono_vel", s, lay));
            em.files.push_back(
                write_surface_snapshot(em.dir.string(), "mono_zeta", s, lay));
        }
    }
    return 0;
}

int run_swr(const RunConfig& cfg, Emitter& em) {
    const PhysicalParams p = cfg.physical();
    const GridSpec g = cfg.grid();
    const State init = build_initial_state(cfg, g);
    const SwrConfig sc = cfg.swr(p);
    const SwrResult res = swr_run(sc, init, p, g);
    write_errors_csv(em, res.report);
    const DomainLayout lm = DomainLayout::make(Side::Minus, g);
    const DomainLayout lp = DomainLayout::make(Side::Plus, g);
    em.files.push_back(
        write_velocity_snapshot(em.dir.string(), "swr_minus_vel", res.final_minus, lm));
    em.files.push_back(
        write_surface_snapshot(em.dir.string(), "swr_minus_zeta", res.final_minus, lm));
    em.files.push_back(
        write_velocity_snapshot(em.dir.string(), "swr_plus_vel", res.final_plus, lp));
    em.files.push_back(
        write_surface_snapshot(em.dir.string(), "swr_plus_zeta", res.final_plus, lp));
    return 0;
}

int run_optimize_alpha(const RunConfig& cfg, Emitter& em) {
    const GridSpec g = cfg.grid();
    SweepSpec spec;
    spec.alpha_factors =
        log_factors(cfg.alpha_factor_min, cfg.alpha_factor_max, cfg.alpha_factor_count);
    spec.trials = cfg.trials;
    spec.fixed_iterations = cfg.fixed_iterations;
    spec.seed_base = cfg.seed;

    std::ofstream sweep = em.open("alpha_sweep.csv");
    sweep << "epsilon,factor,mean_error\n";
    std::ofstream opt = em.open("alpha_opt.csv");
    opt << "epsilon,alpha_opt,alpha_tay,ratio\n";

    for (double eps : parse_epsilon_list(cfg)) {
        RunConfig local = cfg;
        local.epsilon = eps;
        const PhysicalParams p = local.physical();
        SwrConfig base = local.swr(p);
        base.guess = GuessKind::Random;
        const AlphaSweepResult res = optimize_alpha(spec, base, p, g);
        for (const SweepRow& row : res.table)
            sweep << csv_num(eps) << ',' << csv_num(row.factor) << ','
                  << csv_num(row.mean_error) << '\n';
        opt << csv_num(eps) << ',' << csv_num(res.alpha_opt) << ','
            << csv_num(res.alpha_tay) << ',' << csv_num(res.alpha_opt / res.alpha_tay)
            << '\n';
    }
    return 0;
}

int run_analyze_symbols(const RunConfig& cfg, Emitter& em) {
    const PhysicalParams base = cfg.physical();
    std::ofstream os = em.open("symbols.csv");
    os << "epsilon,baroclinic_symbol_gap,root_pos_plus_err,root_pos_minus_err,"
          "root_neg_plus_err,root_neg_minus_err,transport_root_err\n";
    const std::vector<double> ladder{1e-2, 1e-3, 1e-4, 1e-5};
    for (double eps : ladder) {
        PhysicalParams p = base;
        p.epsilon = eps;
        SymbolInput inp{Cplx(cfg.symbol_s_re, cfg.symbol_s_im), cfg.symbol_eta,
                        cfg.symbol_mode, p};
        const SymbolMatrix gap = baroclinic_symbol_exact(inp, Side::Plus) -
                                 baroclinic_symbol_approx(Side::Plus, p);
        SymbolInput b0 = inp;
        b0.n = 0;
        const auto coeffs = barotropic_det_coeffs(b0);
        const std::vector<Cplx> cvec(coeffs.begin(), coeffs.end());
        const std::vector<Cplx> roots = polyroots(cvec);
        const BarotropicAsymptotics asym = barotropic_roots_asymptotic(b0);
        auto nearest = [&](Cplx target) {
            double best = 1e300;
            for (const Cplx& r : roots) best = std::min(best, std::abs(r - target));
            return best;
        };
        os << csv_num(eps) << ',' << csv_num(gap.frobenius()) << ','
           << csv_num(nearest(asym.pos_plus)) << ',' << csv_num(nearest(asym.pos_minus))
           << ',' << csv_num(nearest(asym.neg_plus)) << ','
           << csv_num(nearest(asym.neg_minus)) << ',' << csv_num(nearest(asym.transport))
           << '\n';
    }
    return 0;
}

int run_convergence_study(const RunConfig& cfg, Emitter& em) {
    // Pure transport refinement against the characteristic formula: a
    // smooth hump advected with prescribed smooth divergence forcing.
    const PhysicalParams p = cfg.physical();
    std::ofstream os = em.open("convergence.csv");
    os << "h,error,observed_order\n";
    auto zeta_i = [](double x) { return std::exp(-8.0 * x * x); };
    auto mean_u_fn = [](double x, double) { return 0.1 * std::sin(M_PI * x); };
    auto div_fn = [](double x, double) { return 0.1 * M_PI * std::cos(M_PI * x); };
    auto f_zero = [](double, double) { return 0.0; };

    const double t_end = 0.4;
    const double lo = -2.0, hi = 2.0;
    double prev_err = 0.0, prev_h = 0.0;
    for (int level = 0; level < cfg.conv_levels; ++level) {
        const int ncell = 40 << level;
        const double h = (hi - lo) / ncell;
        const double dt = 0.5 * h / p.u0; // fixed Courant number 0.5
        const int steps = static_cast<int>(std::round(t_end / dt));
        GridSpec g;
        g.nx = ncell;
        g.nz = 2;
        g.nt = steps;
        g.dx = h;
        g.dz = 0.5;
        g.dt = t_end / steps;
        g.half_length = hi - lo;
        g.t_final = t_end;

        SurfaceField zeta(ncell);
        for (int m = 0; m < ncell; ++m)
            zeta.zeta[static_cast<size_t>(m)] = zeta_i(lo + (m + 0.5) * h);
        std::vector<double> edges(static_cast<size_t>(ncell) + 1);
        for (int k = 0; k < steps; ++k) {
            const double t = k * g.dt;
            for (int e = 0; e <= ncell; ++e)
                edges[static_cast<size_t>(e)] = mean_u_fn(lo + e * h, t);
            const double inflow = characteristic_solution(
                zeta_i, div_fn, f_zero, lo - 0.5 * h, t, p, 4 * steps);
            zeta = transport_step(zeta, edges, p, g, inflow);
        }
        double err = 0.0;
        for (int m = 0; m < ncell; ++m) {
            const double x = lo + (m + 0.5) * h;
            const double exact =
                characteristic_solution(zeta_i, div_fn, f_zero, x, t_end, p, 4 * steps);
            err += std::abs(zeta.zeta[static_cast<size_t>(m)] - exact) * h;
        }
        double order = 0.0;
        if (level > 0) order = std::log(prev_err / err) / std::log(prev_h / h);
        os << csv_num(h) << ',' << csv_num(err) << ',' << csv_num(order) << '\n';
        prev_err = err;
        prev_h = h;
    }
    return 0;
}

} // namespace

State build_initial_state(const RunConfig& cfg, const GridSpec& grid) {
    const DomainLayout lay = DomainLayout::make(Side::Mono, grid);
    State s = lay.zero_state();
    switch (cfg.initial_kind()) {
    case InitialKind::Zero:
        break;
    case InitialKind::Step: {
        const double lo = cfg.step_band_lo * grid.half_length;
        const double hi = cfg.step_band_hi * grid.half_length;
        for (int m = 0; m < lay.nzeta; ++m) {
            const double x = lay.x_zeta(m);
            if (x >= lo && x <= hi)
                s.surface.zeta[static_cast<size_t>(m)] = cfg.step_height;
        }
        break;
    }
    case InitialKind::CustomCsv: {
        std::ifstream in(cfg.custom_csv);
        if (!in) throw ConfigError("custom_csv: cannot open '" + cfg.custom_csv + "'");
        std::string line;
        std::getline(in, line); // header i,x,zeta
        int rows = 0;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::stringstream ss(line);
            std::string tok;
            std::getline(ss, tok, ',');
            const int m = std::stoi(tok);
            std::getline(ss, tok, ',');
            std::getline(ss, tok, ',');
            if (m < 0 || m >= lay.nzeta)
                throw ConfigError("custom_csv: cell index out of range");
            s.surface.zeta[static_cast<size_t>(m)] = std::stod(tok);
            ++rows;
        }
        if (rows != lay.nzeta)
            throw ConfigError("custom_csv: expected one row per surface cell");
        break;
    }
    }
    return s;
}

std::string write_velocity_snapshot(const std::string& dir, const std::string& run_id,
                                    const State& s, const DomainLayout& layout) {
    const std::string name = step_name(run_id, s.step_index);
    std::ofstream os(fs::path(dir) / name);
    if (!os) throw std::runtime_error("cannot write snapshot " + name);
    os << "i,j,x,z,u,v\n";
    for (int j = 0; j <= layout.nz; ++j)
        for (int i = 0; i < layout.ncol; ++i) {
            const double z = -1.0 + static_cast<double>(j) / layout.nz;
            os << i << ',' << j << ',' << csv_num(layout.x_velocity(i)) << ','
               << csv_num(z) << ',' << csv_num(s.velocity.u[s.velocity.idx(i, j)]) << ','
               << csv_num(s.velocity.v[s.velocity.idx(i, j)]) << '\n';
        }
    return name;
}

std::string write_surface_snapshot(const std::string& dir, const std::string& run_id,
                                   const State& s, const DomainLayout& layout) {
    const std::string name = step_name(run_id, s.step_index);
    std::ofstream os(fs::path(dir) / name);
    if (!os) throw std::runtime_error("cannot write snapshot " + name);
    os << "i,x,zeta\n";
    for (int m = 0; m < layout.nzeta; ++m)
        os << m << ',' << csv_num(layout.x_zeta(m)) << ','
           << csv_num(s.surface.zeta[static_cast<size_t>(m)]) << '\n';
    return name;
}

int run_experiment(const RunConfig& cfg) {
    Emitter em;
    em.dir = cfg.out_dir;
    fs::create_directories(em.dir);
    int rc = 0;
    switch (cfg.experiment) {
    case ExperimentKind::Mono: rc = run_mono(cfg, em); break;
    case ExperimentKind::SwrZeroTest:
    case ExperimentKind::SwrStep: rc = run_swr(cfg, em); break;
    case ExperimentKind::OptimizeAlpha: rc = run_optimize_alpha(cfg, em); break;
    case ExperimentKind::AnalyzeSymbols: rc = run_analyze_symbols(cfg, em); break;
    case ExperimentKind::ConvergenceStudy: rc = run_convergence_study(cfg, em); break;
    }
    em.manifest(cfg);
    return rc;
}

} // namespace peswr
