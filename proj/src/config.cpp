#include "peswr/config.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <vector>

#include "peswr/csv.hpp"

namespace peswr {

namespace {

struct Field {
    const char* key;
    std::function<void(RunConfig&, const std::string&)> set;
    std::function<std::string(const RunConfig&)> get;
};

template <typename T>
T parse_number(const std::string& key, const std::string& v);

template <>
double parse_number<double>(const std::string& key, const std::string& v) {
    size_t used = 0;
    double out;
    try {
        out = std::stod(v, &used);
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
    }
    if (used != v.size())
        throw ConfigError("key '" + key + "': trailing characters in '" + v + "'");
    return out;
}

template <>
int parse_number<int>(const std::string& key, const std::string& v) {
    size_t used = 0;
    long out;
    try {
        out = std::stol(v, &used);
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'");
    }
    if (used != v.size())
        throw ConfigError("key '" + key + "': trailing characters in '" + v + "'");
    return static_cast<int>(out);
}

template <>
uint64_t parse_number<uint64_t>(const std::string& key, const std::string& v) {
    size_t used = 0;
    unsigned long long out;
    try {
        out = std::stoull(v, &used);
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected an unsigned integer, got '" + v + "'");
    }
    if (used != v.size())
        throw ConfigError("key '" + key + "': trailing characters in '" + v + "'");
    return out;
}

const std::vector<Field>& fields() {
    static const std::vector<Field> table = [] {
        std::vector<Field> f;
        auto num = [&f](const char* key, double RunConfig::* m) {
            f.push_back({key,
                         [key, m](RunConfig& c, const std::string& v) {
                             c.*m = parse_number<double>(key, v);
                         },
                         [m](const RunConfig& c) { return csv_num(c.*m); }});
        };
        auto integer = [&f](const char* key, int RunConfig::* m) {
            f.push_back({key,
                         [key, m](RunConfig& c, const std::string& v) {
                             c.*m = parse_number<int>(key, v);
                         },
                         [m](const RunConfig& c) { return std::to_string(c.*m); }});
        };
        auto text = [&f](const char* key, std::string RunConfig::* m) {
            f.push_back({key,
                         [m](RunConfig& c, const std::string& v) { c.*m = v; },
                         [m](const RunConfig& c) { return c.*m; }});
        };
        f.push_back({"experiment",
                     [](RunConfig& c, const std::string& v) {
                         c.experiment = experiment_from_string(v);
                     },
                     [](const RunConfig& c) { return to_string(c.experiment); }});
        num("epsilon", &RunConfig::epsilon);
        num("re", &RunConfig::reynolds);
        num("re_prime", &RunConfig::reynolds_v);
        num("fr", &RunConfig::froude);
        num("u0", &RunConfig::u0);
        num("v0", &RunConfig::v0);
        num("alpha_b", &RunConfig::alpha_b);
        integer("nx", &RunConfig::nx);
        integer("nz", &RunConfig::nz);
        integer("nt", &RunConfig::nt);
        num("t_final", &RunConfig::t_final);
        num("half_length", &RunConfig::half_length);
        num("alpha", &RunConfig::alpha);
        num("beta", &RunConfig::beta);
        integer("max_iterations", &RunConfig::max_iterations);
        num("tolerance", &RunConfig::tolerance);
        text("guess", &RunConfig::guess);
        integer("sinusoid_periods", &RunConfig::sinusoid_periods);
        num("sinusoid_amplitude", &RunConfig::sinusoid_amplitude);
        f.push_back({"seed",
                     [](RunConfig& c, const std::string& v) {
                         c.seed = parse_number<uint64_t>("seed", v);
                     },
                     [](const RunConfig& c) { return std::to_string(c.seed); }});
        integer("threads", &RunConfig::threads);
        text("initial", &RunConfig::initial);
        num("step_height", &RunConfig::step_height);
        num("step_band_lo", &RunConfig::step_band_lo);
        num("step_band_hi", &RunConfig::step_band_hi);
        text("custom_csv", &RunConfig::custom_csv);
        num("alpha_factor_min", &RunConfig::alpha_factor_min);
        num("alpha_factor_max", &RunConfig::alpha_factor_max);
        integer("alpha_factor_count", &RunConfig::alpha_factor_count);
        num("beta_factor_min", &RunConfig::beta_factor_min);
        num("beta_factor_max", &RunConfig::beta_factor_max);
        integer("beta_factor_count", &RunConfig::beta_factor_count);
        integer("trials", &RunConfig::trials);
        integer("fixed_iterations", &RunConfig::fixed_iterations);
        text("epsilon_list", &RunConfig::epsilon_list);
        num("symbol_s_re", &RunConfig::symbol_s_re);
        num("symbol_s_im", &RunConfig::symbol_s_im);
        num("symbol_eta", &RunConfig::symbol_eta);
        integer("symbol_mode", &RunConfig::symbol_mode);
        integer("conv_levels", &RunConfig::conv_levels);
        text("out_dir", &RunConfig::out_dir);
        integer("snapshot_every", &RunConfig::snapshot_every);
        return f;
    }();
    return table;
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

ExperimentKind experiment_from_string(const std::string& s) {
    if (s == "mono") return ExperimentKind::Mono;
    if (s == "swr-zero-test") return ExperimentKind::SwrZeroTest;
    if (s == "swr-step") return ExperimentKind::SwrStep;
    if (s == "optimize-alpha") return ExperimentKind::OptimizeAlpha;
    if (s == "analyze-symbols") return ExperimentKind::AnalyzeSymbols;
    if (s == "convergence-study") return ExperimentKind::ConvergenceStudy;
    throw ConfigError("unknown experiment kind '" + s + "'");
}

std::string to_string(ExperimentKind k) {
    switch (k) {
    case ExperimentKind::Mono: return "mono";
    case ExperimentKind::SwrZeroTest: return "swr-zero-test";
    case ExperimentKind::SwrStep: return "swr-step";
    case ExperimentKind::OptimizeAlpha: return "optimize-alpha";
    case ExperimentKind::AnalyzeSymbols: return "analyze-symbols";
    case ExperimentKind::ConvergenceStudy: return "convergence-study";
    }
    return "mono";
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    std::vector<std::string> seen;
    while (std::getline(is, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const Field* field = nullptr;
        for (const Field& f : fields())
            if (key == f.key) { field = &f; break; }
        if (field == nullptr)
            throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        for (const std::string& s : seen)
            if (s == key)
                throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        seen.push_back(key);
        try {
            field->set(cfg, value);
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return cfg;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

void apply_env_overrides(RunConfig& cfg) {
    for (const Field& f : fields()) {
        std::string name = "PESWR_";
        for (const char* p = f.key; *p; ++p)
            name += static_cast<char>(std::toupper(static_cast<unsigned char>(*p)));
        if (const char* v = std::getenv(name.c_str())) f.set(cfg, v);
    }
}

void dump_config(std::ostream& os, const RunConfig& cfg) {
    for (const Field& f : fields()) os << f.key << "=" << f.get(cfg) << "\n";
}

uint64_t config_hash(const RunConfig& cfg) {
    std::ostringstream ss;
    dump_config(ss, cfg);
    // Execution details that cannot change the emitted numbers stay out
    // of the hash, so runs into different directories compare equal.
    std::istringstream lines(ss.str());
    std::string line, canonical;
    while (std::getline(lines, line)) {
        if (line.rfind("out_dir=", 0) == 0 || line.rfind("threads=", 0) == 0) continue;
        canonical += line;
        canonical += '\n';
    }
    uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

PhysicalParams RunConfig::physical() const {
    PhysicalParams p;
    p.epsilon = epsilon;
    p.reynolds = reynolds;
    p.reynolds_v = reynolds_v;
    p.froude = froude;
    p.u0 = u0;
    p.v0 = v0;
    p.alpha_b = alpha_b;
    p.validate();
    return p;
}

GridSpec RunConfig::grid() const { return make_grid(nx, nz, nt, t_final, half_length); }

TransmissionParams RunConfig::transmission() const {
    const PhysicalParams p = physical();
    TransmissionParams tp = TransmissionParams::taylor(p);
    if (alpha >= 0.0) tp.alpha = alpha;
    if (beta >= 0.0) tp.beta = beta;
    tp.validate();
    return tp;
}

GuessKind RunConfig::guess_kind() const {
    if (guess == "zero") return GuessKind::Zero;
    if (guess == "random") return GuessKind::Random;
    if (guess == "sinusoid") return GuessKind::Sinusoid;
    throw ConfigError("key 'guess': expected zero|random|sinusoid, got '" + guess + "'");
}

InitialKind RunConfig::initial_kind() const {
    if (initial == "zero") return InitialKind::Zero;
    if (initial == "step") return InitialKind::Step;
    if (initial == "custom-csv") return InitialKind::CustomCsv;
    throw ConfigError("key 'initial': expected zero|step|custom-csv, got '" + initial + "'");
}

SwrConfig RunConfig::swr(const PhysicalParams&) const {
    SwrConfig c;
    c.max_iterations = max_iterations;
    c.tolerance = tolerance;
    c.guess = guess_kind();
    c.seed = seed;
    c.sinusoid_periods = sinusoid_periods;
    c.sinusoid_amplitude = sinusoid_amplitude;
    c.tp = transmission();
    c.parallel = threads > 1;
    return c;
}

} // namespace peswr
