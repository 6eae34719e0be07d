// Experiment driver: every command maps one-to-one onto a public library
// operation and emits a deterministic report.json, plot-ready trace-*.csv
// files, and a metadata.json (timestamps and argv live only there).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "fracfisher/attraction.hpp"
#include "fracfisher/clt.hpp"
#include "fracfisher/diffusion.hpp"
#include "fracfisher/distributions.hpp"
#include "fracfisher/information.hpp"
#include "fracfisher/profiles.hpp"
#include "fracfisher/reports.hpp"

namespace {

using namespace fracfisher;

/// Invalid configuration: unknown key, malformed value, or range violation.
/// Always carries the offending key name.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    std::string command;
    double lambda = 1.5;
    std::int64_t n_points = 65536;
    double x_max = 200.0;
    std::int64_t n_max = 8;
    double epsilon = 0.0;
    double delta = 0.5;
    double upsilon = 1.0;
    std::uint64_t seed = 12345;
    std::string output_dir = "out";
    std::string law = "linnik";
    std::string method = "inversion";
    std::string kernel = "product";
    std::string base_law = "gaussian";
    std::int64_t samples = 100000;
    std::int64_t m = 1;
    double t_max = 0.0;  // 0 = unset; the command supplies its default
    std::int64_t nodes = 64;
    double nu = 0.0;  // 0 = no moment diagnostic
    double sigma = 1.0;
};

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = {
        "stable", "linnik",  "fisher",  "clt-sweep",       "bs-check",
        "diffuse", "entropy", "udrop",   "verify-appendix",
    };
    return names;
}

double parse_real(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': not a real number: '" + value + "'");
    }
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': not an integer: '" + value + "'");
    }
}

/// Applies one key = value pair onto the config. Unknown keys are errors by
/// name; range checks run later in validate() so flags get the same messages.
void apply_key(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "command") cfg.command = value;
    else if (key == "lambda") cfg.lambda = parse_real(key, value);
    else if (key == "n_points") cfg.n_points = parse_int(key, value);
    else if (key == "x_max") cfg.x_max = parse_real(key, value);
    else if (key == "n_max") cfg.n_max = parse_int(key, value);
    else if (key == "epsilon") cfg.epsilon = parse_real(key, value);
    else if (key == "delta") cfg.delta = parse_real(key, value);
    else if (key == "upsilon") cfg.upsilon = parse_real(key, value);
    else if (key == "seed") {
        const std::int64_t v = parse_int(key, value);
        if (v < 0) throw ConfigError("key 'seed' out of range (need seed >= 0)");
        cfg.seed = static_cast<std::uint64_t>(v);
    } else if (key == "output_dir") cfg.output_dir = value;
    else if (key == "law") cfg.law = value;
    else if (key == "method") cfg.method = value;
    else if (key == "kernel") cfg.kernel = value;
    else if (key == "base_law") cfg.base_law = value;
    else if (key == "samples") cfg.samples = parse_int(key, value);
    else if (key == "m") cfg.m = parse_int(key, value);
    else if (key == "t_max") cfg.t_max = parse_real(key, value);
    else if (key == "nodes") cfg.nodes = parse_int(key, value);
    else if (key == "nu") cfg.nu = parse_real(key, value);
    else if (key == "sigma") cfg.sigma = parse_real(key, value);
    else throw ConfigError("unknown key '" + key + "'");
}

/// Parses a key = value document. [section] headers are tolerated and
/// ignored; '#' and ';' start comments; later assignments win.
void parse_config(const std::string& text, ExperimentConfig& cfg) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.erase(comment);
        const auto strip = [](std::string s) {
            const std::size_t a = s.find_first_not_of(" \t\r");
            if (a == std::string::npos) return std::string();
            const std::size_t b = s.find_last_not_of(" \t\r");
            return s.substr(a, b - a + 1);
        };
        line = strip(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(line_no) +
                                  ": malformed section header '" + line + "'");
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) +
                              ": expected key = value, got '" + line + "'");
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("line " + std::to_string(line_no) + ": empty key");
        apply_key(cfg, key, value);
    }
}

bool is_power_of_two(std::int64_t v) { return v > 0 && (v & (v - 1)) == 0; }

void require_one_of(const std::string& key, const std::string& value,
                    const std::vector<std::string>& allowed) {
    if (std::find(allowed.begin(), allowed.end(), value) != allowed.end()) return;
    std::string msg = "key '" + key + "': unknown value '" + value + "' (allowed:";
    for (const auto& a : allowed) msg += " " + a;
    msg += ")";
    throw ConfigError(msg);
}

void validate(const ExperimentConfig& cfg) {
    if (cfg.command.empty())
        throw ConfigError("key 'command' is required (pass --command or set it in the config)");
    require_one_of("command", cfg.command, command_names());
    if (!(cfg.lambda > 1.0 && cfg.lambda <= 2.0))
        throw ConfigError("key 'lambda' out of range (need 1 < lambda <= 2, got " +
                          format_double(cfg.lambda) + ")");
    if (!is_power_of_two(cfg.n_points) || cfg.n_points < 64)
        throw ConfigError("key 'n_points' out of range (need a power of two >= 64, got " +
                          std::to_string(cfg.n_points) + ")");
    if (!(cfg.x_max > 0.0))
        throw ConfigError("key 'x_max' out of range (need x_max > 0, got " +
                          format_double(cfg.x_max) + ")");
    if (cfg.n_max < 1 || cfg.n_max > 32)
        throw ConfigError("key 'n_max' out of range (need 1 <= n_max <= 32, got " +
                          std::to_string(cfg.n_max) + ")");
    if (!(cfg.epsilon >= 0.0 && cfg.epsilon < 1.0))
        throw ConfigError("key 'epsilon' out of range (need 0 <= epsilon < 1, got " +
                          format_double(cfg.epsilon) + ")");
    if (!(cfg.delta > 0.0 && cfg.delta < 1.0))
        throw ConfigError("key 'delta' out of range (need 0 < delta < 1, got " +
                          format_double(cfg.delta) + ")");
    if (!(cfg.upsilon > 0.0))
        throw ConfigError("key 'upsilon' out of range (need upsilon > 0, got " +
                          format_double(cfg.upsilon) + ")");
    require_one_of("law", cfg.law, {"linnik", "stable", "gaussian", "laplace"});
    require_one_of("method", cfg.method, {"inversion", "mixture"});
    require_one_of("kernel", cfg.kernel, {"product", "pair_product", "linear"});
    require_one_of("base_law", cfg.base_law, {"gaussian", "laplace"});
    if (cfg.samples < 10000)
        throw ConfigError("key 'samples' out of range (need samples >= 10000, got " +
                          std::to_string(cfg.samples) + ")");
    if (cfg.m < 1 || cfg.m > cfg.n_max)
        throw ConfigError("key 'm' out of range (need 1 <= m <= n_max, got " +
                          std::to_string(cfg.m) + ")");
    if (cfg.t_max < 0.0)
        throw ConfigError("key 't_max' out of range (need t_max > 0, got " +
                          format_double(cfg.t_max) + ")");
    if (cfg.nodes < 4 || cfg.nodes > 4096)
        throw ConfigError("key 'nodes' out of range (need 4 <= nodes <= 4096, got " +
                          std::to_string(cfg.nodes) + ")");
    if (cfg.nu < 0.0)
        throw ConfigError("key 'nu' out of range (need nu >= 0, got " +
                          format_double(cfg.nu) + ")");
    if (!(cfg.sigma > 0.0))
        throw ConfigError("key 'sigma' out of range (need sigma > 0, got " +
                          format_double(cfg.sigma) + ")");
}

/// Report plus the named trace files the command produced.
struct Artifacts {
    RunReport report;
    std::vector<std::pair<std::string, std::string>> traces;
};

ContractResult contract(std::string name, double lhs, double rhs, double tolerance) {
    ContractResult c;
    c.name = std::move(name);
    c.lhs = lhs;
    c.rhs = rhs;
    c.tolerance = tolerance;
    c.passed = lhs <= rhs + tolerance;
    return c;
}

Grid make_grid(const ExperimentConfig& cfg) {
    return Grid::make(static_cast<std::size_t>(cfg.n_points), cfg.x_max);
}

/// Input law shared by the experiment commands. Smoothing (epsilon) is
/// applied by the commands that define it, not here.
DensityProfile build_law(const ExperimentConfig& cfg, const Grid& grid) {
    const StableOrder order{cfg.lambda};
    if (cfg.law == "linnik")
        return linnik_density(grid, order,
                              cfg.method == "mixture" ? LinnikMethod::mixture
                                                      : LinnikMethod::inversion);
    if (cfg.law == "stable") return stable_density(grid, order);
    if (cfg.law == "gaussian") return gaussian_density(grid, cfg.sigma);
    return laplace_density(grid);
}

const char* stability_name(MomentStability s) {
    switch (s) {
        case MomentStability::stable: return "stable";
        case MomentStability::indeterminate: return "indeterminate";
        default: return "divergent";
    }
}

/// Optional |x|^nu moment diagnostic attached to the density commands.
void append_moment_diagnostic(RunReport& report, const DensityProfile& p,
                              const ExperimentConfig& cfg) {
    if (cfg.nu <= 0.0) return;
    const FractionalMoment fm = fractional_moment(p, cfg.nu);
    report.numbers["nu"] = cfg.nu;
    report.numbers["moment_value"] = fm.value;
    report.numbers["moment_doubling_change"] = fm.doubling_change;
    report.strings["moment_stability"] = stability_name(fm.stability);
}

Artifacts run_density(const ExperimentConfig& cfg) {
    const Grid grid = make_grid(cfg);
    const DensityProfile p =
        cfg.command == "stable"
            ? stable_density(grid, StableOrder{cfg.lambda})
            : linnik_density(grid, StableOrder{cfg.lambda},
                             cfg.method == "mixture" ? LinnikMethod::mixture
                                                     : LinnikMethod::inversion);
    Artifacts a;
    a.report.command = cfg.command;
    a.report.numbers = {
        {"lambda", cfg.lambda},
        {"mass_deficit", p.mass_deficit},
        {"tau_mass", p.tau_mass},
        {"clipped_mass", p.clipped_mass},
        {"tail_coefficient", p.tail_coefficient},
        {"peak", p.samples[grid.center()]},
    };
    if (cfg.command == "linnik") a.report.strings["method"] = cfg.method;
    a.report.contracts.push_back(
        contract("mass_within_tolerance", p.mass_deficit, p.tau_mass, 0.0));
    append_moment_diagnostic(a.report, p, cfg);
    a.traces.emplace_back("trace-density.csv", to_csv(p));
    return a;
}

Artifacts run_fisher(const ExperimentConfig& cfg) {
    const Grid grid = make_grid(cfg);
    const StableOrder order{cfg.lambda};
    DensityProfile f = build_law(cfg, grid);
    if (cfg.epsilon > 0.0) f = smooth_with_stable(f, cfg.epsilon, order);
    const FisherReport rep = relative_fisher(f, order, cfg.upsilon);

    Artifacts a;
    a.report.command = cfg.command;
    a.report.numbers = {
        {"lambda", cfg.lambda},
        {"upsilon", cfg.upsilon},
        {"epsilon", cfg.epsilon},
        {"value", rep.value},
        {"truncation_estimate", rep.truncation_estimate},
        {"support_threshold", rep.support_threshold},
        {"tail_slope", rep.tail_slope},
    };
    a.report.strings["law"] = cfg.law;
    a.report.contracts.push_back(contract("value_nonnegative", 0.0, rep.value, 0.0));
    if (cfg.law == "stable" && cfg.epsilon == 0.0) {
        a.report.contracts.push_back(
            contract("fixed_point_vanishing", rep.value, 0.0, 1e-4));
    }
    const ScoreProfile score = relative_fractional_score(f, order, cfg.upsilon);
    a.traces.emplace_back("trace-score.csv",
                          to_csv(RealProfile{grid, score.samples, 0.0, false}));
    return a;
}

Artifacts run_clt_sweep(const ExperimentConfig& cfg) {
    const Grid grid = make_grid(cfg);
    const StableOrder order{cfg.lambda};
    const DensityProfile f = build_law(cfg, grid);
    const SweepReport rep = monotonicity_sweep(f, order, static_cast<int>(cfg.n_max));

    Artifacts a;
    a.report.command = cfg.command;
    a.report.numbers["lambda"] = cfg.lambda;
    a.report.numbers["n_max"] = static_cast<double>(cfg.n_max);
    a.report.strings["law"] = cfg.law;
    for (const SweepEntry& e : rep.entries)
        a.report.numbers["I_" + std::to_string(e.n)] = e.fisher.value;
    for (std::size_t i = 1; i < rep.entries.size(); ++i) {
        const SweepEntry& e = rep.entries[i];
        const SweepEntry& prev = rep.entries[i - 1];
        // Display tolerances mirror the library bound (10x the larger
        // truncation estimate of the pair); the verdicts are the library's.
        ContractResult step = contract(
            "step_bound_n" + std::to_string(e.n), e.fisher.value, e.step_bound,
            10.0 * std::max(e.fisher.truncation_estimate,
                            prev.fisher.truncation_estimate));
        step.passed = e.step_ok;
        a.report.contracts.push_back(step);
        ContractResult global = contract(
            "global_bound_n" + std::to_string(e.n), e.fisher.value, e.global_bound,
            10.0 * std::max(e.fisher.truncation_estimate,
                            rep.entries.front().fisher.truncation_estimate));
        global.passed = e.global_ok;
        a.report.contracts.push_back(global);
    }
    a.traces.emplace_back("trace-sweep.csv", rep.to_csv());
    return a;
}

Artifacts run_bs_check(const ExperimentConfig& cfg) {
    const Grid grid = make_grid(cfg);
    const StableOrder order{cfg.lambda};
    const DensityProfile f1 = build_law(cfg, grid);
    const DensityProfile f2 =
        cfg.epsilon > 0.0 ? smooth_with_stable(f1, cfg.epsilon, order) : f1;
    const ConvexityCheck c = blachman_stam_check(f1, f2, cfg.delta, order);

    Artifacts a;
    a.report.command = cfg.command;
    a.report.numbers = {
        {"lambda", cfg.lambda}, {"delta", cfg.delta},       {"epsilon", cfg.epsilon},
        {"lhs", c.lhs},         {"rhs", c.rhs},             {"tolerance", c.tolerance},
    };
    a.report.strings["law"] = cfg.law;
    a.report.contracts.push_back(
        contract("convolution_subadditivity", c.lhs, c.rhs, c.tolerance));

    std::string csv = "x,f1,f2\n";
    for (std::size_t j = 0; j < grid.size(); ++j) {
        csv += format_double(grid.x(j));
        csv += ',';
        csv += format_double(f1.samples[j]);
        csv += ',';
        csv += format_double(f2.samples[j]);
        csv += '\n';
    }
    a.traces.emplace_back("trace-densities.csv", std::move(csv));
    return a;
}

Artifacts run_diffuse(const ExperimentConfig& cfg) {
    const Grid grid = make_grid(cfg);
    const double t = cfg.t_max > 0.0 ? cfg.t_max : 1.0;
    const DensityProfile f = build_law(cfg, grid);
    const DensityProfile g = evolve(f, t, cfg.lambda / 2.0);
    const double mass_change = std::abs(f.mass() - g.mass());

    Artifacts a;
    a.report.command = cfg.command;
    a.report.numbers = {
        {"lambda", cfg.lambda},
        {"t", t},
        {"alpha", cfg.lambda / 2.0},
        {"mass_before", f.mass()},
        {"mass_after", g.mass()},
        {"mass_change", mass_change},
    };
    a.report.strings["law"] = cfg.law;
    a.report.contracts.push_back(contract("mass_conserved", mass_change,
                                          std::max(1e-6, f.tau_mass), 0.0));
    a.traces.emplace_back("trace-evolved.csv", to_csv(g));
    return a;
}

Artifacts run_entropy(const ExperimentConfig& cfg) {
    const Grid grid = make_grid(cfg);
    const StableOrder order{cfg.lambda};
    const double t_max = cfg.t_max > 0.0 ? cfg.t_max : 50.0;
    const DensityProfile f = build_law(cfg, grid);
    const EntropyReport rep =
        relative_entropy_lambda(f, order, t_max, static_cast<int>(cfg.nodes));
    const double constant = cfg.lambda / (2.0 - cfg.lambda);

    Artifacts a;
    a.report.command = cfg.command;
    a.report.numbers = {
        {"lambda", cfg.lambda},
        {"t_max", t_max},
        {"nodes", static_cast<double>(cfg.nodes)},
        {"value", rep.value},
        {"tail_bound", rep.tail_bound},
        {"fisher_at_zero", rep.fisher_at_zero},
        {"entropy_constant", constant},
    };
    a.report.strings["law"] = cfg.law;
    a.report.contracts.push_back(contract("entropy_dominated_by_information",
                                          rep.value, constant * rep.fisher_at_zero,
                                          1e-5));
    a.traces.emplace_back("trace-entropy.csv", rep.trace_csv());
    return a;
}

Artifacts run_verify_appendix(const ExperimentConfig& cfg) {
    const Grid grid = make_grid(cfg);
    const StableOrder order{cfg.lambda};
    const double geq = g_equivalence_check(grid, order);
    const HMomentBounds hm = h_moment_bounds(grid, order);
    const FinitenessCertificate cert = finiteness_certificate(grid, order);
    const AttractionReport att = attraction_remainder(linnik_spectrum(grid, order), order);
    const double plancherel_gap = std::abs(hm.x4_spectral / hm.x4 - 1.0);

    Artifacts a;
    a.report.command = cfg.command;
    a.report.numbers = {
        {"lambda", cfg.lambda},
        {"g_equivalence", geq},
        {"l2", hm.l2},
        {"x4", hm.x4},
        {"x4_spectral", hm.x4_spectral},
        {"plancherel_gap", plancherel_gap},
        {"direct", hm.direct},
        {"interp", hm.interp},
        {"interpolation_constant", interpolation_constant(cfg.lambda)},
        {"fisher", cert.fisher},
        {"envelope_bound", cert.envelope_bound},
        {"jensen_factor", cert.jensen_factor},
        {"envelope_A", cert.envelope_A},
        {"envelope_B", cert.envelope_B},
        {"smallest_decade_max", att.smallest_decade_max},
        {"tail_constant_c", att.tail_constant_c},
    };
    a.report.contracts.push_back(contract("score_identity_equivalence", geq, 1e-3, 0.0));
    a.report.contracts.push_back(contract("plancherel_two_way", plancherel_gap, 0.01, 0.0));
    a.report.contracts.push_back(contract("moment_interpolation", hm.direct, hm.interp, 0.0));
    ContractResult fin =
        contract("information_finiteness", cert.fisher, cert.envelope_bound, 1e-6);
    fin.passed = cert.ok;
    a.report.contracts.push_back(fin);
    ContractResult cons =
        contract("attraction_consistent", att.smallest_decade_max, 0.1, 0.0);
    cons.passed = att.consistent;
    a.report.contracts.push_back(cons);
    a.traces.emplace_back("trace-remainder.csv", att.trace_csv());
    return a;
}

UKernel kernel_from(const ExperimentConfig& cfg) {
    if (cfg.kernel == "product") return UKernel::product;
    if (cfg.kernel == "pair_product") return UKernel::pair_product;
    return UKernel::linear;
}

Artifacts run_udrop(const ExperimentConfig& cfg) {
    const VarianceDropResult r = variance_drop_mc(
        static_cast<int>(cfg.n_max), static_cast<int>(cfg.m), kernel_from(cfg),
        cfg.base_law == "laplace" ? BaseLaw::laplace : BaseLaw::gaussian, cfg.samples,
        cfg.seed);

    Artifacts a;
    a.report.command = cfg.command;
    a.report.numbers = {
        {"n", static_cast<double>(cfg.n_max)},
        {"m", static_cast<double>(cfg.m)},
        {"samples", static_cast<double>(cfg.samples)},
        {"var_u", r.var_u},
        {"bound", r.bound},
        {"stderr", r.stderr_},
    };
    a.report.strings["kernel"] = cfg.kernel;
    a.report.strings["base_law"] = cfg.base_law;
    a.report.strings["seed"] = std::to_string(cfg.seed);
    ContractResult drop = contract("variance_drop", r.var_u, r.bound, 3.0 * r.stderr_);
    drop.passed = r.ok;
    a.report.contracts.push_back(drop);
    if (cfg.m == 1) {
        a.report.contracts.push_back(contract("independence_equality",
                                              std::abs(r.var_u - r.bound), 0.0,
                                              3.0 * r.stderr_));
    }
    std::string csv = "n,m,var_u,bound,stderr\n";
    csv += std::to_string(cfg.n_max) + "," + std::to_string(cfg.m) + "," +
           format_double(r.var_u) + "," + format_double(r.bound) + "," +
           format_double(r.stderr_) + "\n";
    a.traces.emplace_back("trace-udrop.csv", std::move(csv));
    return a;
}

Artifacts dispatch(const ExperimentConfig& cfg) {
    if (cfg.command == "stable" || cfg.command == "linnik") return run_density(cfg);
    if (cfg.command == "fisher") return run_fisher(cfg);
    if (cfg.command == "clt-sweep") return run_clt_sweep(cfg);
    if (cfg.command == "bs-check") return run_bs_check(cfg);
    if (cfg.command == "diffuse") return run_diffuse(cfg);
    if (cfg.command == "entropy") return run_entropy(cfg);
    if (cfg.command == "verify-appendix") return run_verify_appendix(cfg);
    return run_udrop(cfg);
}

std::string iso8601_now() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

std::string metadata_json(int argc, char** argv) {
    std::string out = "{\"argv\":[";
    for (int i = 0; i < argc; ++i) {
        if (i) out += ',';
        out += '"';
        for (const char* p = argv[i]; *p; ++p) {
            if (*p == '"' || *p == '\\') out += '\\';
            out += *p;
        }
        out += '"';
    }
    out += "],\"written_at\":\"" + iso8601_now() + "\"}\n";
    return out;
}

void write_artifacts(const ExperimentConfig& cfg, const Artifacts& a, int argc,
                     char** argv) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.output_dir);
    const auto path = [&](const std::string& name) {
        return (fs::path(cfg.output_dir) / name).string();
    };
    write_file_atomic(path("report.json"), a.report.to_json() + "\n");
    for (const auto& [name, content] : a.traces) write_file_atomic(path(name), content);
    write_file_atomic(path("metadata.json"), metadata_json(argc, argv));
}

void print_summary(const ExperimentConfig& cfg, const Artifacts& a) {
    std::cout << "command: " << cfg.command << "\n";
    std::cout << "output: " << cfg.output_dir << "/report.json\n";
    int failed = 0;
    for (const ContractResult& c : a.report.contracts) {
        if (!c.passed) ++failed;
        std::cout << "contract " << c.name << ": " << (c.passed ? "PASS" : "FAIL")
                  << " (lhs=" << format_double(c.lhs) << ", rhs=" << format_double(c.rhs)
                  << ", tolerance=" << format_double(c.tolerance) << ")\n";
    }
    if (failed == 0) {
        std::cout << "all " << a.report.contracts.size() << " contracts hold\n";
    } else {
        std::cout << failed << " of " << a.report.contracts.size()
                  << " contracts violated (see report.json)\n";
    }
}

std::string help_footer() {
    return R"(Commands (each runs one library operation):
  stable           sample the symmetric stable density            [trace-density.csv]
  linnik           sample the Linnik / geometric stable density   [trace-density.csv]
  fisher           relative fractional Fisher information         [trace-score.csv]
  clt-sweep        information along normalized sums T_n          [trace-sweep.csv]
  bs-check         convolution subadditivity of the information   [trace-densities.csv]
  diffuse          fractional heat evolution of a law             [trace-evolved.csv]
  entropy          fractional relative entropy along the flow     [trace-entropy.csv]
  verify-appendix  finiteness certificate chain (Linnik law)      [trace-remainder.csv]
  udrop            Monte Carlo variance drop of U-statistics      [trace-udrop.csv]

Config file: key = value lines; '#'/';' comments; [section] headers are
tolerated and ignored; later assignments win; flags override the file.
Keys and ranges:
  command          one of the nine commands above
  lambda           stable order, 1 < lambda <= 2          (default 1.5)
  n_points         grid points, power of two >= 64        (default 65536)
  x_max            grid half-extent, > 0                  (default 200)
  n_max            clt-sweep end / udrop sample count n, 1..32   (default 8)
  seed             Monte Carlo seed, >= 0                 (default 12345)
  law              input law: linnik|stable|gaussian|laplace     (default linnik)
  method           linnik construction: inversion|mixture (default inversion)
  sigma            gaussian law variance, > 0             (default 1)
  epsilon          stable-smoothing weight, 0 <= eps < 1  (default 0 = off);
                   fisher smooths its input; bs-check smooths the second input
  delta            bs-check convolution weight, 0 < delta < 1    (default 0.5)
  upsilon          fisher scale parameter, > 0            (default 1)
  t_max            diffuse time (default 1) / entropy horizon (default 50), > 0
  nodes            entropy quadrature nodes, 4..4096      (default 64)
  nu               moment diagnostic order for stable/linnik, >= 0 (default 0 = off)
  m                udrop kernel arity, 1 <= m <= n_max    (default 1)
  kernel           udrop kernel: product|pair_product|linear     (default product)
  base_law         udrop base law: gaussian|laplace       (default gaussian)
  samples          udrop Monte Carlo samples, >= 10000    (default 100000)
  output_dir       artifact directory                     (default out)

Output directory precedence: --out flag, then FRACFISHER_OUT, then output_dir.
Artifacts (written atomically): report.json (deterministic results and contract
verdicts), trace-*.csv (plot data), metadata.json (argv and timestamp; the only
file whose bytes vary between identical runs).

CSV schemas:
  trace-density.csv / trace-evolved.csv / trace-score.csv:
      x,value            (preceded by a '# n_points=... x_max=...' comment line)
  trace-densities.csv:   x,f1,f2
  trace-sweep.csv:       n,fisher_value,step_bound,global_bound,truncation
  trace-entropy.csv:     t,h
  trace-remainder.csv:   xi,R
  trace-udrop.csv:       n,m,var_u,bound,stderr

Exit codes: 0 all contracts hold; 1 a contract was violated (report.json lists
the failing contracts); 2 invalid configuration or usage; 3 runtime failure.)";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "fracfisher: experiments on fractional scores, relative fractional Fisher\n"
        "information, and the approach to stable laws"};
    app.footer(help_footer());

    std::string config_path;
    std::string command;
    std::string out_dir;
    double lambda = 0.0;
    std::int64_t n_points = 0;
    double x_max = 0.0;
    std::int64_t n_max = 0;
    std::int64_t seed = 0;
    auto* o_config = app.add_option("--config", config_path, "Config file path");
    auto* o_command = app.add_option("--command", command, "Experiment to run");
    auto* o_lambda = app.add_option("--lambda", lambda, "Stable order in (1, 2]");
    auto* o_n_points = app.add_option("--n-points", n_points, "Grid points (power of two)");
    auto* o_x_max = app.add_option("--x-max", x_max, "Grid half-extent");
    auto* o_n_max = app.add_option("--n-max", n_max, "Sweep end / U-statistic n");
    auto* o_seed = app.add_option("--seed", seed, "Monte Carlo seed");
    auto* o_out = app.add_option("--out", out_dir, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    ExperimentConfig cfg;
    try {
        if (o_config->count()) {
            std::ifstream in(config_path, std::ios::binary);
            if (!in) throw ConfigError("cannot read config file '" + config_path + "'");
            std::ostringstream text;
            text << in.rdbuf();
            parse_config(text.str(), cfg);
        }
        if (const char* env = std::getenv("FRACFISHER_OUT"); env != nullptr && *env != '\0')
            cfg.output_dir = env;
        if (o_command->count()) cfg.command = command;
        if (o_lambda->count()) cfg.lambda = lambda;
        if (o_n_points->count()) cfg.n_points = n_points;
        if (o_x_max->count()) cfg.x_max = x_max;
        if (o_n_max->count()) cfg.n_max = n_max;
        if (o_seed->count()) {
            if (seed < 0) throw ConfigError("key 'seed' out of range (need seed >= 0)");
            cfg.seed = static_cast<std::uint64_t>(seed);
        }
        if (o_out->count()) cfg.output_dir = out_dir;
        validate(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    try {
        const Artifacts a = dispatch(cfg);
        write_artifacts(cfg, a, argc, argv);
        print_summary(cfg, a);
        return a.report.all_passed() ? 0 : 1;
    } catch (const std::invalid_argument& e) {
        // Values that passed static validation but violate an operation's
        // tighter precondition (for example method=mixture with lambda=2).
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return 3;
    }
}
