// End-to-end tests of the experiment driver: configuration handling, exit
// codes, artifact layout, determinism, and one honest contract violation.
// The driver binary path is injected by the build as FRACFISHER_CLI_PATH.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(static_cast<bool>(in));
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

/// Fresh working directory per test invocation.
fs::path fresh_dir(const std::string& tag) {
    static int counter = 0;
    const fs::path dir = fs::temp_directory_path() /
                         ("fracfisher_cli_" + tag + "_" + std::to_string(++counter));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

/// Runs the driver through the shell, capturing exit code and both streams.
/// `env_prefix` may hold VAR=value assignments for the child process.
CliResult run_cli(const std::string& args, const fs::path& workdir,
                  const std::string& env_prefix = "") {
    const fs::path out_file = workdir / "stdout.txt";
    const fs::path err_file = workdir / "stderr.txt";
    std::string cmd = env_prefix;
    if (!cmd.empty()) cmd += ' ';
    cmd += FRACFISHER_CLI_PATH;
    cmd += ' ';
    cmd += args;
    cmd += " > " + out_file.string() + " 2> " + err_file.string();
    const int raw = std::system(cmd.c_str());
    REQUIRE(raw != -1);
    CliResult r;
    r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(out_file);
    r.err = slurp(err_file);
    return r;
}

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    REQUIRE(static_cast<bool>(out));
    out << text;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("help documents the commands and CSV schemas") {
    const fs::path dir = fresh_dir("help");
    const CliResult r = run_cli("--help", dir);
    CHECK(r.exit_code == 0);
    for (const char* needle :
         {"stable", "linnik", "fisher", "clt-sweep", "bs-check", "diffuse", "entropy",
          "verify-appendix", "udrop", "x,value", "x,f1,f2",
          "n,fisher_value,step_bound,global_bound,truncation", "t,h", "xi,R",
          "n,m,var_u,bound,stderr", "FRACFISHER_OUT", "report.json", "metadata.json"}) {
        CAPTURE(needle);
        CHECK(r.out.find(needle) != std::string::npos);
    }
}

TEST_CASE("empty config falls back to the documented defaults") {
    const fs::path dir = fresh_dir("defaults");
    write_text(dir / "empty.cfg", "");
    const CliResult r = run_cli("--config " + (dir / "empty.cfg").string() +
                                    " --command stable --out " + (dir / "out").string(),
                                dir);
    CHECK(r.exit_code == 0);
    const std::string report = slurp(dir / "out" / "report.json");
    CHECK(report.find("\"lambda\":1.5") != std::string::npos);
    // The trace records the default grid in its comment line.
    const std::string trace = slurp(dir / "out" / "trace-density.csv");
    CHECK(trace.find("# n_points=65536 x_max=200") != std::string::npos);
    CHECK(fs::exists(dir / "out" / "metadata.json"));
}

TEST_CASE("unknown config keys are rejected by name") {
    const fs::path dir = fresh_dir("unknown_key");
    write_text(dir / "bad.cfg", "command = stable\nbogus = 3\n");
    const CliResult r = run_cli("--config " + (dir / "bad.cfg").string(), dir);
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("bogus") != std::string::npos);
}

TEST_CASE("out-of-range values are rejected naming key and constraint") {
    const fs::path dir = fresh_dir("range");
    write_text(dir / "bad.cfg", "command = fisher\nlambda = 2.5\n");
    const CliResult r = run_cli("--config " + (dir / "bad.cfg").string(), dir);
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("lambda") != std::string::npos);
    CHECK(r.err.find("2") != std::string::npos);

    write_text(dir / "bad2.cfg", "command = stable\nn_points = 1000\n");
    const CliResult r2 = run_cli("--config " + (dir / "bad2.cfg").string(), dir);
    CHECK(r2.exit_code == 2);
    CHECK(r2.err.find("n_points") != std::string::npos);

    // Valid at parse time but outside the target operation's own range.
    write_text(dir / "bad3.cfg", "command = linnik\nmethod = mixture\nlambda = 2\n"
                                 "n_points = 4096\nx_max = 60\n");
    const CliResult r3 = run_cli("--config " + (dir / "bad3.cfg").string(), dir);
    CHECK(r3.exit_code == 2);
    CHECK(r3.err.find("lambda") != std::string::npos);
}

TEST_CASE("sections and comments are tolerated and flags override the file") {
    const fs::path dir = fresh_dir("override");
    write_text(dir / "run.cfg",
               "[experiment]\n"
               "command = fisher\n"
               "lambda = 1.8   # overridden below\n"
               "n_points = 4096\n"
               "x_max = 60\n"
               "; comment line\n"
               "output_dir = " + (dir / "cfg_out").string() + "\n");
    const CliResult r =
        run_cli("--config " + (dir / "run.cfg").string() + " --lambda 1.2", dir);
    CHECK(r.exit_code == 0);
    const std::string report = slurp(dir / "cfg_out" / "report.json");
    CHECK(report.find("\"lambda\":1.2") != std::string::npos);
    CHECK(report.find("\"command\":\"fisher\"") != std::string::npos);
}

TEST_CASE("FRACFISHER_OUT overrides the config directory and --out wins") {
    const fs::path dir = fresh_dir("envout");
    write_text(dir / "run.cfg",
               "command = stable\nn_points = 4096\nx_max = 60\n"
               "output_dir = " + (dir / "from_cfg").string() + "\n");
    const CliResult r = run_cli("--config " + (dir / "run.cfg").string(), dir,
                                "FRACFISHER_OUT=" + (dir / "from_env").string());
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(dir / "from_env" / "report.json"));
    CHECK(!fs::exists(dir / "from_cfg"));

    const CliResult r2 = run_cli("--config " + (dir / "run.cfg").string() + " --out " +
                                     (dir / "from_flag").string(),
                                 dir, "FRACFISHER_OUT=" + (dir / "from_env2").string());
    CHECK(r2.exit_code == 0);
    CHECK(fs::exists(dir / "from_flag" / "report.json"));
    CHECK(!fs::exists(dir / "from_env2"));
}

TEST_CASE("identical config and seed produce byte-identical reports") {
    const fs::path dir = fresh_dir("determinism");
    write_text(dir / "run.cfg",
               "command = fisher\nlaw = linnik\nlambda = 1.5\n"
               "n_points = 4096\nx_max = 60\n");
    const std::string base = "--config " + (dir / "run.cfg").string();
    const CliResult a = run_cli(base + " --out " + (dir / "a").string(), dir);
    const CliResult b = run_cli(base + " --out " + (dir / "b").string(), dir);
    CHECK(a.exit_code == 0);
    CHECK(b.exit_code == 0);
    CHECK(slurp(dir / "a" / "report.json") == slurp(dir / "b" / "report.json"));
    CHECK(slurp(dir / "a" / "trace-score.csv") == slurp(dir / "b" / "trace-score.csv"));
    CHECK(fs::exists(dir / "a" / "metadata.json"));

    // The seeded Monte Carlo command is deterministic as well.
    const std::string udrop =
        "--command udrop --n-max 6 --seed 777 ";
    const CliResult u1 = run_cli(udrop + "--out " + (dir / "u1").string(), dir);
    const CliResult u2 = run_cli(udrop + "--out " + (dir / "u2").string(), dir);
    CHECK(u1.exit_code == 0);
    CHECK(u2.exit_code == 0);
    CHECK(slurp(dir / "u1" / "report.json") == slurp(dir / "u2" / "report.json"));
}

TEST_CASE("fisher on the stable law reports a vanishing value with exit 0") {
    const fs::path dir = fresh_dir("fisher_stable");
    write_text(dir / "run.cfg", "law = stable\n");
    const CliResult r = run_cli(
        "--command fisher --lambda 1.5 --n-points 16384 --x-max 200 --config " +
            (dir / "run.cfg").string() + " --out " + (dir / "out").string(),
        dir);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("fixed_point_vanishing: PASS") != std::string::npos);
    const std::string report = slurp(dir / "out" / "report.json");
    CHECK(report.find("\"name\":\"fixed_point_vanishing\"") != std::string::npos);
    CHECK(report.find("\"passed\":true") != std::string::npos);
}

TEST_CASE("clt-sweep writes a monotone sweep trace with one row per n") {
    const fs::path dir = fresh_dir("sweep");
    const CliResult r = run_cli(
        "--command clt-sweep --lambda 1.5 --n-points 8192 --x-max 80 --n-max 8 --out " +
            (dir / "out").string(),
        dir);
    CHECK(r.exit_code == 0);
    const std::vector<std::string> lines =
        split_lines(slurp(dir / "out" / "trace-sweep.csv"));
    REQUIRE(lines.size() == 9);
    CHECK(lines[0] == "n,fisher_value,step_bound,global_bound,truncation");
    double prev = 0.0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::istringstream row(lines[i]);
        std::string field;
        std::getline(row, field, ',');
        CHECK(field == std::to_string(i));
        std::getline(row, field, ',');
        const double value = std::stod(field);
        if (i > 1) CHECK(value <= prev);
        prev = value;
    }
}

TEST_CASE("udrop at m = 1 hits the independence equality case") {
    const fs::path dir = fresh_dir("udrop");
    const CliResult r = run_cli("--command udrop --out " + (dir / "out").string(), dir);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("independence_equality: PASS") != std::string::npos);
    const std::vector<std::string> lines =
        split_lines(slurp(dir / "out" / "trace-udrop.csv"));
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "n,m,var_u,bound,stderr");
}

TEST_CASE("remaining commands run end to end at desk scale") {
    const fs::path dir = fresh_dir("smoke");

    write_text(dir / "mix.cfg", "method = mixture\nnu = 1\n");
    const CliResult mixture = run_cli(
        "--command linnik --n-points 4096 --x-max 60 --config " +
            (dir / "mix.cfg").string() + " --out " + (dir / "mix").string(),
        dir);
    CHECK(mixture.exit_code == 0);
    const std::string mix_report = slurp(dir / "mix" / "report.json");
    CHECK(mix_report.find("\"method\":\"mixture\"") != std::string::npos);
    CHECK(mix_report.find("\"moment_stability\":\"stable\"") != std::string::npos);

    const CliResult diffuse = run_cli(
        "--command diffuse --n-points 4096 --x-max 60 --out " + (dir / "diff").string(),
        dir);
    CHECK(diffuse.exit_code == 0);
    CHECK(fs::exists(dir / "diff" / "trace-evolved.csv"));

    write_text(dir / "ent.cfg", "t_max = 10\nnodes = 8\n");
    const CliResult entropy = run_cli(
        "--command entropy --n-points 8192 --x-max 80 --config " +
            (dir / "ent.cfg").string() + " --out " + (dir / "ent").string(),
        dir);
    CHECK(entropy.exit_code == 0);
    const std::vector<std::string> ent_lines =
        split_lines(slurp(dir / "ent" / "trace-entropy.csv"));
    REQUIRE(ent_lines.size() == 9);
    CHECK(ent_lines[0] == "t,h");

    const CliResult appendix = run_cli(
        "--command verify-appendix --n-points 16384 --x-max 200 --out " +
            (dir / "app").string(),
        dir);
    CHECK(appendix.exit_code == 0);
    CHECK(appendix.out.find("all 5 contracts hold") != std::string::npos);
    const std::vector<std::string> rem_lines =
        split_lines(slurp(dir / "app" / "trace-remainder.csv"));
    CHECK(rem_lines.at(0) == "xi,R");

    write_text(dir / "bs.cfg", "epsilon = 0.3\ndelta = 0.5\n");
    const CliResult bs = run_cli(
        "--command bs-check --n-points 8192 --x-max 80 --config " +
            (dir / "bs.cfg").string() + " --out " + (dir / "bs").string(),
        dir);
    CHECK(bs.exit_code == 0);
    CHECK(bs.out.find("convolution_subadditivity: PASS") != std::string::npos);
}

TEST_CASE("a violated contract yields exit 1 and a machine-readable verdict") {
    // The stable law evolved to large times outgrows this window, so the
    // entropy quadrature honestly exceeds its bound at this resolution.
    const fs::path dir = fresh_dir("violation");
    write_text(dir / "run.cfg", "command = entropy\nlaw = stable\n"
                                "n_points = 8192\nx_max = 80\n");
    const CliResult r = run_cli("--config " + (dir / "run.cfg").string() + " --out " +
                                    (dir / "out").string(),
                                dir);
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("entropy_dominated_by_information: FAIL") != std::string::npos);
    const std::string report = slurp(dir / "out" / "report.json");
    CHECK(report.find("\"passed\":false") != std::string::npos);
}

TEST_CASE("unwritable output directories are runtime failures") {
    const fs::path dir = fresh_dir("unwritable");
    const CliResult r = run_cli(
        "--command stable --n-points 4096 --x-max 60 --out /dev/null/sub", dir);
    CHECK(r.exit_code == 3);
}
