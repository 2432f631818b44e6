// End-to-end tests of the command-line front end. Each case launches the
// real binary (path in MACBENCH_CLI, exported by CTest), captures stdout,
// stderr and the exit code, and checks the documented contracts: CSV
// formats, seed precedence, the exit-code taxonomy and output files.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const fs::path& work_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "macbench_cli_tests";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

/// Runs the CLI through the shell with MACBENCH_SEED scrubbed from the
/// environment unless the caller sets it via env_pairs ("NAME=value ...").
RunResult run(const std::string& args, const std::string& env_pairs = "") {
    const char* cli = std::getenv("MACBENCH_CLI");
    REQUIRE(cli != nullptr);
    static int counter = 0;
    const fs::path out_path = work_dir() / ("out." + std::to_string(++counter));
    const fs::path err_path = work_dir() / ("err." + std::to_string(counter));
    std::string cmd = "env -u MACBENCH_SEED ";
    if (!env_pairs.empty()) cmd += env_pairs + " ";
    cmd += "\"" + std::string(cli) + "\" " + args;
    cmd += " >\"" + out_path.string() + "\" 2>\"" + err_path.string() + "\"";
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    fs::remove(out_path);
    fs::remove(err_path);
    return r;
}

std::string write_config(const std::string& name, const std::string& body) {
    const fs::path path = work_dir() / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << body;
    REQUIRE(static_cast<bool>(out));
    return path.string();
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

long count(const std::string& hay, char c) {
    return std::count(hay.begin(), hay.end(), c);
}

}  // namespace

TEST_CASE("--version prints the library version") {
    const RunResult r = run("--version");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "1.0.0"));
}

TEST_CASE("a missing subcommand is a usage error") {
    const RunResult r = run("");
    CHECK(r.code == 2);
    CHECK(contains(r.err, "error:"));
}

TEST_CASE("analytic: curve CSV, seed echo, byte-identical reruns") {
    const RunResult r = run("analytic pure_aloha t-vs-g 0 2 0.5");
    CHECK(r.code == 0);
    CHECK(contains(r.err, "seed: 42"));
    CHECK(r.out.rfind("technique,relation,x,y\n", 0) == 0);
    CHECK(contains(r.out, "pure_aloha,t-vs-g,0.5,0.18394"));
    CHECK(count(r.out, '\n') == 6);  // header + 5 grid points

    const RunResult again = run("analytic pure_aloha t-vs-g 0 2 0.5");
    CHECK(again.out == r.out);
}

TEST_CASE("analytic: parameter overrides reach the closed forms") {
    const RunResult r = run(
        "analytic tdma d-vs-t 0.5 0.5 1 --n-nodes 10 --pkt-len 1 --cycle-len 1");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "tdma,d-vs-t,0.5,11\n"));
}

TEST_CASE("analytic: vocabulary errors exit 2") {
    RunResult r = run("analytic token_ring t-vs-g 0 1 0.5");
    CHECK(r.code == 2);
    CHECK(contains(r.err, "unknown technique"));

    r = run("analytic tdma s-vs-g 0 1 0.5");
    CHECK(r.code == 2);
    CHECK(contains(r.err, "unknown relation"));

    r = run("analytic pure_aloha t-vs-g 0 2 nonsense");
    CHECK(r.code == 2);

    r = run("analytic pure_aloha t-vs-g 0 2 0");  // zero step
    CHECK(r.code == 2);
}

TEST_CASE("analytic: out-of-domain grid points are skipped with a note") {
    const RunResult r = run("analytic tdma d-vs-g 0 1 0.25");
    CHECK(r.code == 0);
    CHECK(count(r.out, '\n') == 5);  // header + 4 surviving points
    CHECK(contains(r.err, "note: skipped x=1 (outside the tdma d-vs-g domain)"));
}

TEST_CASE("analytic: the reproduced CSMA delay table is flagged") {
    const RunResult r = run("analytic csma_1p d-vs-g 0 2 0.5");
    CHECK(r.code == 0);
    CHECK(contains(r.err, "dimensionless delay proxy"));
}

TEST_CASE("timing: bundled default config produces the three CSV sections") {
    const char* config_dir = std::getenv("MACBENCH_CONFIG_DIR");
    REQUIRE(config_dir != nullptr);
    const std::string config = (fs::path(config_dir) / "default.json").string();
    const RunResult r = run("timing \"" + config + "\"");
    CHECK(r.code == 0);
    CHECK(contains(r.err, "seed: 42"));
    CHECK(r.out.rfind("technique,component,seconds\n", 0) == 0);
    CHECK(contains(r.out, "\ntechnique,total_s,throughput_bps\n"));
    CHECK(contains(r.out, "\nrank,technique,throughput_bps\n"));
    CHECK(contains(r.out, "1,tdma,"));
}

TEST_CASE("timing: a negative derived inter-frame space is a runtime error") {
    const std::string bad = write_config(
        "ifs_bad.json",
        R"({"version": 1, "frame": {"data_rate": 1000, "n_data_bits": 100, "n_ack_bits": 200}})");
    RunResult r = run("timing \"" + bad + "\"");
    CHECK(r.code == 1);
    CHECK(contains(r.err, "inter-frame space"));

    const std::string fixed = write_config(
        "ifs_fixed.json",
        R"({"version": 1, "frame": {"data_rate": 1000, "n_data_bits": 100, "n_ack_bits": 200, "ifs_time": 0.5}})");
    r = run("timing \"" + fixed + "\"");
    CHECK(r.code == 0);
}

TEST_CASE("config schema violations are usage errors") {
    const std::string broken =
        write_config("broken.json", "{\"version\": 1,\n  \"sim\": {,}\n}");
    RunResult r = run("timing \"" + broken + "\"");
    CHECK(r.code == 2);
    CHECK(contains(r.err, "syntax error at line"));

    const std::string unknown_root =
        write_config("unknown_root.json", R"({"version": 1, "bogus": 3})");
    r = run("timing \"" + unknown_root + "\"");
    CHECK(r.code == 2);
    CHECK(contains(r.err, "unknown key \"bogus\""));

    const std::string unknown_sim = write_config(
        "unknown_sim.json", R"({"version": 1, "sim": {"stations": 4}})");
    r = run("simulate \"" + unknown_sim + "\"");
    CHECK(r.code == 2);
    CHECK(contains(r.err, "unknown key \"stations\""));
    CHECK(contains(r.err, "in section \"sim\""));

    const std::string wrong_type = write_config(
        "wrong_type.json", R"({"version": 1, "sim": {"stop_packets": "many"}})");
    r = run("simulate \"" + wrong_type + "\"");
    CHECK(r.code == 2);
    CHECK(contains(r.err, "\"sim.stop_packets\" must be an integer"));

    const std::string no_version = write_config("no_version.json", "{}");
    r = run("timing \"" + no_version + "\"");
    CHECK(r.code == 2);
    CHECK(contains(r.err, "missing required key \"version\""));

    const std::string wrong_version =
        write_config("wrong_version.json", R"({"version": 2})");
    r = run("timing \"" + wrong_version + "\"");
    CHECK(r.code == 2);
    CHECK(contains(r.err, "unsupported config version"));

    r = run("timing \"" + (work_dir() / "does_not_exist.json").string() + "\"");
    CHECK(r.code == 2);
    CHECK(contains(r.err, "cannot open config file"));
}

TEST_CASE("simulate: metrics row, trace file and determinism") {
    const std::string cfg = write_config("sim_basic.json", R"({
        "version": 1,
        "sim": {"technique": "slotted_aloha", "offered_load_g": 1.0,
                "stop_packets": 3000, "warmup_fraction": 0.1}
    })");

    const RunResult r = run("simulate \"" + cfg + "\"");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("technique,g,attempted,succeeded,collided,throughput_s,"
                      "mean_delay,ci_lo,ci_hi,seed\n",
                      0) == 0);
    CHECK(contains(r.out, "slotted_aloha,1,"));
    CHECK(count(r.out, '\n') == 2);

    const RunResult again = run("simulate \"" + cfg + "\"");
    CHECK(again.out == r.out);

    const fs::path trace = work_dir() / "sim_basic_trace.tsv";
    const RunResult traced =
        run("simulate \"" + cfg + "\" --trace \"" + trace.string() + "\"");
    CHECK(traced.code == 0);
    const std::string trace_text = slurp(trace);
    REQUIRE(!trace_text.empty());
    const std::string first_line = trace_text.substr(0, trace_text.find('\n'));
    CHECK(count(first_line, '\t') == 3);
    fs::remove(trace);

    const RunResult bad_trace =
        run("simulate \"" + cfg + "\" --trace /nonexistent_macbench_dir/t.tsv");
    CHECK(bad_trace.code == 1);
    CHECK(contains(bad_trace.err, "cannot open trace file"));
}

TEST_CASE("simulate: seed precedence is flag, config, environment, default") {
    const std::string no_seed = write_config("sim_no_seed.json", R"({
        "version": 1,
        "sim": {"technique": "pure_aloha", "offered_load_g": 0.5,
                "stop_packets": 2000, "warmup_fraction": 0.1}
    })");

    RunResult r = run("simulate \"" + no_seed + "\"");
    CHECK(r.code == 0);
    CHECK(r.out.substr(r.out.size() - 4) == ",42\n");  // built-in default

    r = run("simulate \"" + no_seed + "\"", "MACBENCH_SEED=99");
    CHECK(r.out.substr(r.out.size() - 4) == ",99\n");  // environment

    r = run("simulate \"" + no_seed + "\" --seed 7", "MACBENCH_SEED=99");
    CHECK(r.out.substr(r.out.size() - 3) == ",7\n");  // flag beats environment

    const std::string with_seed = write_config("sim_with_seed.json", R"({
        "version": 1, "seed": 5,
        "sim": {"technique": "pure_aloha", "offered_load_g": 0.5,
                "stop_packets": 2000, "warmup_fraction": 0.1}
    })");
    r = run("simulate \"" + with_seed + "\"", "MACBENCH_SEED=99");
    CHECK(r.out.substr(r.out.size() - 3) == ",5\n");  // config beats environment

    r = run("simulate \"" + no_seed + "\"", "MACBENCH_SEED=abc");
    CHECK(r.code == 2);
    CHECK(contains(r.err, "invalid MACBENCH_SEED value \"abc\""));
}

TEST_CASE("simulate: weak statistics warn, domain violations exit 1") {
    const std::string tiny = write_config("sim_tiny.json", R"({
        "version": 1,
        "sim": {"technique": "pure_aloha", "offered_load_g": 0.5,
                "stop_packets": 500}
    })");
    RunResult r = run("simulate \"" + tiny + "\"");
    CHECK(r.code == 0);
    CHECK(contains(r.err, "warning:"));

    const std::string zero_g = write_config("sim_zero_g.json", R"({
        "version": 1,
        "sim": {"technique": "pure_aloha", "offered_load_g": 0.0,
                "stop_packets": 2000}
    })");
    r = run("simulate \"" + zero_g + "\"");
    CHECK(r.code == 1);
    CHECK(contains(r.err, "error:"));
}

TEST_CASE("compare: CSV and SVG outputs, skip note, identical reruns") {
    const std::string cfg = write_config("cmp_small.json", R"({
        "version": 1,
        "sim": {"stop_packets": 3000, "warmup_fraction": 0.1},
        "sweep": {"techniques": ["pure_aloha", "slotted_aloha"],
                  "g_lo": 0.2, "g_hi": 0.4, "g_step": 0.1,
                  "replications": 2, "relations": ["t_vs_g", "d_vs_g"]}
    })");
    const std::string prefix1 = (work_dir() / "cmp1").string();
    const RunResult r = run("compare \"" + cfg + "\" \"" + prefix1 + "\"");
    CHECK(r.code == 0);
    CHECK(contains(r.err, "seed: 42"));
    CHECK(contains(r.err, "wrote " + prefix1 + ".csv"));
    CHECK(contains(r.err, "wrote " + prefix1 + "-t-vs-g.svg"));
    CHECK(contains(r.err, "wrote " + prefix1 + "-d-vs-g.svg"));
    CHECK(contains(r.err, "ranking report skipped"));
    CHECK(!fs::exists(prefix1 + "-ranking.txt"));

    const std::string csv = slurp(prefix1 + ".csv");
    CHECK(csv.rfind("technique,g,s_analytic,s_sim_mean,s_sim_ci95_lo,s_sim_ci95_hi,"
                    "d_analytic,d_sim_mean,d_sim_ci95_lo,d_sim_ci95_hi,"
                    "n_replications\n",
                    0) == 0);
    CHECK(count(csv, '\n') == 7);  // header + 2 techniques x 3 loads
    CHECK(contains(csv, "\npure_aloha,0.2,"));
    CHECK(contains(csv, "\nslotted_aloha,0.4,"));

    for (const char* suffix : {"-t-vs-g.svg", "-d-vs-g.svg"}) {
        const std::string svg = slurp(prefix1 + suffix);
        CHECK(svg.rfind("<?xml version=", 0) == 0);
        CHECK(contains(svg, "<svg xmlns"));
        CHECK(contains(svg, "</svg>"));
        // one analytic polyline and one legend entry per technique
        std::size_t polylines = 0;
        for (std::size_t at = svg.find("<polyline"); at != std::string::npos;
             at = svg.find("<polyline", at + 1))
            ++polylines;
        CHECK(polylines == 2);
        CHECK(contains(svg, "pure_aloha"));
        CHECK(contains(svg, "slotted_aloha"));
    }

    const std::string prefix2 = (work_dir() / "cmp2").string();
    const RunResult r2 = run("compare \"" + cfg + "\" \"" + prefix2 + "\"");
    CHECK(r2.code == 0);
    CHECK(slurp(prefix2 + ".csv") == csv);
}

TEST_CASE("compare: the full technique set adds the ranking report") {
    const std::string cfg = write_config("cmp_full.json", R"({
        "version": 1,
        "sim": {"stop_packets": 2000, "warmup_fraction": 0.1},
        "sweep": {"techniques": ["pure_aloha", "slotted_aloha", "csma_ca",
                                 "tdma", "fdma"],
                  "g_lo": 0.8, "g_hi": 0.8, "g_step": 1.0,
                  "replications": 2, "relations": ["t_vs_g"],
                  "conclusion_g": 0.8}
    })");
    const std::string prefix = (work_dir() / "cmp_full").string();
    const RunResult r = run("compare \"" + cfg + "\" \"" + prefix + "\"");
    CHECK(r.code == 0);
    CHECK(contains(r.err, "wrote " + prefix + "-ranking.txt"));
    const std::string report = slurp(prefix + "-ranking.txt");
    CHECK(contains(report, "throughput ranking (descending):"));
    CHECK(contains(report, "delay ranking (ascending):"));
    CHECK(contains(report, "tdma rank-1 in both:"));
}

TEST_CASE("compare: unwritable output prefixes fail before simulating") {
    const std::string cfg = write_config("cmp_unwritable.json", R"({
        "version": 1,
        "sim": {"stop_packets": 2000},
        "sweep": {"techniques": ["pure_aloha"], "g_lo": 0.5, "g_hi": 0.5,
                  "g_step": 1.0, "replications": 1, "relations": ["t_vs_g"]}
    })");
    const RunResult r =
        run("compare \"" + cfg + "\" /nonexistent_macbench_dir/out");
    CHECK(r.code == 1);
    CHECK(contains(r.err, "cannot write output file"));
}
