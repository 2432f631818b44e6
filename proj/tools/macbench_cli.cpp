// macbench command-line front end.
//
// Subcommands: analytic (closed-form curves as CSV), timing (frame delay
// decomposition + throughput ranking), simulate (one DES run), compare
// (offered-load sweep with CSV + SVG + ranking report outputs).
//
// This program talks to the core exclusively through the C API in
// macbench/macbench.h. Exit codes: 0 success, 1 runtime failure,
// 2 usage or configuration error.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "macbench/macbench.h"

namespace {

using nlohmann::json;

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct CliError {
    int code;
    std::string message;
};

[[noreturn]] void fail(int code, std::string message) {
    throw CliError{code, std::move(message)};
}

void check(macbench_status st, int code_on_error = kExitRuntime) {
    if (st != MACBENCH_OK) fail(code_on_error, macbench_last_error());
}

/// The one number format of every emitted document: shortest decimal form
/// with 6 significant digits, locale-independent.
std::string fmt6(double v) {
    char buf[64];
    const auto res =
        std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 6);
    return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------
// RAII over the C handles

struct StringDeleter {
    void operator()(char* s) const { macbench_string_free(s); }
};
using StringPtr = std::unique_ptr<char, StringDeleter>;

struct ParamsDeleter {
    void operator()(macbench_params* p) const { macbench_params_destroy(p); }
};
using ParamsPtr = std::unique_ptr<macbench_params, ParamsDeleter>;

struct CurveDeleter {
    void operator()(macbench_curve* c) const { macbench_curve_destroy(c); }
};
using CurvePtr = std::unique_ptr<macbench_curve, CurveDeleter>;

struct FrameDeleter {
    void operator()(macbench_frame_timing* f) const { macbench_frame_timing_destroy(f); }
};
using FramePtr = std::unique_ptr<macbench_frame_timing, FrameDeleter>;

struct SimConfigDeleter {
    void operator()(macbench_sim_config* c) const { macbench_sim_config_destroy(c); }
};
using SimConfigPtr = std::unique_ptr<macbench_sim_config, SimConfigDeleter>;

struct MetricsDeleter {
    void operator()(macbench_metrics* m) const { macbench_metrics_destroy(m); }
};
using MetricsPtr = std::unique_ptr<macbench_metrics, MetricsDeleter>;

struct SweepSpecDeleter {
    void operator()(macbench_sweep_spec* s) const { macbench_sweep_spec_destroy(s); }
};
using SweepSpecPtr = std::unique_ptr<macbench_sweep_spec, SweepSpecDeleter>;

struct SweepTableDeleter {
    void operator()(macbench_sweep_table* t) const { macbench_sweep_table_destroy(t); }
};
using SweepTablePtr = std::unique_ptr<macbench_sweep_table, SweepTableDeleter>;

struct ReportDeleter {
    void operator()(macbench_ranking_report* r) const {
        macbench_ranking_report_destroy(r);
    }
};
using ReportPtr = std::unique_ptr<macbench_ranking_report, ReportDeleter>;

macbench_technique technique_arg(const std::string& name, int code_on_error) {
    macbench_technique t;
    if (macbench_technique_from_name(name.c_str(), &t) != MACBENCH_OK)
        fail(code_on_error, macbench_last_error());
    return t;
}

macbench_relation relation_arg(const std::string& name, int code_on_error) {
    macbench_relation r;
    if (macbench_relation_from_name(name.c_str(), &r) != MACBENCH_OK)
        fail(code_on_error, macbench_last_error());
    return r;
}

// ---------------------------------------------------------------------
// Configuration files
//
// One JSON document with a required `version` and four optional sections;
// every key is optional and falls back to the documented default. Unknown
// keys and wrongly typed values are configuration errors (exit code 2);
// numeric values that violate an operation's domain surface later as
// runtime failures (exit code 1).

std::pair<int, int> line_col(const std::string& text, std::size_t byte) {
    int line = 1, col = 1;
    const std::size_t end = byte > 0 ? byte - 1 : 0;
    for (std::size_t i = 0; i < end && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

void check_allowed(const json& obj, const std::string& where,
                   std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed)
            if (item.key() == key) {
                known = true;
                break;
            }
        if (!known)
            fail(kExitUsage, "config: unknown key \"" + item.key() + "\"" +
                                 (where.empty() ? "" : " in section \"" + where + "\""));
    }
}

const json* object_section(const json& root, const char* key) {
    if (!root.contains(key)) return nullptr;
    const json& sec = root.at(key);
    if (!sec.is_object())
        fail(kExitUsage, std::string("config: \"") + key + "\" must be an object");
    return &sec;
}

double number_at(const json& sec, const std::string& where, const char* key) {
    const json& v = sec.at(key);
    if (!v.is_number())
        fail(kExitUsage, "config: \"" + where + "." + key + "\" must be a number");
    return v.get<double>();
}

long long integer_at(const json& sec, const std::string& where, const char* key) {
    const json& v = sec.at(key);
    if (!v.is_number_integer())
        fail(kExitUsage, "config: \"" + where + "." + key + "\" must be an integer");
    return v.get<long long>();
}

bool bool_at(const json& sec, const std::string& where, const char* key) {
    const json& v = sec.at(key);
    if (!v.is_boolean())
        fail(kExitUsage, "config: \"" + where + "." + key + "\" must be true or false");
    return v.get<bool>();
}

std::string string_at(const json& sec, const std::string& where, const char* key) {
    const json& v = sec.at(key);
    if (!v.is_string())
        fail(kExitUsage, "config: \"" + where + "." + key + "\" must be a string");
    return v.get<std::string>();
}

json load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(kExitUsage, "cannot open config file \"" + path + "\"");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_col(text, e.byte);
        fail(kExitUsage, "config " + path + ": syntax error at line " +
                             std::to_string(line) + ", column " + std::to_string(col) +
                             ": " + e.what());
    }
    if (!root.is_object()) fail(kExitUsage, "config root must be an object");

    check_allowed(root, "", {"version", "seed", "analytic", "frame", "sim", "sweep"});
    if (!root.contains("version"))
        fail(kExitUsage, "config is missing required key \"version\"");
    if (!root.at("version").is_number_integer() ||
        root.at("version").get<long long>() != 1)
        fail(kExitUsage, "unsupported config version (expected 1)");
    if (root.contains("seed") &&
        (!root.at("seed").is_number_integer() || root.at("seed").get<long long>() < 0))
        fail(kExitUsage, "config: \"seed\" must be a non-negative integer");

    if (const json* sec = object_section(root, "analytic"))
        check_allowed(*sec, "analytic",
                      {"n_nodes", "pkt_len", "cycle_len", "queue_occ",
                       "norm_prop_delay", "retrans_window"});
    if (const json* sec = object_section(root, "frame"))
        check_allowed(*sec, "frame",
                      {"data_rate", "n_overhead_bits", "n_ack_bits", "n_sync_bits",
                       "n_data_bits", "guard_time", "turnaround_time", "ifs_time",
                       "backoff_slots", "backoff_slot_time", "rts_time", "cts_time",
                       "idle_time", "slot_boundary_wait", "queue_time",
                       "payload_bytes"});
    if (const json* sec = object_section(root, "sim"))
        check_allowed(*sec, "sim",
                      {"technique", "offered_load_g", "norm_prop_delay_a",
                       "n_stations", "pkt_len", "retrans_window_k", "rts_cts_enabled",
                       "backoff_window_slots", "backoff_slot_time", "rts_time",
                       "cts_time", "stop_packets", "warmup_fraction", "max_sim_time"});
    if (const json* sec = object_section(root, "sweep"))
        check_allowed(*sec, "sweep",
                      {"techniques", "g_lo", "g_hi", "g_step", "replications",
                       "relations", "conclusion_g"});
    return root;
}

void apply_params(macbench_params* params, const json& root) {
    const json* sec = object_section(root, "analytic");
    if (sec == nullptr) return;
    static constexpr std::pair<const char*, macbench_param_field> kKeys[] = {
        {"n_nodes", MACBENCH_PARAM_N_NODES},
        {"pkt_len", MACBENCH_PARAM_PKT_LEN},
        {"cycle_len", MACBENCH_PARAM_CYCLE_LEN},
        {"queue_occ", MACBENCH_PARAM_QUEUE_OCC},
        {"norm_prop_delay", MACBENCH_PARAM_NORM_PROP_DELAY},
        {"retrans_window", MACBENCH_PARAM_RETRANS_WINDOW},
    };
    for (const auto& [key, field] : kKeys) {
        if (!sec->contains(key)) continue;
        const double v = field == MACBENCH_PARAM_N_NODES
                             ? static_cast<double>(integer_at(*sec, "analytic", key))
                             : number_at(*sec, "analytic", key);
        check(macbench_params_set(params, field, v), kExitUsage);
    }
}

void apply_frame(macbench_frame_timing* ft, const json& root) {
    const json* sec = object_section(root, "frame");
    if (sec == nullptr) return;
    static constexpr std::pair<const char*, macbench_frame_field> kKeys[] = {
        {"data_rate", MACBENCH_FRAME_DATA_RATE},
        {"n_overhead_bits", MACBENCH_FRAME_N_OVERHEAD_BITS},
        {"n_ack_bits", MACBENCH_FRAME_N_ACK_BITS},
        {"n_sync_bits", MACBENCH_FRAME_N_SYNC_BITS},
        {"n_data_bits", MACBENCH_FRAME_N_DATA_BITS},
        {"guard_time", MACBENCH_FRAME_GUARD_TIME},
        {"turnaround_time", MACBENCH_FRAME_TURNAROUND_TIME},
        {"ifs_time", MACBENCH_FRAME_IFS_TIME},
        {"backoff_slots", MACBENCH_FRAME_BACKOFF_SLOTS},
        {"backoff_slot_time", MACBENCH_FRAME_BACKOFF_SLOT_TIME},
        {"rts_time", MACBENCH_FRAME_RTS_TIME},
        {"cts_time", MACBENCH_FRAME_CTS_TIME},
        {"idle_time", MACBENCH_FRAME_IDLE_TIME},
        {"slot_boundary_wait", MACBENCH_FRAME_SLOT_BOUNDARY_WAIT},
        {"queue_time", MACBENCH_FRAME_QUEUE_TIME},
        {"payload_bytes", MACBENCH_FRAME_PAYLOAD_BYTES},
    };
    for (const auto& [key, field] : kKeys) {
        if (!sec->contains(key)) continue;
        // null keeps the derived default for the two optional overrides
        if (sec->at(key).is_null()) {
            if (field == MACBENCH_FRAME_TURNAROUND_TIME ||
                field == MACBENCH_FRAME_IFS_TIME) {
                check(macbench_frame_timing_unset(ft, field), kExitUsage);
                continue;
            }
            fail(kExitUsage, std::string("config: \"frame.") + key +
                                 "\" must be a number");
        }
        check(macbench_frame_timing_set(ft, field, number_at(*sec, "frame", key)),
              kExitUsage);
    }
}

void apply_sim(macbench_sim_config* cfg, const json& root) {
    const json* sec = object_section(root, "sim");
    if (sec == nullptr) return;
    if (sec->contains("technique"))
        check(macbench_sim_config_set_technique(
                  cfg, technique_arg(string_at(*sec, "sim", "technique"), kExitUsage)),
              kExitUsage);
    if (sec->contains("rts_cts_enabled"))
        check(macbench_sim_config_set(cfg, MACBENCH_SIM_RTS_CTS_ENABLED,
                                      bool_at(*sec, "sim", "rts_cts_enabled") ? 1 : 0),
              kExitUsage);
    static constexpr std::pair<const char*, macbench_sim_field> kIntKeys[] = {
        {"n_stations", MACBENCH_SIM_N_STATIONS},
        {"backoff_window_slots", MACBENCH_SIM_BACKOFF_WINDOW_SLOTS},
        {"stop_packets", MACBENCH_SIM_STOP_PACKETS},
    };
    for (const auto& [key, field] : kIntKeys) {
        if (!sec->contains(key)) continue;
        check(macbench_sim_config_set(
                  cfg, field, static_cast<double>(integer_at(*sec, "sim", key))),
              kExitUsage);
    }
    static constexpr std::pair<const char*, macbench_sim_field> kNumberKeys[] = {
        {"offered_load_g", MACBENCH_SIM_OFFERED_LOAD_G},
        {"norm_prop_delay_a", MACBENCH_SIM_NORM_PROP_DELAY_A},
        {"pkt_len", MACBENCH_SIM_PKT_LEN},
        {"retrans_window_k", MACBENCH_SIM_RETRANS_WINDOW_K},
        {"backoff_slot_time", MACBENCH_SIM_BACKOFF_SLOT_TIME},
        {"rts_time", MACBENCH_SIM_RTS_TIME},
        {"cts_time", MACBENCH_SIM_CTS_TIME},
        {"warmup_fraction", MACBENCH_SIM_WARMUP_FRACTION},
        {"max_sim_time", MACBENCH_SIM_MAX_SIM_TIME},
    };
    for (const auto& [key, field] : kNumberKeys) {
        if (!sec->contains(key)) continue;
        check(macbench_sim_config_set(cfg, field, number_at(*sec, "sim", key)),
              kExitUsage);
    }
}

// ---------------------------------------------------------------------
// Seed resolution: --seed beats the config's `seed`, which beats the
// MACBENCH_SEED environment variable, which beats the default 42. Every
// command echoes the resolved seed (stderr, or the simulate CSV column).

uint64_t resolve_seed(const std::optional<uint64_t>& cli_seed, const json* root) {
    if (cli_seed) return *cli_seed;
    if (root != nullptr && root->contains("seed"))
        return root->at("seed").get<uint64_t>();
    if (const char* env = std::getenv("MACBENCH_SEED")) {
        const std::string value(env);
        uint64_t seed = 0;
        const auto res = std::from_chars(value.data(), value.data() + value.size(), seed);
        if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
            fail(kExitUsage, "invalid MACBENCH_SEED value \"" + value + "\"");
        return seed;
    }
    return 42;
}

// ---------------------------------------------------------------------
// SVG plot writer. Plots are plain SVG 1.1 text with no external assets:
// one analytic polyline per technique plus simulated points with 95% CI
// error bars, axes, tick labels and a legend.

struct SvgPoint {
    double x, y, lo, hi;
};

struct SvgSeries {
    std::string label;
    std::vector<std::pair<double, double>> line;
    std::vector<SvgPoint> points;
};

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b"};

void write_svg(const std::string& path, const std::string& title,
               const std::string& x_label, const std::string& y_label,
               const std::vector<SvgSeries>& series) {
    const double width = 800, height = 560;
    const double ml = 70, mr = 170, mt = 48, mb = 64;

    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    bool any = false;
    auto widen = [&](double x, double y) {
        if (!std::isfinite(x) || !std::isfinite(y)) return;
        if (!any) {
            xmin = xmax = x;
            ymin = ymax = y;
            any = true;
            return;
        }
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    };
    for (const auto& s : series) {
        for (const auto& [x, y] : s.line) widen(x, y);
        for (const auto& p : s.points) {
            widen(p.x, p.y);
            widen(p.x, p.lo);
            widen(p.x, p.hi);
        }
    }
    if (!any) {
        xmin = ymin = 0;
        xmax = ymax = 1;
    }
    if (xmax == xmin) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    if (ymax == ymin) {
        ymin -= 0.5;
        ymax += 0.5;
    }
    const double xpad = 0.05 * (xmax - xmin), ypad = 0.05 * (ymax - ymin);
    xmin -= xpad;
    xmax += xpad;
    ymin -= ypad;
    ymax += ypad;

    const auto px = [&](double x) {
        return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr);
    };
    const auto py = [&](double y) {
        return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb);
    };

    std::ofstream out(path, std::ios::binary);
    if (!out) fail(kExitRuntime, "cannot write output file \"" + path + "\"");

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
        << fmt6(width) << "\" height=\"" << fmt6(height) << "\" viewBox=\"0 0 "
        << fmt6(width) << " " << fmt6(height) << "\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << fmt6(width) << "\" height=\""
        << fmt6(height) << "\" fill=\"#ffffff\"/>\n"
        << "<text x=\"" << fmt6((ml + width - mr) / 2) << "\" y=\"24\" "
           "text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
        << title << "</text>\n";

    // gridlines and tick labels, 6 ticks per axis
    for (int i = 0; i <= 5; ++i) {
        const double xv = xmin + (xmax - xmin) * i / 5.0;
        const double yv = ymin + (ymax - ymin) * i / 5.0;
        out << "<line x1=\"" << fmt6(px(xv)) << "\" y1=\"" << fmt6(py(ymin))
            << "\" x2=\"" << fmt6(px(xv)) << "\" y2=\"" << fmt6(py(ymax))
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        out << "<line x1=\"" << fmt6(px(xmin)) << "\" y1=\"" << fmt6(py(yv))
            << "\" x2=\"" << fmt6(px(xmax)) << "\" y2=\"" << fmt6(py(yv))
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << fmt6(px(xv)) << "\" y=\"" << fmt6(height - mb + 18)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"11\">"
            << fmt6(xv) << "</text>\n";
        out << "<text x=\"" << fmt6(ml - 8) << "\" y=\"" << fmt6(py(yv) + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt6(yv) << "</text>\n";
    }

    // axes
    out << "<line x1=\"" << fmt6(ml) << "\" y1=\"" << fmt6(height - mb) << "\" x2=\""
        << fmt6(width - mr) << "\" y2=\"" << fmt6(height - mb)
        << "\" stroke=\"#333333\" stroke-width=\"1.5\"/>\n";
    out << "<line x1=\"" << fmt6(ml) << "\" y1=\"" << fmt6(mt) << "\" x2=\""
        << fmt6(ml) << "\" y2=\"" << fmt6(height - mb)
        << "\" stroke=\"#333333\" stroke-width=\"1.5\"/>\n";
    out << "<text x=\"" << fmt6((ml + width - mr) / 2) << "\" y=\""
        << fmt6(height - 16)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << x_label << "</text>\n";
    out << "<text x=\"20\" y=\"" << fmt6((mt + height - mb) / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 20 "
        << fmt6((mt + height - mb) / 2) << ")\">" << y_label << "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = kPalette[si % (sizeof kPalette / sizeof kPalette[0])];

        std::string poly;
        for (const auto& [x, y] : s.line) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            if (!poly.empty()) poly += ' ';
            poly += fmt6(px(x)) + "," + fmt6(py(y));
        }
        if (!poly.empty())
            out << "<polyline fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"1.5\" points=\"" << poly << "\"/>\n";

        for (const auto& p : s.points) {
            if (!std::isfinite(p.x) || !std::isfinite(p.y)) continue;
            if (std::isfinite(p.lo) && std::isfinite(p.hi)) {
                out << "<line x1=\"" << fmt6(px(p.x)) << "\" y1=\"" << fmt6(py(p.lo))
                    << "\" x2=\"" << fmt6(px(p.x)) << "\" y2=\"" << fmt6(py(p.hi))
                    << "\" stroke=\"" << color << "\" stroke-width=\"1\"/>\n";
                for (const double yv : {p.lo, p.hi})
                    out << "<line x1=\"" << fmt6(px(p.x) - 3) << "\" y1=\""
                        << fmt6(py(yv)) << "\" x2=\"" << fmt6(px(p.x) + 3)
                        << "\" y2=\"" << fmt6(py(yv)) << "\" stroke=\"" << color
                        << "\" stroke-width=\"1\"/>\n";
            }
            out << "<circle cx=\"" << fmt6(px(p.x)) << "\" cy=\"" << fmt6(py(p.y))
                << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        }

        const double ly = mt + 16 + 20 * static_cast<double>(si);
        out << "<line x1=\"" << fmt6(width - mr + 12) << "\" y1=\"" << fmt6(ly - 4)
            << "\" x2=\"" << fmt6(width - mr + 34) << "\" y2=\"" << fmt6(ly - 4)
            << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << fmt6(width - mr + 40) << "\" y=\"" << fmt6(ly)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.label
            << "</text>\n";
    }

    out << "</svg>\n";
    out.flush();
    if (!out) fail(kExitRuntime, "failed writing output file \"" + path + "\"");
}

// ---------------------------------------------------------------------
// Subcommands

struct AnalyticArgs {
    std::string technique;
    std::string relation;
    double lo = 0, hi = 0, step = 0;
    std::optional<double> n_nodes, pkt_len, cycle_len, queue_occ, prop_delay,
        retrans_window;
};

int run_analytic(const AnalyticArgs& args, const std::optional<uint64_t>& cli_seed) {
    const macbench_technique t = technique_arg(args.technique, kExitUsage);
    const macbench_relation r = relation_arg(args.relation, kExitUsage);
    const uint64_t seed = resolve_seed(cli_seed, nullptr);
    std::cerr << "seed: " << seed << "\n";

    ParamsPtr params(macbench_params_create());
    if (!params) fail(kExitRuntime, "out of memory");
    const std::pair<std::optional<double>, macbench_param_field> overrides[] = {
        {args.n_nodes, MACBENCH_PARAM_N_NODES},
        {args.pkt_len, MACBENCH_PARAM_PKT_LEN},
        {args.cycle_len, MACBENCH_PARAM_CYCLE_LEN},
        {args.queue_occ, MACBENCH_PARAM_QUEUE_OCC},
        {args.prop_delay, MACBENCH_PARAM_NORM_PROP_DELAY},
        {args.retrans_window, MACBENCH_PARAM_RETRANS_WINDOW},
    };
    for (const auto& [value, field] : overrides)
        if (value) check(macbench_params_set(params.get(), field, *value), kExitUsage);

    macbench_curve* raw = nullptr;
    const auto st =
        macbench_curve_generate(t, r, args.lo, args.hi, args.step, params.get(), &raw);
    if (st == MACBENCH_ERR_INVALID_ARGUMENT) fail(kExitUsage, macbench_last_error());
    check(st);
    CurvePtr curve(raw);

    if (macbench_curve_skipped(curve.get()) > 0) {
        const long steps =
            static_cast<long>(std::floor((args.hi - args.lo) / args.step + 1e-9));
        for (long i = 0; i <= steps; ++i) {
            const double x = args.lo + static_cast<double>(i) * args.step;
            if (!macbench_in_domain(t, r, x, params.get()))
                std::cerr << "note: skipped x=" << fmt6(x) << " (outside the "
                          << macbench_technique_name(t) << " "
                          << macbench_relation_name(r) << " domain)\n";
        }
    }
    if (macbench_curve_as_printed(curve.get()))
        std::cerr << "note: the CSMA delay-vs-load relation is a dimensionless "
                     "delay proxy, reproduced as printed in its source\n";

    StringPtr csv(macbench_curve_csv(curve.get()));
    if (!csv) fail(kExitRuntime, macbench_last_error());
    std::cout << csv.get();
    return 0;
}

int run_timing(const std::string& config_path, const std::optional<uint64_t>& cli_seed) {
    const json root = load_config(config_path);
    const uint64_t seed = resolve_seed(cli_seed, &root);
    std::cerr << "seed: " << seed << "\n";

    FramePtr frame(macbench_frame_timing_create());
    if (!frame) fail(kExitRuntime, "out of memory");
    apply_frame(frame.get(), root);

    char* raw = nullptr;
    check(macbench_timing_csv(frame.get(), &raw));
    StringPtr csv(raw);
    std::cout << csv.get();
    return 0;
}

int run_simulate(const std::string& config_path, const std::string& trace_path,
                 const std::optional<uint64_t>& cli_seed) {
    const json root = load_config(config_path);
    SimConfigPtr cfg(macbench_sim_config_create());
    if (!cfg) fail(kExitRuntime, "out of memory");
    apply_sim(cfg.get(), root);
    const uint64_t seed = resolve_seed(cli_seed, &root);
    check(macbench_sim_config_set_seed(cfg.get(), seed));

    macbench_metrics* raw = nullptr;
    check(macbench_simulate(cfg.get(),
                            trace_path.empty() ? nullptr : trace_path.c_str(), &raw));
    MetricsPtr metrics(raw);

    StringPtr csv(macbench_metrics_csv(metrics.get()));
    if (!csv) fail(kExitRuntime, macbench_last_error());
    std::cout << csv.get();

    if (const char* warning = macbench_metrics_warning(metrics.get());
        warning != nullptr && warning[0] != '\0')
        std::cerr << "warning: " << warning << "\n";
    if (const std::string status = macbench_metrics_status(metrics.get());
        status != "ok")
        std::cerr << "note: run ended with status \"" << status << "\"\n";
    return 0;
}

struct RelationPlot {
    macbench_relation relation;
    std::string x_label;
    std::string y_label;
};

int run_compare(const std::string& config_path, const std::string& prefix,
                const std::optional<uint64_t>& cli_seed) {
    const json root = load_config(config_path);
    SweepSpecPtr spec(macbench_sweep_spec_create());
    if (!spec) fail(kExitRuntime, "out of memory");
    apply_sim(macbench_sweep_spec_sim(spec.get()), root);
    apply_params(macbench_sweep_spec_params(spec.get()), root);

    std::vector<std::string> technique_names = {"pure_aloha", "slotted_aloha",
                                                "csma_ca", "tdma", "fdma"};
    std::vector<std::string> relation_names = {"t_vs_g", "d_vs_g"};
    double g_lo = 0.1, g_hi = 1.0, g_step = 0.1, conclusion_g = 0.8;
    long long replications = 5;
    if (const json* sweep = object_section(root, "sweep")) {
        if (sweep->contains("techniques")) {
            const json& arr = sweep->at("techniques");
            if (!arr.is_array() || arr.empty())
                fail(kExitUsage,
                     "config: \"sweep.techniques\" must be a non-empty array");
            technique_names.clear();
            for (const json& v : arr) {
                if (!v.is_string())
                    fail(kExitUsage,
                         "config: \"sweep.techniques\" entries must be strings");
                technique_names.push_back(v.get<std::string>());
            }
        }
        if (sweep->contains("relations")) {
            const json& arr = sweep->at("relations");
            if (!arr.is_array() || arr.empty())
                fail(kExitUsage,
                     "config: \"sweep.relations\" must be a non-empty array");
            relation_names.clear();
            for (const json& v : arr) {
                if (!v.is_string())
                    fail(kExitUsage,
                         "config: \"sweep.relations\" entries must be strings");
                relation_names.push_back(v.get<std::string>());
            }
        }
        if (sweep->contains("g_lo")) g_lo = number_at(*sweep, "sweep", "g_lo");
        if (sweep->contains("g_hi")) g_hi = number_at(*sweep, "sweep", "g_hi");
        if (sweep->contains("g_step")) g_step = number_at(*sweep, "sweep", "g_step");
        if (sweep->contains("replications"))
            replications = integer_at(*sweep, "sweep", "replications");
        if (sweep->contains("conclusion_g"))
            conclusion_g = number_at(*sweep, "sweep", "conclusion_g");
    }

    bool has_conclusion_set = true;
    {
        std::vector<macbench_technique> techniques;
        for (const std::string& name : technique_names)
            techniques.push_back(technique_arg(name, kExitUsage));
        for (const macbench_technique t : techniques)
            check(macbench_sweep_spec_add_technique(spec.get(), t), kExitUsage);
        for (const macbench_technique required :
             {MACBENCH_PURE_ALOHA, MACBENCH_SLOTTED_ALOHA, MACBENCH_CSMA_CA,
              MACBENCH_TDMA, MACBENCH_FDMA})
            if (std::find(techniques.begin(), techniques.end(), required) ==
                techniques.end())
                has_conclusion_set = false;
    }
    check(macbench_sweep_spec_set_grid(spec.get(), g_lo, g_hi, g_step), kExitUsage);
    if (replications < 1 || replications > 1000000)
        fail(kExitUsage, "config: \"sweep.replications\" must be in [1, 1000000]");
    check(macbench_sweep_spec_set_replications(spec.get(),
                                               static_cast<int>(replications)),
          kExitUsage);

    std::vector<macbench_relation> relations;
    for (const std::string& name : relation_names) {
        const macbench_relation r = relation_arg(name, kExitUsage);
        if (std::find(relations.begin(), relations.end(), r) == relations.end())
            relations.push_back(r);
    }

    const uint64_t seed = resolve_seed(cli_seed, &root);
    check(macbench_sweep_spec_set_base_seed(spec.get(), seed));
    std::cerr << "seed: " << seed << "\n";

    // Probe every output path before the first simulation runs.
    const std::string csv_path = prefix + ".csv";
    const std::string ranking_path = prefix + "-ranking.txt";
    std::vector<std::string> svg_paths;
    for (const macbench_relation r : relations)
        svg_paths.push_back(prefix + "-" + macbench_relation_name(r) + ".svg");
    std::vector<std::string> all_paths = svg_paths;
    all_paths.push_back(csv_path);
    if (has_conclusion_set) all_paths.push_back(ranking_path);
    for (const std::string& path : all_paths) {
        std::ofstream probe(path, std::ios::app);
        if (!probe) fail(kExitRuntime, "cannot write output file \"" + path + "\"");
    }

    macbench_sweep_table* raw_table = nullptr;
    check(macbench_run_sweep(spec.get(), &raw_table));
    SweepTablePtr table(raw_table);

    for (std::size_t i = 0; i < macbench_sweep_table_diagnostics(table.get()); ++i)
        std::cerr << "note: " << macbench_sweep_table_diagnostic(table.get(), i)
                  << "\n";

    {
        StringPtr csv(macbench_sweep_table_csv(table.get()));
        if (!csv) fail(kExitRuntime, macbench_last_error());
        std::ofstream out(csv_path, std::ios::binary | std::ios::trunc);
        if (!out) fail(kExitRuntime, "cannot write output file \"" + csv_path + "\"");
        out << csv.get();
        out.flush();
        if (!out)
            fail(kExitRuntime, "failed writing output file \"" + csv_path + "\"");
        std::cerr << "wrote " << csv_path << "\n";
    }

    const std::size_t n_rows = macbench_sweep_table_rows(table.get());
    for (std::size_t ri = 0; ri < relations.size(); ++ri) {
        const macbench_relation rel = relations[ri];
        std::vector<SvgSeries> series;
        std::string current;
        auto cell = [&](std::size_t row, macbench_sweep_column col) {
            double v = 0;
            check(macbench_sweep_table_cell(table.get(), row, col, &v));
            return v;
        };
        for (std::size_t row = 0; row < n_rows; ++row) {
            macbench_technique t;
            check(macbench_sweep_table_technique(table.get(), row, &t));
            const std::string name = macbench_technique_name(t);
            if (series.empty() || name != current) {
                series.push_back(SvgSeries{name, {}, {}});
                current = name;
            }
            SvgSeries& s = series.back();
            const double g = cell(row, MACBENCH_SWEEP_G);
            const double sa = cell(row, MACBENCH_SWEEP_S_ANALYTIC);
            const double sm = cell(row, MACBENCH_SWEEP_S_SIM_MEAN);
            const double slo = cell(row, MACBENCH_SWEEP_S_CI_LO);
            const double shi = cell(row, MACBENCH_SWEEP_S_CI_HI);
            const double da = cell(row, MACBENCH_SWEEP_D_ANALYTIC);
            const double dm = cell(row, MACBENCH_SWEEP_D_SIM_MEAN);
            const double dlo = cell(row, MACBENCH_SWEEP_D_CI_LO);
            const double dhi = cell(row, MACBENCH_SWEEP_D_CI_HI);
            switch (rel) {
                case MACBENCH_T_VS_G:
                    s.line.emplace_back(g, sa);
                    s.points.push_back(SvgPoint{g, sm, slo, shi});
                    break;
                case MACBENCH_D_VS_G:
                    s.line.emplace_back(g, da);
                    s.points.push_back(SvgPoint{g, dm, dlo, dhi});
                    break;
                case MACBENCH_D_VS_T:
                    s.line.emplace_back(sa, da);
                    s.points.push_back(SvgPoint{sm, dm, dlo, dhi});
                    break;
                default:
                    break;
            }
        }
        RelationPlot plot;
        switch (rel) {
            case MACBENCH_T_VS_G:
                plot = {rel, "offered load G", "throughput S"};
                break;
            case MACBENCH_D_VS_G:
                plot = {rel, "offered load G", "mean delay (packet times)"};
                break;
            default:
                plot = {rel, "throughput S", "mean delay (packet times)"};
                break;
        }
        const std::string title = std::string("simulated vs analytic (") +
                                  macbench_relation_name(rel) + ")";
        write_svg(svg_paths[ri], title, plot.x_label, plot.y_label, series);
        std::cerr << "wrote " << svg_paths[ri] << "\n";
    }

    if (has_conclusion_set) {
        macbench_ranking_report* raw_report = nullptr;
        check(macbench_reproduce_conclusion(spec.get(), conclusion_g, &raw_report));
        ReportPtr report(raw_report);
        StringPtr text(macbench_ranking_report_text(report.get()));
        if (!text) fail(kExitRuntime, macbench_last_error());
        std::ofstream out(ranking_path, std::ios::binary | std::ios::trunc);
        if (!out)
            fail(kExitRuntime, "cannot write output file \"" + ranking_path + "\"");
        out << text.get();
        out.flush();
        if (!out)
            fail(kExitRuntime, "failed writing output file \"" + ranking_path + "\"");
        std::cerr << "wrote " << ranking_path << "\n";
    } else {
        std::cerr << "note: ranking report skipped (needs pure_aloha, "
                     "slotted_aloha, csma_ca, tdma and fdma in the sweep)\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"macbench: medium-access technique workbench"};
    app.set_version_flag("--version", macbench_version());
    app.require_subcommand(1);

    std::optional<uint64_t> cli_seed;

    AnalyticArgs analytic_args;
    CLI::App* analytic = app.add_subcommand(
        "analytic", "Print a closed-form relation as CSV on standard output");
    analytic->add_option("technique", analytic_args.technique,
                         "pure_aloha|slotted_aloha|csma_1p|csma_ca|tdma|fdma")
        ->required();
    analytic->add_option("relation", analytic_args.relation, "d-vs-g|t-vs-g|d-vs-t")
        ->required();
    analytic->add_option("lo", analytic_args.lo, "grid start")->required();
    analytic->add_option("hi", analytic_args.hi, "grid end (inclusive)")->required();
    analytic->add_option("step", analytic_args.step, "grid step")->required();
    analytic->add_option("--n-nodes", analytic_args.n_nodes, "station count N");
    analytic->add_option("--pkt-len", analytic_args.pkt_len, "packets per message L");
    analytic->add_option("--cycle-len", analytic_args.cycle_len,
                         "channel-rate proxy C");
    analytic->add_option("--queue-occ", analytic_args.queue_occ,
                         "queue occupancy q in [0,1)");
    analytic->add_option("--prop-delay", analytic_args.prop_delay,
                         "normalized propagation delay a");
    analytic->add_option("--retrans-window", analytic_args.retrans_window,
                         "retransmission window K (packet times)");
    analytic->add_option("--seed", cli_seed, "seed echoed for reproducibility");

    std::string timing_config;
    CLI::App* timing = app.add_subcommand(
        "timing", "Frame delay decomposition and throughput ranking as CSV");
    timing->add_option("config", timing_config, "JSON configuration file")
        ->required();
    timing->add_option("--seed", cli_seed, "seed echoed for reproducibility");

    std::string simulate_config, trace_path;
    CLI::App* simulate = app.add_subcommand(
        "simulate", "Run one discrete-event simulation and print a metrics row");
    simulate->add_option("config", simulate_config, "JSON configuration file")
        ->required();
    simulate->add_option("--trace", trace_path, "write the full event trace here");
    simulate->add_option("--seed", cli_seed, "simulation seed (overrides config)");

    std::string compare_config, compare_prefix;
    CLI::App* compare = app.add_subcommand(
        "compare",
        "Sweep offered load, compare simulation against the closed forms, and "
        "write CSV/SVG/ranking files");
    compare->add_option("config", compare_config, "JSON configuration file")
        ->required();
    compare->add_option("prefix", compare_prefix, "output path prefix")->required();
    compare->add_option("--seed", cli_seed, "base seed (overrides config)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (*analytic) return run_analytic(analytic_args, cli_seed);
        if (*timing) return run_timing(timing_config, cli_seed);
        if (*simulate) return run_simulate(simulate_config, trace_path, cli_seed);
        if (*compare) return run_compare(compare_config, compare_prefix, cli_seed);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}
