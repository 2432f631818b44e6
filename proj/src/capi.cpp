// C ABI shim over the C++ core. Every entry point catches exceptions at the
// boundary, maps them onto macbench_status, and stores the message in a
// thread-local slot for macbench_last_error().

#include "macbench/macbench.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <limits>
#include <new>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "analytic.hpp"
#include "format.hpp"
#include "frame_timing.hpp"
#include "protocols.hpp"
#include "rng.hpp"
#include "sweep.hpp"
#include "technique.hpp"

namespace {

thread_local std::string t_last_error = "no error";

macbench_status fail(macbench_status st, const std::string& what) {
    t_last_error = what;
    return st;
}

macbench_status fail_null(const char* what) {
    return fail(MACBENCH_ERR_INVALID_ARGUMENT, std::string(what) + " is null");
}

/// Runs fn, translating exceptions into status codes. domain_error and
/// invalid_argument derive from logic_error, so they must be caught first.
template <typename Fn>
macbench_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const std::domain_error& e) {
        return fail(MACBENCH_ERR_DOMAIN, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(MACBENCH_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::logic_error& e) {
        return fail(MACBENCH_ERR_LOGIC, e.what());
    } catch (const std::bad_alloc&) {
        return fail(MACBENCH_ERR_UNKNOWN, "out of memory");
    } catch (const std::exception& e) {
        return fail(MACBENCH_ERR_UNKNOWN, e.what());
    } catch (...) {
        return fail(MACBENCH_ERR_UNKNOWN, "unknown error");
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) {
        t_last_error = "out of memory";
        return nullptr;
    }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

macbench::Technique cpp_technique(macbench_technique t) {
    const int v = static_cast<int>(t);
    if (v < 0 || v > static_cast<int>(macbench::Technique::fdma))
        throw std::invalid_argument("unknown technique value " + std::to_string(v));
    return static_cast<macbench::Technique>(v);
}

macbench::Relation cpp_relation(macbench_relation r) {
    const int v = static_cast<int>(r);
    if (v < 0 || v > static_cast<int>(macbench::Relation::d_vs_t))
        throw std::invalid_argument("unknown relation value " + std::to_string(v));
    return static_cast<macbench::Relation>(v);
}

macbench_technique c_technique(macbench::Technique t) {
    return static_cast<macbench_technique>(static_cast<int>(t));
}

/// Checked double -> integer conversion for the integer-valued config fields.
long long as_integer(double value, const char* what) {
    if (!(value >= static_cast<double>(std::numeric_limits<long long>::min()) &&
          value <= static_cast<double>(std::numeric_limits<long long>::max())) ||
        value != std::floor(value))
        throw std::invalid_argument(std::string(what) + " must be an integer");
    return static_cast<long long>(value);
}

}  // namespace

// ---------------------------------------------------------------------
// Handles. sim_config and params double as borrowed views into a sweep
// spec: a view aliases the spec's embedded object and its destroy is a
// no-op, so the one set of accessors serves both roles.

struct macbench_params {
    macbench::analytic::AnalyticParams storage;
    macbench::analytic::AnalyticParams* ptr = &storage;
    bool owned = true;
};

struct macbench_curve {
    macbench::analytic::Curve v;
};

struct macbench_frame_timing {
    macbench::timing::FrameTiming v;
};

struct macbench_breakdown {
    macbench::timing::DelayBreakdown v;
};

struct macbench_ranking {
    std::vector<macbench::timing::RankEntry> v;
};

struct macbench_sim_config {
    macbench::sim::SimConfig storage;
    macbench::sim::SimConfig* ptr = &storage;
    bool owned = true;
};

struct macbench_metrics {
    macbench::sim::Metrics v;
};

struct macbench_sweep_spec {
    macbench::sweep::SweepSpec v;
    macbench_sim_config sim_view;
    macbench_params params_view;

    macbench_sweep_spec() {
        sim_view.ptr = &v.sim;
        sim_view.owned = false;
        params_view.ptr = &v.analytic_params;
        params_view.owned = false;
    }
};

struct macbench_sweep_table {
    macbench::sweep::SweepTable v;
};

struct macbench_ranking_report {
    macbench::sweep::ConclusionReport v;
};

// ---------------------------------------------------------------------

const char* macbench_version(void) { return "1.0.0"; }

const char* macbench_last_error(void) { return t_last_error.c_str(); }

void macbench_string_free(char* s) { std::free(s); }

const char* macbench_technique_name(macbench_technique t) {
    const int v = static_cast<int>(t);
    if (v < 0 || v > static_cast<int>(macbench::Technique::fdma)) return "unknown";
    return macbench::technique_name(static_cast<macbench::Technique>(v));
}

const char* macbench_relation_name(macbench_relation r) {
    const int v = static_cast<int>(r);
    if (v < 0 || v > static_cast<int>(macbench::Relation::d_vs_t)) return "unknown";
    return macbench::relation_name(static_cast<macbench::Relation>(v));
}

macbench_status macbench_technique_from_name(const char* name,
                                             macbench_technique* out) {
    if (name == nullptr) return fail_null("name");
    if (out == nullptr) return fail_null("out");
    const auto t = macbench::technique_from_name(name);
    if (!t)
        return fail(MACBENCH_ERR_INVALID_ARGUMENT,
                    std::string("unknown technique \"") + name + "\"");
    *out = c_technique(*t);
    return MACBENCH_OK;
}

macbench_status macbench_relation_from_name(const char* name,
                                            macbench_relation* out) {
    if (name == nullptr) return fail_null("name");
    if (out == nullptr) return fail_null("out");
    const auto r = macbench::relation_from_name(name);
    if (!r)
        return fail(MACBENCH_ERR_INVALID_ARGUMENT,
                    std::string("unknown relation \"") + name + "\"");
    *out = static_cast<macbench_relation>(static_cast<int>(*r));
    return MACBENCH_OK;
}

// ---------------------------------------------------------------------
// Closed-form relations

macbench_params* macbench_params_create(void) {
    return new (std::nothrow) macbench_params;
}

void macbench_params_destroy(macbench_params* p) {
    if (p != nullptr && p->owned) delete p;
}

macbench_status macbench_params_set(macbench_params* p, macbench_param_field field,
                                    double value) {
    if (p == nullptr) return fail_null("params");
    return guarded([&]() -> macbench_status {
        auto& v = *p->ptr;
        switch (field) {
            case MACBENCH_PARAM_N_NODES:
                v.n_nodes = static_cast<int>(as_integer(value, "n_nodes"));
                break;
            case MACBENCH_PARAM_PKT_LEN: v.pkt_len = value; break;
            case MACBENCH_PARAM_CYCLE_LEN: v.cycle_len = value; break;
            case MACBENCH_PARAM_QUEUE_OCC: v.queue_occ = value; break;
            case MACBENCH_PARAM_NORM_PROP_DELAY: v.norm_prop_delay = value; break;
            case MACBENCH_PARAM_RETRANS_WINDOW: v.retrans_window = value; break;
            default:
                throw std::invalid_argument("unknown parameter field");
        }
        return MACBENCH_OK;
    });
}

macbench_status macbench_params_get(const macbench_params* p,
                                    macbench_param_field field, double* out) {
    if (p == nullptr) return fail_null("params");
    if (out == nullptr) return fail_null("out");
    const auto& v = *p->ptr;
    switch (field) {
        case MACBENCH_PARAM_N_NODES: *out = v.n_nodes; return MACBENCH_OK;
        case MACBENCH_PARAM_PKT_LEN: *out = v.pkt_len; return MACBENCH_OK;
        case MACBENCH_PARAM_CYCLE_LEN: *out = v.cycle_len; return MACBENCH_OK;
        case MACBENCH_PARAM_QUEUE_OCC: *out = v.queue_occ; return MACBENCH_OK;
        case MACBENCH_PARAM_NORM_PROP_DELAY:
            *out = v.norm_prop_delay;
            return MACBENCH_OK;
        case MACBENCH_PARAM_RETRANS_WINDOW:
            *out = v.retrans_window;
            return MACBENCH_OK;
        default:
            return fail(MACBENCH_ERR_INVALID_ARGUMENT, "unknown parameter field");
    }
}

int macbench_in_domain(macbench_technique t, macbench_relation r, double x,
                       const macbench_params* p) {
    if (p == nullptr) return 0;
    try {
        return macbench::analytic::in_domain(cpp_technique(t), cpp_relation(r), x,
                                             *p->ptr)
                   ? 1
                   : 0;
    } catch (...) {
        return 0;
    }
}

macbench_status macbench_eval(macbench_technique t, macbench_relation r, double x,
                              const macbench_params* p, double* out) {
    if (p == nullptr) return fail_null("params");
    if (out == nullptr) return fail_null("out");
    return guarded([&]() -> macbench_status {
        p->ptr->validate();
        *out = macbench::analytic::eval(cpp_technique(t), cpp_relation(r), x, *p->ptr);
        return MACBENCH_OK;
    });
}

macbench_status macbench_curve_generate(macbench_technique t, macbench_relation r,
                                        double lo, double hi, double step,
                                        const macbench_params* p,
                                        macbench_curve** out) {
    if (p == nullptr) return fail_null("params");
    if (out == nullptr) return fail_null("out");
    return guarded([&]() -> macbench_status {
        auto curve = macbench::analytic::generate_curve(
            cpp_technique(t), cpp_relation(r),
            macbench::analytic::GridRange{lo, hi, step}, *p->ptr);
        *out = new macbench_curve{std::move(curve)};
        return MACBENCH_OK;
    });
}

void macbench_curve_destroy(macbench_curve* c) { delete c; }

size_t macbench_curve_size(const macbench_curve* c) {
    return c == nullptr ? 0 : c->v.points.size();
}

macbench_status macbench_curve_point(const macbench_curve* c, size_t i, double* x,
                                     double* y) {
    if (c == nullptr) return fail_null("curve");
    if (i >= c->v.points.size())
        return fail(MACBENCH_ERR_INVALID_ARGUMENT, "curve point index out of range");
    if (x != nullptr) *x = c->v.points[i].x;
    if (y != nullptr) *y = c->v.points[i].y;
    return MACBENCH_OK;
}

int macbench_curve_skipped(const macbench_curve* c) {
    return c == nullptr ? 0 : c->v.skipped;
}

int macbench_curve_as_printed(const macbench_curve* c) {
    return c != nullptr && c->v.as_printed ? 1 : 0;
}

char* macbench_curve_csv(const macbench_curve* c) {
    if (c == nullptr) {
        fail_null("curve");
        return nullptr;
    }
    std::string csv = "technique,relation,x,y\n";
    const char* tech = macbench::technique_name(c->v.technique);
    const char* rel = macbench::relation_name(c->v.relation);
    for (const auto& pt : c->v.points) {
        csv += tech;
        csv += ',';
        csv += rel;
        csv += ',';
        csv += macbench::fmt::format_double(pt.x);
        csv += ',';
        csv += macbench::fmt::format_double(pt.y);
        csv += '\n';
    }
    return dup_string(csv);
}

// ---------------------------------------------------------------------
// Frame-component timing

macbench_frame_timing* macbench_frame_timing_create(void) {
    return new (std::nothrow) macbench_frame_timing;
}

void macbench_frame_timing_destroy(macbench_frame_timing* ft) { delete ft; }

macbench_status macbench_frame_timing_set(macbench_frame_timing* ft,
                                          macbench_frame_field field, double value) {
    if (ft == nullptr) return fail_null("frame_timing");
    auto& v = ft->v;
    switch (field) {
        case MACBENCH_FRAME_DATA_RATE: v.data_rate = value; break;
        case MACBENCH_FRAME_N_OVERHEAD_BITS: v.n_overhead_bits = value; break;
        case MACBENCH_FRAME_N_ACK_BITS: v.n_ack_bits = value; break;
        case MACBENCH_FRAME_N_SYNC_BITS: v.n_sync_bits = value; break;
        case MACBENCH_FRAME_N_DATA_BITS: v.n_data_bits = value; break;
        case MACBENCH_FRAME_GUARD_TIME: v.guard_time = value; break;
        case MACBENCH_FRAME_TURNAROUND_TIME: v.turnaround_time = value; break;
        case MACBENCH_FRAME_IFS_TIME: v.ifs_time = value; break;
        case MACBENCH_FRAME_BACKOFF_SLOTS: v.backoff_slots = value; break;
        case MACBENCH_FRAME_BACKOFF_SLOT_TIME: v.backoff_slot_time = value; break;
        case MACBENCH_FRAME_RTS_TIME: v.rts_time = value; break;
        case MACBENCH_FRAME_CTS_TIME: v.cts_time = value; break;
        case MACBENCH_FRAME_IDLE_TIME: v.idle_time = value; break;
        case MACBENCH_FRAME_SLOT_BOUNDARY_WAIT: v.slot_boundary_wait = value; break;
        case MACBENCH_FRAME_QUEUE_TIME: v.queue_time = value; break;
        case MACBENCH_FRAME_PAYLOAD_BYTES: v.payload_bytes = value; break;
        default:
            return fail(MACBENCH_ERR_INVALID_ARGUMENT, "unknown frame-timing field");
    }
    return MACBENCH_OK;
}

macbench_status macbench_frame_timing_unset(macbench_frame_timing* ft,
                                            macbench_frame_field field) {
    if (ft == nullptr) return fail_null("frame_timing");
    switch (field) {
        case MACBENCH_FRAME_TURNAROUND_TIME:
            ft->v.turnaround_time.reset();
            return MACBENCH_OK;
        case MACBENCH_FRAME_IFS_TIME:
            ft->v.ifs_time.reset();
            return MACBENCH_OK;
        default:
            return fail(MACBENCH_ERR_INVALID_ARGUMENT,
                        "only the turnaround and inter-frame-space overrides can "
                        "be unset");
    }
}

macbench_status macbench_frame_delay(macbench_technique t,
                                     const macbench_frame_timing* ft,
                                     macbench_breakdown** out) {
    if (ft == nullptr) return fail_null("frame_timing");
    if (out == nullptr) return fail_null("out");
    return guarded([&]() -> macbench_status {
        auto b = macbench::timing::frame_delay(cpp_technique(t), ft->v);
        *out = new macbench_breakdown{std::move(b)};
        return MACBENCH_OK;
    });
}

void macbench_breakdown_destroy(macbench_breakdown* b) { delete b; }

size_t macbench_breakdown_size(const macbench_breakdown* b) {
    return b == nullptr ? 0 : b->v.components.size();
}

const char* macbench_breakdown_component_name(const macbench_breakdown* b, size_t i) {
    if (b == nullptr || i >= b->v.components.size()) return nullptr;
    return b->v.components[i].first.c_str();
}

macbench_status macbench_breakdown_component_value(const macbench_breakdown* b,
                                                   size_t i, double* out) {
    if (b == nullptr) return fail_null("breakdown");
    if (out == nullptr) return fail_null("out");
    if (i >= b->v.components.size())
        return fail(MACBENCH_ERR_INVALID_ARGUMENT, "component index out of range");
    *out = b->v.components[i].second;
    return MACBENCH_OK;
}

macbench_status macbench_breakdown_total(const macbench_breakdown* b, double* out) {
    if (b == nullptr) return fail_null("breakdown");
    if (out == nullptr) return fail_null("out");
    *out = b->v.total;
    return MACBENCH_OK;
}

macbench_status macbench_throughput_from_delay(double payload_bytes,
                                               double total_delay_s, double* out) {
    if (out == nullptr) return fail_null("out");
    return guarded([&]() -> macbench_status {
        *out = macbench::timing::throughput_from_delay(payload_bytes, total_delay_s);
        return MACBENCH_OK;
    });
}

macbench_status macbench_rank_techniques(const macbench_frame_timing* ft,
                                         macbench_ranking** out) {
    if (ft == nullptr) return fail_null("frame_timing");
    if (out == nullptr) return fail_null("out");
    return guarded([&]() -> macbench_status {
        auto r = macbench::timing::rank_techniques(ft->v);
        *out = new macbench_ranking{std::move(r)};
        return MACBENCH_OK;
    });
}

void macbench_ranking_destroy(macbench_ranking* r) { delete r; }

size_t macbench_ranking_size(const macbench_ranking* r) {
    return r == nullptr ? 0 : r->v.size();
}

macbench_status macbench_ranking_entry(const macbench_ranking* r, size_t i,
                                       macbench_technique* t, double* total_delay_s,
                                       double* throughput_bps) {
    if (r == nullptr) return fail_null("ranking");
    if (i >= r->v.size())
        return fail(MACBENCH_ERR_INVALID_ARGUMENT, "ranking index out of range");
    const auto& e = r->v[i];
    if (t != nullptr) *t = c_technique(e.technique);
    if (total_delay_s != nullptr) *total_delay_s = e.total_delay_s;
    if (throughput_bps != nullptr) *throughput_bps = e.throughput_bps;
    return MACBENCH_OK;
}

macbench_status macbench_timing_csv(const macbench_frame_timing* ft, char** out) {
    if (ft == nullptr) return fail_null("frame_timing");
    if (out == nullptr) return fail_null("out");
    return guarded([&]() -> macbench_status {
        namespace timing = macbench::timing;
        namespace fmt = macbench::fmt;
        const auto ranked = timing::rank_techniques(ft->v);

        // Sections 1-2 list the ranked techniques in enum order; section 3
        // keeps the throughput order the ranking established.
        std::vector<macbench::timing::RankEntry> by_enum = ranked;
        std::sort(by_enum.begin(), by_enum.end(), [](const auto& a, const auto& b) {
            return static_cast<int>(a.technique) < static_cast<int>(b.technique);
        });

        std::string csv = "technique,component,seconds\n";
        for (const auto& entry : by_enum) {
            const auto breakdown = timing::frame_delay(entry.technique, ft->v);
            for (const auto& [name, seconds] : breakdown.components) {
                csv += macbench::technique_name(entry.technique);
                csv += ',';
                csv += name;
                csv += ',';
                csv += fmt::format_double(seconds);
                csv += '\n';
            }
        }
        csv += "\ntechnique,total_s,throughput_bps\n";
        for (const auto& entry : by_enum) {
            csv += macbench::technique_name(entry.technique);
            csv += ',';
            csv += fmt::format_double(entry.total_delay_s);
            csv += ',';
            csv += fmt::format_double(entry.throughput_bps);
            csv += '\n';
        }
        csv += "\nrank,technique,throughput_bps\n";
        for (size_t i = 0; i < ranked.size(); ++i) {
            csv += std::to_string(i + 1);
            csv += ',';
            csv += macbench::technique_name(ranked[i].technique);
            csv += ',';
            csv += fmt::format_double(ranked[i].throughput_bps);
            csv += '\n';
        }

        char* dup = dup_string(csv);
        if (dup == nullptr) return MACBENCH_ERR_UNKNOWN;
        *out = dup;
        return MACBENCH_OK;
    });
}

// ---------------------------------------------------------------------
// Simulation

macbench_sim_config* macbench_sim_config_create(void) {
    return new (std::nothrow) macbench_sim_config;
}

void macbench_sim_config_destroy(macbench_sim_config* c) {
    if (c != nullptr && c->owned) delete c;
}

macbench_status macbench_sim_config_set_technique(macbench_sim_config* c,
                                                  macbench_technique t) {
    if (c == nullptr) return fail_null("sim_config");
    return guarded([&]() -> macbench_status {
        c->ptr->technique = cpp_technique(t);
        return MACBENCH_OK;
    });
}

macbench_status macbench_sim_config_set_seed(macbench_sim_config* c, uint64_t seed) {
    if (c == nullptr) return fail_null("sim_config");
    c->ptr->seed = seed;
    return MACBENCH_OK;
}

macbench_status macbench_sim_config_set(macbench_sim_config* c,
                                        macbench_sim_field field, double value) {
    if (c == nullptr) return fail_null("sim_config");
    return guarded([&]() -> macbench_status {
        auto& v = *c->ptr;
        switch (field) {
            case MACBENCH_SIM_OFFERED_LOAD_G: v.offered_load_g = value; break;
            case MACBENCH_SIM_NORM_PROP_DELAY_A: v.norm_prop_delay_a = value; break;
            case MACBENCH_SIM_N_STATIONS: {
                const long long n = as_integer(value, "n_stations");
                if (n < 0 || n > std::numeric_limits<int>::max())
                    throw std::invalid_argument("n_stations out of range");
                v.n_stations = static_cast<int>(n);
                break;
            }
            case MACBENCH_SIM_PKT_LEN: v.pkt_len = value; break;
            case MACBENCH_SIM_RETRANS_WINDOW_K: v.retrans_window_k = value; break;
            case MACBENCH_SIM_RTS_CTS_ENABLED:
                if (value != 0.0 && value != 1.0)
                    throw std::invalid_argument("rts_cts_enabled must be 0 or 1");
                v.rts_cts_enabled = value != 0.0;
                break;
            case MACBENCH_SIM_BACKOFF_WINDOW_SLOTS: {
                const long long w = as_integer(value, "backoff_window_slots");
                if (w < 0 || w > std::numeric_limits<int>::max())
                    throw std::invalid_argument("backoff_window_slots out of range");
                v.backoff_window_slots = static_cast<int>(w);
                break;
            }
            case MACBENCH_SIM_BACKOFF_SLOT_TIME: v.backoff_slot_time = value; break;
            case MACBENCH_SIM_RTS_TIME: v.rts_time = value; break;
            case MACBENCH_SIM_CTS_TIME: v.cts_time = value; break;
            case MACBENCH_SIM_STOP_PACKETS: {
                const long long n = as_integer(value, "stop_packets");
                if (n < 0) throw std::invalid_argument("stop_packets must be >= 0");
                v.stop_packets = static_cast<uint64_t>(n);
                break;
            }
            case MACBENCH_SIM_WARMUP_FRACTION: v.warmup_fraction = value; break;
            case MACBENCH_SIM_MAX_SIM_TIME: v.max_sim_time = value; break;
            default:
                throw std::invalid_argument("unknown simulation config field");
        }
        return MACBENCH_OK;
    });
}

macbench_status macbench_sim_config_get(const macbench_sim_config* c,
                                        macbench_sim_field field, double* out) {
    if (c == nullptr) return fail_null("sim_config");
    if (out == nullptr) return fail_null("out");
    const auto& v = *c->ptr;
    switch (field) {
        case MACBENCH_SIM_OFFERED_LOAD_G: *out = v.offered_load_g; break;
        case MACBENCH_SIM_NORM_PROP_DELAY_A: *out = v.norm_prop_delay_a; break;
        case MACBENCH_SIM_N_STATIONS: *out = v.n_stations; break;
        case MACBENCH_SIM_PKT_LEN: *out = v.pkt_len; break;
        case MACBENCH_SIM_RETRANS_WINDOW_K: *out = v.retrans_window_k; break;
        case MACBENCH_SIM_RTS_CTS_ENABLED: *out = v.rts_cts_enabled ? 1.0 : 0.0; break;
        case MACBENCH_SIM_BACKOFF_WINDOW_SLOTS: *out = v.backoff_window_slots; break;
        case MACBENCH_SIM_BACKOFF_SLOT_TIME: *out = v.backoff_slot_time; break;
        case MACBENCH_SIM_RTS_TIME: *out = v.rts_time; break;
        case MACBENCH_SIM_CTS_TIME: *out = v.cts_time; break;
        case MACBENCH_SIM_STOP_PACKETS:
            *out = static_cast<double>(v.stop_packets);
            break;
        case MACBENCH_SIM_WARMUP_FRACTION: *out = v.warmup_fraction; break;
        case MACBENCH_SIM_MAX_SIM_TIME: *out = v.max_sim_time; break;
        default:
            return fail(MACBENCH_ERR_INVALID_ARGUMENT,
                        "unknown simulation config field");
    }
    return MACBENCH_OK;
}

macbench_status macbench_simulate(const macbench_sim_config* c, const char* trace_path,
                                  macbench_metrics** out) {
    if (c == nullptr) return fail_null("sim_config");
    if (out == nullptr) return fail_null("out");
    return guarded([&]() -> macbench_status {
        std::ofstream trace_file;
        std::ostream* trace = nullptr;
        if (trace_path != nullptr && trace_path[0] != '\0') {
            trace_file.open(trace_path);
            if (!trace_file)
                return fail(MACBENCH_ERR_IO, std::string("cannot open trace file \"") +
                                                 trace_path + "\" for writing");
            trace = &trace_file;
        }
        auto metrics = macbench::sim::simulate(*c->ptr, trace);
        if (trace != nullptr) {
            trace_file.flush();
            if (!trace_file)
                return fail(MACBENCH_ERR_IO, std::string("failed writing trace file \"") +
                                                 trace_path + "\"");
        }
        *out = new macbench_metrics{std::move(metrics)};
        return MACBENCH_OK;
    });
}

void macbench_metrics_destroy(macbench_metrics* m) { delete m; }

macbench_status macbench_metrics_get(const macbench_metrics* m,
                                     macbench_metric_field field, double* out) {
    if (m == nullptr) return fail_null("metrics");
    if (out == nullptr) return fail_null("out");
    const auto& v = m->v;
    switch (field) {
        case MACBENCH_METRIC_ATTEMPTED: *out = static_cast<double>(v.attempted); break;
        case MACBENCH_METRIC_SUCCEEDED: *out = static_cast<double>(v.succeeded); break;
        case MACBENCH_METRIC_COLLIDED: *out = static_cast<double>(v.collided); break;
        case MACBENCH_METRIC_RTS_COLLIDED:
            *out = static_cast<double>(v.rts_collided);
            break;
        case MACBENCH_METRIC_IN_FLIGHT_AT_STOP:
            *out = static_cast<double>(v.in_flight_at_stop);
            break;
        case MACBENCH_METRIC_SIM_DURATION: *out = v.sim_duration; break;
        case MACBENCH_METRIC_THROUGHPUT_S: *out = v.throughput_s; break;
        case MACBENCH_METRIC_REALIZED_G: *out = v.realized_g; break;
        case MACBENCH_METRIC_MEAN_DELAY: *out = v.mean_delay; break;
        case MACBENCH_METRIC_DELAY_STDDEV: *out = v.delay_stddev; break;
        case MACBENCH_METRIC_CI_LO: *out = v.ci_lo; break;
        case MACBENCH_METRIC_CI_HI: *out = v.ci_hi; break;
        case MACBENCH_METRIC_DELAY_SAMPLES:
            *out = static_cast<double>(v.delay_samples);
            break;
        case MACBENCH_METRIC_CHANNEL_BUSY_TIME: *out = v.channel_busy_time; break;
        case MACBENCH_METRIC_CHANNEL_SUCCESS_TIME:
            *out = v.channel_success_time;
            break;
        default:
            return fail(MACBENCH_ERR_INVALID_ARGUMENT, "unknown metric field");
    }
    return MACBENCH_OK;
}

const char* macbench_metrics_status(const macbench_metrics* m) {
    return m == nullptr ? nullptr : m->v.status.c_str();
}

const char* macbench_metrics_warning(const macbench_metrics* m) {
    return m == nullptr ? nullptr : m->v.warning.c_str();
}

char* macbench_metrics_csv(const macbench_metrics* m) {
    if (m == nullptr) {
        fail_null("metrics");
        return nullptr;
    }
    namespace fmt = macbench::fmt;
    const auto& v = m->v;
    std::string csv =
        "technique,g,attempted,succeeded,collided,throughput_s,mean_delay,"
        "ci_lo,ci_hi,seed\n";
    csv += macbench::technique_name(v.technique);
    csv += ',';
    csv += fmt::format_double(v.offered_load_g);
    csv += ',';
    csv += std::to_string(v.attempted);
    csv += ',';
    csv += std::to_string(v.succeeded);
    csv += ',';
    csv += std::to_string(v.collided);
    csv += ',';
    csv += fmt::format_double(v.throughput_s);
    csv += ',';
    csv += fmt::format_double(v.mean_delay);
    csv += ',';
    csv += fmt::format_double(v.ci_lo);
    csv += ',';
    csv += fmt::format_double(v.ci_hi);
    csv += ',';
    csv += std::to_string(v.seed);
    csv += '\n';
    return dup_string(csv);
}

// ---------------------------------------------------------------------
// Sweeps

macbench_sweep_spec* macbench_sweep_spec_create(void) {
    return new (std::nothrow) macbench_sweep_spec;
}

void macbench_sweep_spec_destroy(macbench_sweep_spec* s) { delete s; }

macbench_status macbench_sweep_spec_add_technique(macbench_sweep_spec* s,
                                                  macbench_technique t) {
    if (s == nullptr) return fail_null("sweep_spec");
    return guarded([&]() -> macbench_status {
        s->v.techniques.push_back(cpp_technique(t));
        return MACBENCH_OK;
    });
}

macbench_status macbench_sweep_spec_set_grid(macbench_sweep_spec* s, double lo,
                                             double hi, double step) {
    if (s == nullptr) return fail_null("sweep_spec");
    s->v.g_grid = macbench::analytic::GridRange{lo, hi, step};
    return MACBENCH_OK;
}

macbench_status macbench_sweep_spec_set_replications(macbench_sweep_spec* s,
                                                     int replications) {
    if (s == nullptr) return fail_null("sweep_spec");
    s->v.replications = replications;
    return MACBENCH_OK;
}

macbench_status macbench_sweep_spec_set_base_seed(macbench_sweep_spec* s,
                                                  uint64_t seed) {
    if (s == nullptr) return fail_null("sweep_spec");
    s->v.base_seed = seed;
    return MACBENCH_OK;
}

macbench_sim_config* macbench_sweep_spec_sim(macbench_sweep_spec* s) {
    if (s == nullptr) {
        fail_null("sweep_spec");
        return nullptr;
    }
    return &s->sim_view;
}

macbench_params* macbench_sweep_spec_params(macbench_sweep_spec* s) {
    if (s == nullptr) {
        fail_null("sweep_spec");
        return nullptr;
    }
    return &s->params_view;
}

macbench_status macbench_run_sweep(const macbench_sweep_spec* s,
                                   macbench_sweep_table** out) {
    if (s == nullptr) return fail_null("sweep_spec");
    if (out == nullptr) return fail_null("out");
    return guarded([&]() -> macbench_status {
        auto table = macbench::sweep::run_sweep(s->v);
        *out = new macbench_sweep_table{std::move(table)};
        return MACBENCH_OK;
    });
}

void macbench_sweep_table_destroy(macbench_sweep_table* t) { delete t; }

size_t macbench_sweep_table_rows(const macbench_sweep_table* t) {
    return t == nullptr ? 0 : t->v.rows.size();
}

macbench_status macbench_sweep_table_technique(const macbench_sweep_table* t,
                                               size_t row, macbench_technique* out) {
    if (t == nullptr) return fail_null("sweep_table");
    if (out == nullptr) return fail_null("out");
    if (row >= t->v.rows.size())
        return fail(MACBENCH_ERR_INVALID_ARGUMENT, "sweep row index out of range");
    *out = c_technique(t->v.rows[row].technique);
    return MACBENCH_OK;
}

macbench_status macbench_sweep_table_cell(const macbench_sweep_table* t, size_t row,
                                          macbench_sweep_column column, double* out) {
    if (t == nullptr) return fail_null("sweep_table");
    if (out == nullptr) return fail_null("out");
    if (row >= t->v.rows.size())
        return fail(MACBENCH_ERR_INVALID_ARGUMENT, "sweep row index out of range");
    const auto& r = t->v.rows[row];
    switch (column) {
        case MACBENCH_SWEEP_G: *out = r.g; break;
        case MACBENCH_SWEEP_S_ANALYTIC: *out = r.s_analytic; break;
        case MACBENCH_SWEEP_S_SIM_MEAN: *out = r.s_sim_mean; break;
        case MACBENCH_SWEEP_S_CI_LO: *out = r.s_sim_ci95_lo; break;
        case MACBENCH_SWEEP_S_CI_HI: *out = r.s_sim_ci95_hi; break;
        case MACBENCH_SWEEP_D_ANALYTIC: *out = r.d_analytic; break;
        case MACBENCH_SWEEP_D_SIM_MEAN: *out = r.d_sim_mean; break;
        case MACBENCH_SWEEP_D_CI_LO: *out = r.d_sim_ci95_lo; break;
        case MACBENCH_SWEEP_D_CI_HI: *out = r.d_sim_ci95_hi; break;
        case MACBENCH_SWEEP_N_REPLICATIONS: *out = r.n_replications; break;
        default:
            return fail(MACBENCH_ERR_INVALID_ARGUMENT, "unknown sweep column");
    }
    return MACBENCH_OK;
}

size_t macbench_sweep_table_diagnostics(const macbench_sweep_table* t) {
    return t == nullptr ? 0 : t->v.diagnostics.size();
}

const char* macbench_sweep_table_diagnostic(const macbench_sweep_table* t, size_t i) {
    if (t == nullptr || i >= t->v.diagnostics.size()) return nullptr;
    return t->v.diagnostics[i].c_str();
}

char* macbench_sweep_table_csv(const macbench_sweep_table* t) {
    if (t == nullptr) {
        fail_null("sweep_table");
        return nullptr;
    }
    return dup_string(macbench::sweep::to_csv(t->v));
}

macbench_status macbench_max_relative_error(const macbench_sweep_table* t, int column,
                                            double* value, size_t* row_index) {
    if (t == nullptr) return fail_null("sweep_table");
    if (value == nullptr) return fail_null("value");
    if (column != 0 && column != 1)
        return fail(MACBENCH_ERR_INVALID_ARGUMENT,
                    "column must be 0 (throughput) or 1 (delay)");
    return guarded([&]() -> macbench_status {
        const auto stat = macbench::sweep::max_relative_error(
            t->v, column == 0 ? macbench::sweep::ErrorColumn::throughput
                              : macbench::sweep::ErrorColumn::delay);
        *value = stat.value;
        if (row_index != nullptr) *row_index = stat.row_index;
        return MACBENCH_OK;
    });
}

macbench_status macbench_reproduce_conclusion(const macbench_sweep_spec* s, double g,
                                              macbench_ranking_report** out) {
    if (s == nullptr) return fail_null("sweep_spec");
    if (out == nullptr) return fail_null("out");
    return guarded([&]() -> macbench_status {
        auto report = macbench::sweep::reproduce_conclusion(s->v, g);
        *out = new macbench_ranking_report{std::move(report)};
        return MACBENCH_OK;
    });
}

void macbench_ranking_report_destroy(macbench_ranking_report* r) { delete r; }

size_t macbench_ranking_report_size(const macbench_ranking_report* r) {
    return r == nullptr ? 0 : r->v.by_throughput.size();
}

macbench_status macbench_ranking_report_entry(const macbench_ranking_report* r,
                                              int ordering, size_t i,
                                              macbench_technique* technique,
                                              double* value) {
    if (r == nullptr) return fail_null("ranking_report");
    if (ordering != 0 && ordering != 1)
        return fail(MACBENCH_ERR_INVALID_ARGUMENT,
                    "ordering must be 0 (throughput) or 1 (delay)");
    const auto& entries = ordering == 0 ? r->v.by_throughput : r->v.by_delay;
    if (i >= entries.size())
        return fail(MACBENCH_ERR_INVALID_ARGUMENT, "ranking index out of range");
    if (technique != nullptr) *technique = c_technique(entries[i].technique);
    if (value != nullptr)
        *value = ordering == 0 ? entries[i].throughput : entries[i].mean_delay;
    return MACBENCH_OK;
}

int macbench_ranking_report_tdma_first(const macbench_ranking_report* r, int which) {
    if (r == nullptr) {
        fail_null("ranking_report");
        return -1;
    }
    switch (which) {
        case 0: return r->v.tdma_first_throughput ? 1 : 0;
        case 1: return r->v.tdma_first_delay ? 1 : 0;
        case 2: return r->v.tdma_first_both ? 1 : 0;
        default:
            fail(MACBENCH_ERR_INVALID_ARGUMENT,
                 "which must be 0 (throughput), 1 (delay) or 2 (both)");
            return -1;
    }
}

char* macbench_ranking_report_text(const macbench_ranking_report* r) {
    if (r == nullptr) {
        fail_null("ranking_report");
        return nullptr;
    }
    return dup_string(macbench::sweep::to_report(r->v));
}

// ---------------------------------------------------------------------

uint64_t macbench_derive_seed(uint64_t base_seed, uint64_t technique,
                              uint64_t g_index, uint64_t replication) {
    return macbench::rng::derive_seed(base_seed, technique, g_index, replication);
}
