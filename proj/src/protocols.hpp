#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "technique.hpp"

namespace macbench::sim {

/// One simulation run. Times are dimensionless, in units of one
/// packet transmission time at the full channel rate.
struct SimConfig {
    Technique technique = Technique::pure_aloha;
    double offered_load_g = 0.5;     ///< target attempt rate G (per packet-time)
    double norm_prop_delay_a = 0.01; ///< sensing staleness a (CSMA family)
    /// Station count. 0 picks the technique default: infinite population for
    /// the random-access techniques, 10 for tdma/fdma. pure/slotted ALOHA and
    /// csma_1p always use the infinite-population model and ignore this.
    int n_stations = 0;
    double pkt_len = 1.0;            ///< packet transmission time
    /// Collided packets reschedule uniformly in (0, K] packet-times after the
    /// collision is learned. Kept deliberately wide by default so that the
    /// aggregate attempt process stays close to Poisson.
    double retrans_window_k = 20.0;
    bool rts_cts_enabled = true;     ///< csma_ca: reserve with RTS/CTS frames
    int backoff_window_slots = 16;   ///< csma_ca: uniform [1, W] slots
    double backoff_slot_time = 0.1;  ///< csma_ca: one backoff slot
    double rts_time = 0.05;          ///< csma_ca: RTS frame time
    double cts_time = 0.05;          ///< csma_ca: CTS frame time
    uint64_t stop_packets = 100000;  ///< completed transmission outcomes to run
    uint64_t seed = 42;
    double warmup_fraction = 0.1;    ///< leading share of outcomes discarded
    double max_sim_time = 0;         ///< virtual-time cap; 0 = unbounded

    /// Throws std::invalid_argument for out-of-domain fields.
    void validate() const;

    /// n_stations with the technique default applied (0 = infinite).
    int resolved_stations() const;
};

struct Metrics {
    Technique technique = Technique::pure_aloha;
    double offered_load_g = 0;
    uint64_t seed = 0;

    uint64_t attempted = 0;   ///< transmission cycles begun
    uint64_t succeeded = 0;   ///< cycles that delivered their packet
    uint64_t collided = 0;    ///< cycles destroyed by overlap
    uint64_t rts_collided = 0;        ///< csma_ca: failures confined to RTS/CTS frames
    uint64_t in_flight_at_stop = 0;   ///< begun but unresolved when the run stopped

    double sim_duration = 0;          ///< total virtual time
    double throughput_s = 0;          ///< delivered payload time / post-warm-up window
    double realized_g = 0;            ///< attempts per packet-time, post-warm-up
    double mean_delay = 0;            ///< arrival -> successful completion
    double delay_stddev = 0;
    double ci_lo = 0, ci_hi = 0;      ///< 95% bounds on mean_delay
    uint64_t delay_samples = 0;

    double channel_busy_time = 0;     ///< union of all transmission intervals
    double channel_success_time = 0;  ///< union restricted to clean transmissions

    std::string status = "ok";        ///< "ok" or "starved"
    std::string warning;              ///< set for statistically weak configs
};

/// Runs one simulation. Identical (config, seed) gives identical Metrics and
/// an identical trace on every platform. `trace` (optional) receives one
/// line per event: time<TAB>kind<TAB>station<TAB>detail.
Metrics simulate(const SimConfig& cfg, std::ostream* trace = nullptr);

}  // namespace macbench::sim
