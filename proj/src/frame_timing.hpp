#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "technique.hpp"

namespace macbench::timing {

/// Per-technique frame component inputs. Bit counts are converted to seconds
/// through data_rate; the plain time fields are direct inputs in seconds.
struct FrameTiming {
    double data_rate = 250000.0;  ///< f_c, bits per second
    double n_overhead_bits = 0;
    double n_ack_bits = 0;
    double n_sync_bits = 0;
    double n_data_bits = 0;
    double guard_time = 0;
    /// Turnaround override in seconds; when absent the data+ack rule applies.
    std::optional<double> turnaround_time;
    /// Inter-frame-space override in seconds; when absent, data-ack applies.
    std::optional<double> ifs_time;
    double backoff_slots = 0;
    double backoff_slot_time = 0;
    double rts_time = 0;
    double cts_time = 0;
    double idle_time = 0;
    double slot_boundary_wait = 0;
    double queue_time = 0;
    double payload_bytes = 127.0;

    void validate() const;

    double data_time() const { return n_data_bits / data_rate; }
    double ack_time() const { return n_ack_bits / data_rate; }
    double sync_time() const { return n_sync_bits / data_rate; }
    double overhead_time() const { return n_overhead_bits / data_rate; }
};

/// A frame delay decomposition: named components in evaluation order plus
/// their sum. total always equals the component sum.
struct DelayBreakdown {
    std::vector<std::pair<std::string, double>> components;
    double total = 0;
};

DelayBreakdown csmaca_frame_delay(const FrameTiming& ft);
DelayBreakdown tdma_frame_delay(const FrameTiming& ft);
DelayBreakdown fdma_frame_delay(const FrameTiming& ft);
DelayBreakdown aloha_frame_delay(const FrameTiming& ft);
DelayBreakdown saloha_frame_delay(const FrameTiming& ft);

/// Dispatch by technique; csma_1p and csma_ca share the CSMA decomposition.
DelayBreakdown frame_delay(Technique t, const FrameTiming& ft);

/// Throughput in bits/second for a payload of the given size delivered in
/// total_delay seconds. Throws std::domain_error on non-positive delay.
double throughput_from_delay(double payload_bytes, double total_delay);

struct RankEntry {
    Technique technique;
    double total_delay_s;
    double throughput_bps;  ///< +infinity when the decomposition total is zero
};

/// Evaluates all five decompositions on one FrameTiming and orders them by
/// descending throughput, ties broken alphabetically by technique name.
std::vector<RankEntry> rank_techniques(const FrameTiming& ft);

}  // namespace macbench::timing
