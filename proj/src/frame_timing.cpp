#include "frame_timing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace macbench::timing {

void FrameTiming::validate() const {
    if (!(data_rate > 0)) throw std::invalid_argument("data_rate must be > 0");
    if (!(payload_bytes > 0)) throw std::invalid_argument("payload_bytes must be > 0");
    for (double bits : {n_overhead_bits, n_ack_bits, n_sync_bits, n_data_bits})
        if (!(bits >= 0)) throw std::invalid_argument("bit counts must be >= 0");
    for (double t : {guard_time, backoff_slots, backoff_slot_time, rts_time, cts_time,
                     idle_time, slot_boundary_wait, queue_time})
        if (!(t >= 0)) throw std::invalid_argument("time fields must be >= 0");
    if (turnaround_time && !(*turnaround_time >= 0))
        throw std::invalid_argument("turnaround_time must be >= 0");
    if (ifs_time && !(*ifs_time >= 0))
        throw std::invalid_argument("ifs_time must be >= 0");
}

namespace {

DelayBreakdown finish(std::vector<std::pair<std::string, double>> components) {
    DelayBreakdown b;
    b.components = std::move(components);
    for (const auto& [name, seconds] : b.components) b.total += seconds;
    return b;
}

// Turnaround defaults to data time plus ack time unless overridden.
double turnaround(const FrameTiming& ft) {
    if (ft.turnaround_time) return *ft.turnaround_time;
    return ft.data_time() + ft.ack_time();
}

}  // namespace

DelayBreakdown csmaca_frame_delay(const FrameTiming& ft) {
    ft.validate();
    const double t_data = ft.data_time();
    double t_ack = ft.ack_time();
    double t_ta = turnaround(ft);
    if (ft.n_ack_bits == 0) {
        // Unacknowledged mode: turnaround and ack vanish from the frame.
        t_ta = 0;
        t_ack = 0;
    }
    double t_ifs;
    if (ft.ifs_time) {
        t_ifs = *ft.ifs_time;
    } else {
        t_ifs = t_data - t_ack;
        if (t_ifs < 0)
            throw std::domain_error(
                "negative inter-frame space: data time is shorter than ack time");
    }
    return finish({{"backoff", ft.backoff_slots * ft.backoff_slot_time},
                   {"data", t_data},
                   {"turnaround", t_ta},
                   {"ack", t_ack},
                   {"ifs", t_ifs},
                   {"rts", ft.rts_time},
                   {"cts", ft.cts_time}});
}

DelayBreakdown tdma_frame_delay(const FrameTiming& ft) {
    ft.validate();
    return finish({{"overhead", ft.overhead_time()},
                   {"ack", ft.ack_time()},
                   {"guard", ft.guard_time},
                   {"sync", ft.sync_time()},
                   {"turnaround", turnaround(ft)}});
}

DelayBreakdown fdma_frame_delay(const FrameTiming& ft) {
    ft.validate();
    return finish({{"overhead", ft.overhead_time()},
                   {"ack", ft.ack_time()},
                   {"guard", ft.guard_time},
                   {"turnaround", turnaround(ft)},
                   {"data", ft.data_time()}});
}

DelayBreakdown aloha_frame_delay(const FrameTiming& ft) {
    ft.validate();
    return finish({{"data", ft.data_time()}, {"queue", ft.queue_time}});
}

DelayBreakdown saloha_frame_delay(const FrameTiming& ft) {
    ft.validate();
    return finish({{"ack", ft.ack_time()},
                   {"sync", ft.sync_time()},
                   {"turnaround", turnaround(ft)},
                   {"idle", ft.idle_time},
                   {"slot_wait", ft.slot_boundary_wait}});
}

DelayBreakdown frame_delay(Technique t, const FrameTiming& ft) {
    switch (t) {
        case Technique::pure_aloha: return aloha_frame_delay(ft);
        case Technique::slotted_aloha: return saloha_frame_delay(ft);
        case Technique::csma_1p:
        case Technique::csma_ca: return csmaca_frame_delay(ft);
        case Technique::tdma: return tdma_frame_delay(ft);
        case Technique::fdma: return fdma_frame_delay(ft);
    }
    throw std::logic_error("unhandled technique");
}

double throughput_from_delay(double payload_bytes, double total_delay) {
    if (!(payload_bytes > 0)) throw std::domain_error("payload_bytes must be > 0");
    if (!(total_delay > 0)) throw std::domain_error("delay must be > 0");
    return 8.0 * payload_bytes / total_delay;
}

std::vector<RankEntry> rank_techniques(const FrameTiming& ft) {
    ft.validate();
    constexpr Technique ranked[] = {Technique::csma_ca, Technique::fdma,
                                    Technique::pure_aloha, Technique::slotted_aloha,
                                    Technique::tdma};
    std::vector<RankEntry> entries;
    for (Technique t : ranked) {
        const double total = frame_delay(t, ft).total;
        // A zero-cost frame carries unbounded throughput; keeping it as
        // +inf makes the all-zero tie case compare equal across techniques.
        const double bps = total > 0 ? throughput_from_delay(ft.payload_bytes, total)
                                     : std::numeric_limits<double>::infinity();
        entries.push_back(RankEntry{t, total, bps});
    }
    std::sort(entries.begin(), entries.end(), [](const RankEntry& a, const RankEntry& b) {
        if (a.throughput_bps != b.throughput_bps)
            return a.throughput_bps > b.throughput_bps;
        return std::string_view(technique_name(a.technique)) <
               std::string_view(technique_name(b.technique));
    });
    return entries;
}

}  // namespace macbench::timing
