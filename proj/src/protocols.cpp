#include "protocols.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "des.hpp"
#include "rng.hpp"

namespace macbench::sim {

void SimConfig::validate() const {
    if (!(offered_load_g > 0)) throw std::invalid_argument("offered_load_g must be > 0");
    if (!(norm_prop_delay_a >= 0))
        throw std::invalid_argument("norm_prop_delay_a must be >= 0");
    if (n_stations < 0) throw std::invalid_argument("n_stations must be >= 0");
    if (!(pkt_len > 0)) throw std::invalid_argument("pkt_len must be > 0");
    if (!(retrans_window_k >= 1))
        throw std::invalid_argument("retrans_window_k must be >= 1");
    if (!(warmup_fraction >= 0 && warmup_fraction < 1))
        throw std::invalid_argument("warmup_fraction must lie in [0,1)");
    if (!(max_sim_time >= 0)) throw std::invalid_argument("max_sim_time must be >= 0");
    if (technique == Technique::csma_ca) {
        if (backoff_window_slots < 1)
            throw std::invalid_argument("backoff_window_slots must be >= 1");
        if (!(backoff_slot_time > 0))
            throw std::invalid_argument("backoff_slot_time must be > 0");
        if (rts_cts_enabled && !(rts_time > 0 && cts_time > 0))
            throw std::invalid_argument("rts_time and cts_time must be > 0");
    }
}

int SimConfig::resolved_stations() const {
    if (n_stations > 0) return n_stations;
    switch (technique) {
        case Technique::tdma:
        case Technique::fdma:
            return 10;
        default:
            return 0;  // infinite population
    }
}

namespace {

using des::Channel;
using des::Engine;
using des::EventKind;
using rng::RandomStream;

// Welford running mean/variance for delay samples.
struct DelayStats {
    uint64_t n = 0;
    double mean = 0, m2 = 0;
    void add(double x) {
        ++n;
        const double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }
    double stddev() const {
        return n > 1 ? std::sqrt(m2 / static_cast<double>(n - 1)) : 0.0;
    }
};

struct Packet {
    uint64_t id;
    double arrival;
};

int sid(const Packet& p) { return static_cast<int>(p.id % 1000000000ull); }

// Shared run scaffolding: outcome counting, warm-up boundary, stop rule and
// metric assembly. Subclasses provide the technique state machine.
class RunCore {
public:
    RunCore(const SimConfig& cfg, std::ostream* trace)
        : cfg(cfg),
          warmup_target(static_cast<uint64_t>(cfg.warmup_fraction *
                                              static_cast<double>(cfg.stop_packets))),
          in_warmup(warmup_target > 0) {
        engine.set_trace(trace);
    }
    virtual ~RunCore() = default;

    Metrics run() {
        Metrics m;
        m.technique = cfg.technique;
        m.offered_load_g = cfg.offered_load_g;
        m.seed = cfg.seed;
        if (cfg.stop_packets < 1000)
            m.warning = "stop_packets below 1000; statistics are unreliable";
        if (cfg.stop_packets == 0) return m;  // zero-duration run

        start();
        const double horizon = cfg.max_sim_time > 0 ? cfg.max_sim_time : 1e300;
        const bool stopped = engine.run(horizon);
        m.status = stopped ? "ok" : (engine.queue_size() == 0 ? "starved" : "horizon");

        m.attempted = attempted;
        m.succeeded = succeeded;
        m.collided = collided;
        m.rts_collided = rts_collided;
        m.in_flight_at_stop = attempted - succeeded - collided;
        m.sim_duration = engine.now();
        const double window = !in_warmup ? engine.now() - warmup_time : 0.0;
        if (window > 0) {
            m.throughput_s = payload_w / window;
            m.realized_g = static_cast<double>(attempts_w) / window;
        }
        m.mean_delay = delays.n ? delays.mean : 0.0;
        m.delay_stddev = delays.stddev();
        m.delay_samples = delays.n;
        if (delays.n > 0) {
            const double half =
                1.96 * m.delay_stddev / std::sqrt(static_cast<double>(delays.n));
            m.ci_lo = m.mean_delay - half;
            m.ci_hi = m.mean_delay + half;
        }
        fill_channel(m);
        return m;
    }

protected:
    virtual void start() = 0;
    virtual void fill_channel(Metrics& m) const = 0;

    void note_attempt() {
        ++attempted;
        if (!in_warmup) ++attempts_w;
    }

    void note_success(double arrival_time) {
        const double now = engine.now();
        ++succeeded;
        if (!in_warmup) {
            delays.add(now - arrival_time);
            payload_w += cfg.pkt_len;
        }
        note_outcome(now);
    }

    void note_collision() {
        ++collided;
        note_outcome(engine.now());
    }

    const SimConfig cfg;
    Engine engine;

    uint64_t attempted = 0, succeeded = 0, collided = 0, rts_collided = 0;
    uint64_t attempts_w = 0;
    double payload_w = 0;
    DelayStats delays;

private:
    void note_outcome(double now) {
        ++outcomes;
        if (in_warmup && outcomes >= warmup_target) {
            in_warmup = false;
            warmup_time = now;
        }
        if (outcomes >= cfg.stop_packets) engine.stop();
    }

    uint64_t outcomes = 0;
    const uint64_t warmup_target;
    bool in_warmup;
    double warmup_time = 0;
};

// Random-access techniques share the channel, the traffic source and the
// collision-rescheduling machinery.
//
// The source keeps the TOTAL attempt rate (new plus retransmitted packets) at
// offered_load_g — the attempt-rate interpretation under which the classical
// throughput formulas are exact. Attempt epochs form a Poisson process of
// rate G; each epoch is claimed by the longest-waiting retransmission that
// has finished its (0, K] backoff, and spawns a fresh packet only when no
// retransmission is due. New-packet generation therefore self-throttles to
// G minus the instantaneous retransmission rate, and the aggregate attempt
// process stays exactly Poisson(G) no matter how the backlog fluctuates.
class ContentionRun : public RunCore {
public:
    // Abstract (subclasses fill in attempt/resolution policy); the
    // constructor stays public so subclasses can simply inherit it.
    ContentionRun(const SimConfig& cfg, std::ostream* trace)
        : RunCore(cfg, trace),
          channel(cfg.norm_prop_delay_a + cfg.pkt_len),
          arrivals(cfg.seed, 0),
          retx_rng(cfg.seed, 1),
          backoff_rng(cfg.seed, 2) {}

    void fill_channel(Metrics& m) const override {
        m.channel_busy_time = channel.busy_time();
        m.channel_success_time = channel.success_time();
    }

    void schedule_next_epoch() {
        const double dt = arrivals.exponential(cfg.offered_load_g);
        engine.schedule(engine.now() + dt, EventKind::arrival, -1, "epoch", [this] {
            on_epoch();
            schedule_next_epoch();
        });
    }

    void on_epoch() {
        const double now = engine.now();
        if (!pending_retx.empty() && pending_retx.begin()->first <= now) {
            const Packet p = pending_retx.begin()->second;
            pending_retx.erase(pending_retx.begin());
            on_attempt(p, true);
        } else {
            on_attempt(Packet{next_packet_id++, now}, false);
        }
    }

    /// One channel-access attempt; is_retx distinguishes a reclaimed collided
    /// packet from a fresh arrival.
    virtual void on_attempt(const Packet& p, bool is_retx) = 0;

    /// A collided packet re-enters the attempt stream once its uniform (0, K]
    /// rescheduling wait has passed, at the next free attempt epoch.
    void requeue_collided(const Packet& p) {
        const double ready =
            engine.now() + retx_rng.uniform_pos(cfg.retrans_window_k);
        pending_retx.emplace(ready, p);
    }

    /// Schedules a whole-packet transmission starting at `at`; resolve_data
    /// fires at its end. Used by the techniques without reservation frames.
    void schedule_data_tx(const Packet& p, double at, const char* what) {
        engine.schedule(at, EventKind::start_tx, sid(p), what, [this, p] {
            note_attempt();
            const int tx = channel.begin_tx(engine.now(), sid(p), cfg.pkt_len);
            engine.schedule(engine.now() + cfg.pkt_len, EventKind::end_tx, sid(p),
                            "data", [this, p, tx] { resolve_data(p, tx); });
        });
    }

    virtual void resolve_data(const Packet&, int) {}

    Channel channel;
    RandomStream arrivals, retx_rng, backoff_rng;

private:
    std::multimap<double, Packet> pending_retx;  ///< ready-time -> packet
    uint64_t next_packet_id = 0;
};

// Pure ALOHA: transmit the instant the attempt epoch fires; collided packets
// wait uniformly within (0, K] before rejoining the attempt stream.
class PureAlohaRun : public ContentionRun {
public:
    using ContentionRun::ContentionRun;

private:
    void start() override { schedule_next_epoch(); }

    void on_attempt(const Packet& p, bool is_retx) override {
        schedule_data_tx(p, engine.now(), is_retx ? "retx" : "data");
    }

    void resolve_data(const Packet& p, int tx) override {
        if (channel.end_tx(tx, engine.now())) {
            note_success(p.arrival);
            return;
        }
        requeue_collided(p);
        note_collision();
    }
};

// Slotted ALOHA: transmissions start only on slot boundaries (slot = one
// packet time), so collisions are total overlaps.
class SlottedAlohaRun : public ContentionRun {
public:
    using ContentionRun::ContentionRun;

private:
    double next_boundary(double t) const {
        return std::ceil(t / cfg.pkt_len) * cfg.pkt_len;
    }

    void start() override { schedule_next_epoch(); }

    void on_attempt(const Packet& p, bool is_retx) override {
        schedule_data_tx(p, next_boundary(engine.now()), is_retx ? "retx" : "data");
    }

    void resolve_data(const Packet& p, int tx) override {
        if (channel.end_tx(tx, engine.now())) {
            note_success(p.arrival);
            return;
        }
        requeue_collided(p);
        note_collision();
    }
};

// 1-persistent CSMA. A station senses the channel state as of time t - a
// (propagation staleness). Busy arrivals persist: they are all released
// together one staleness window after the channel is heard to go idle, which
// reproduces the classical pile-up collisions.
class Csma1pRun : public ContentionRun {
public:
    using ContentionRun::ContentionRun;

private:
    void start() override { schedule_next_epoch(); }

    void on_attempt(const Packet& p, bool) override { sense(p); }

    void sense(const Packet& p) {
        const double t = engine.now();
        if (channel.busy_at(t - cfg.norm_prop_delay_a)) {
            waiting.push_back(p);
        } else {
            schedule_data_tx(p, t, "data");
        }
    }

    void resolve_data(const Packet& p, int tx) override {
        const bool ok = channel.end_tx(tx, engine.now());
        // The channel just went quiet: if nothing else is in flight, stations
        // hear the idle transition one staleness window later and the whole
        // waiting batch fires at once (the classical 1-persistent pile-up).
        if (channel.active_count(engine.now()) == 0) {
            engine.schedule(engine.now() + cfg.norm_prop_delay_a, EventKind::timer, -1,
                            "idle_release", [this] { release_waiters(); });
        }
        if (ok) {
            note_success(p.arrival);
            return;
        }
        requeue_collided(p);
        note_collision();
    }

    void release_waiters() {
        if (waiting.empty()) return;
        std::vector<Packet> batch;
        batch.swap(waiting);
        for (const Packet& p : batch) schedule_data_tx(p, engine.now(), "release");
    }

    std::vector<Packet> waiting;
};

// CSMA/CA: sense -> idle ? (RTS -> CTS -> data) : backoff-and-resense.
// Collisions on the short reservation frames abort the cycle cheaply; the
// data frame follows only once the exchange went through. Acknowledgements
// are abstract (zero length) in the normalized model.
class CsmaCaRun : public ContentionRun {
public:
    CsmaCaRun(const SimConfig& cfg, std::ostream* trace)
        : ContentionRun(cfg, trace), n(cfg.resolved_stations()) {
        if (n > 0) {
            stations.resize(static_cast<std::size_t>(n));
            station_arrivals.reserve(static_cast<std::size_t>(n));
            for (int s = 0; s < n; ++s)
                station_arrivals.emplace_back(cfg.seed, static_cast<uint64_t>(s));
            finite_backoff.emplace(cfg.seed, static_cast<uint64_t>(n));
        }
    }

private:
    struct Station {
        std::deque<double> queue;
        bool active = false;
    };

    void start() override {
        if (n == 0) {
            schedule_next_epoch();
        } else {
            for (int s = 0; s < n; ++s) schedule_station_arrival(s);
        }
    }

    // --- infinite-population entry point -----------------------------------
    void on_attempt(const Packet& p, bool) override { sense(p, -1); }

    // --- finite-station mode: per-station FIFO queues, open-loop sources ----
    void schedule_station_arrival(int s) {
        const double rate = cfg.offered_load_g / static_cast<double>(n);
        const double dt = station_arrivals[static_cast<std::size_t>(s)].exponential(rate);
        engine.schedule(engine.now() + dt, EventKind::arrival, s, "new", [this, s] {
            Station& st = stations[static_cast<std::size_t>(s)];
            st.queue.push_back(engine.now());
            if (!st.active) {
                st.active = true;
                sense(Packet{next_finite_id++, st.queue.front()}, s);
            }
            schedule_station_arrival(s);
        });
    }

    RandomStream& backoff_stream() {
        return n > 0 ? *finite_backoff : backoff_rng;
    }

    int owner(const Packet& p, int station) const {
        return station >= 0 ? station : sid(p);
    }

    void sense(const Packet& p, int station) {
        const double t = engine.now();
        if (channel.busy_at(t - cfg.norm_prop_delay_a)) {
            backoff(p, station, "busy_backoff");
        } else {
            start_cycle(p, station);
        }
    }

    void backoff(const Packet& p, int station, const char* why) {
        const uint32_t slots = backoff_stream().uniform_int(
            1, static_cast<uint32_t>(cfg.backoff_window_slots));
        const double at = engine.now() + slots * cfg.backoff_slot_time;
        engine.schedule(at, EventKind::sense, owner(p, station), why,
                        [this, p, station] { sense(p, station); });
    }

    void start_cycle(const Packet& p, int station) {
        note_attempt();
        if (cfg.rts_cts_enabled) {
            send_frame(p, station, cfg.rts_time, "rts");
        } else {
            send_frame(p, station, cfg.pkt_len, "data");
        }
    }

    void send_frame(const Packet& p, int station, double duration, const char* kind) {
        engine.schedule(engine.now(), EventKind::start_tx, owner(p, station), kind,
                        [this, p, station, duration, kind] {
                            const int tx = channel.begin_tx(engine.now(),
                                                            owner(p, station), duration);
                            engine.schedule(engine.now() + duration, EventKind::end_tx,
                                            owner(p, station), kind,
                                            [this, p, station, tx, kind] {
                                                resolve_frame(p, station, tx, kind);
                                            });
                        });
    }

    void resolve_frame(const Packet& p, int station, int tx, const char* kind) {
        const bool ok = channel.end_tx(tx, engine.now());
        const bool control = kind[0] != 'd';
        if (!ok) {
            if (control) ++rts_collided;
            // Infinite-population packets rejoin the shared attempt stream;
            // finite stations retry on their own backoff clock.
            if (station < 0) {
                requeue_collided(p);
            } else {
                backoff(p, station, "retx_backoff");
            }
            note_collision();
            return;
        }
        if (kind[0] == 'r') {  // RTS went through; the receiver answers CTS.
            send_frame(p, station, cfg.cts_time, "cts");
        } else if (kind[0] == 'c') {  // CTS received; medium is reserved.
            send_frame(p, station, cfg.pkt_len, "data");
        } else {
            complete(p, station);
        }
    }

    void complete(const Packet& p, int station) {
        note_success(p.arrival);
        if (station < 0) return;
        Station& st = stations[static_cast<std::size_t>(station)];
        st.queue.pop_front();
        if (st.queue.empty()) {
            st.active = false;
        } else {
            const Packet next{next_finite_id++, st.queue.front()};
            engine.schedule(engine.now(), EventKind::sense, station, "next",
                            [this, next, station] { sense(next, station); });
        }
    }

    const int n;
    std::vector<Station> stations;
    std::vector<RandomStream> station_arrivals;
    std::optional<RandomStream> finite_backoff;
    uint64_t next_finite_id = 1ull << 40;
};

// TDMA: a frame of N equal slots, one per station; a station transmits the
// head of its queue only at its own slot boundary. Collision-free by
// construction.
class TdmaRun : public RunCore {
public:
    TdmaRun(const SimConfig& cfg, std::ostream* trace)
        : RunCore(cfg, trace), n(cfg.resolved_stations()), slot(cfg.pkt_len) {
        queues.resize(static_cast<std::size_t>(n));
        streams.reserve(static_cast<std::size_t>(n));
        for (int s = 0; s < n; ++s)
            streams.emplace_back(cfg.seed, static_cast<uint64_t>(s));
    }

private:
    void start() override {
        for (int s = 0; s < n; ++s) schedule_arrival(s);
        engine.schedule(0.0, EventKind::slot_boundary, 0, "slot",
                        [this] { on_slot(0); });
    }

    void schedule_arrival(int s) {
        const double rate = cfg.offered_load_g / static_cast<double>(n);
        const double dt = streams[static_cast<std::size_t>(s)].exponential(rate);
        engine.schedule(engine.now() + dt, EventKind::arrival, s, "pkt", [this, s] {
            queues[static_cast<std::size_t>(s)].push_back(engine.now());
            schedule_arrival(s);
        });
    }

    void on_slot(uint64_t k) {
        const int owner = static_cast<int>(k % static_cast<uint64_t>(n));
        auto& q = queues[static_cast<std::size_t>(owner)];
        if (!q.empty()) {
            const double arrival = q.front();
            q.pop_front();
            note_attempt();
            engine.schedule(engine.now(), EventKind::start_tx, owner, "data", [] {});
            engine.schedule(engine.now() + slot, EventKind::end_tx, owner, "data",
                            [this, arrival] { note_success(arrival); });
        }
        engine.schedule(engine.now() + slot, EventKind::slot_boundary,
                        static_cast<int>((k + 1) % static_cast<uint64_t>(n)), "slot",
                        [this, k] { on_slot(k + 1); });
    }

    void fill_channel(Metrics& m) const override {
        m.channel_busy_time = static_cast<double>(succeeded) * cfg.pkt_len;
        m.channel_success_time = m.channel_busy_time;
    }

    const int n;
    const double slot;
    std::vector<std::deque<double>> queues;
    std::vector<RandomStream> streams;
};

// FDMA: N dedicated sub-channels at 1/N rate each, so one packet occupies its
// sub-channel for N packet-times; per-station FIFO queues; collision-free.
class FdmaRun : public RunCore {
public:
    FdmaRun(const SimConfig& cfg, std::ostream* trace)
        : RunCore(cfg, trace),
          n(cfg.resolved_stations()),
          service(static_cast<double>(cfg.resolved_stations()) * cfg.pkt_len) {
        subs.resize(static_cast<std::size_t>(n));
        streams.reserve(static_cast<std::size_t>(n));
        for (int s = 0; s < n; ++s)
            streams.emplace_back(cfg.seed, static_cast<uint64_t>(s));
    }

private:
    struct Sub {
        std::deque<double> queue;
        bool busy = false;
    };

    void start() override {
        for (int s = 0; s < n; ++s) schedule_arrival(s);
    }

    void schedule_arrival(int s) {
        const double rate = cfg.offered_load_g / static_cast<double>(n);
        const double dt = streams[static_cast<std::size_t>(s)].exponential(rate);
        engine.schedule(engine.now() + dt, EventKind::arrival, s, "pkt", [this, s] {
            Sub& sub = subs[static_cast<std::size_t>(s)];
            sub.queue.push_back(engine.now());
            if (!sub.busy) begin_service(s);
            schedule_arrival(s);
        });
    }

    void begin_service(int s) {
        Sub& sub = subs[static_cast<std::size_t>(s)];
        sub.busy = true;
        const double arrival = sub.queue.front();
        note_attempt();
        engine.schedule(engine.now(), EventKind::start_tx, s, "data", [] {});
        engine.schedule(engine.now() + service, EventKind::end_tx, s, "data",
                        [this, s, arrival] {
                            Sub& sub2 = subs[static_cast<std::size_t>(s)];
                            sub2.queue.pop_front();
                            note_success(arrival);
                            if (sub2.queue.empty()) {
                                sub2.busy = false;
                            } else {
                                begin_service(s);
                            }
                        });
    }

    void fill_channel(Metrics& m) const override {
        m.channel_busy_time = static_cast<double>(succeeded) * cfg.pkt_len;
        m.channel_success_time = m.channel_busy_time;
    }

    const int n;
    const double service;
    std::vector<Sub> subs;
    std::vector<RandomStream> streams;
};

}  // namespace

Metrics simulate(const SimConfig& cfg, std::ostream* trace) {
    cfg.validate();
    switch (cfg.technique) {
        case Technique::pure_aloha: return PureAlohaRun(cfg, trace).run();
        case Technique::slotted_aloha: return SlottedAlohaRun(cfg, trace).run();
        case Technique::csma_1p: return Csma1pRun(cfg, trace).run();
        case Technique::csma_ca: return CsmaCaRun(cfg, trace).run();
        case Technique::tdma: return TdmaRun(cfg, trace).run();
        case Technique::fdma: return FdmaRun(cfg, trace).run();
    }
    throw std::logic_error("unhandled technique");
}

}  // namespace macbench::sim
