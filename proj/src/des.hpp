#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <ostream>
#include <queue>
#include <string>
#include <vector>

namespace macbench::des {

enum class EventKind { arrival, start_tx, end_tx, sense, timer, slot_boundary };

const char* event_kind_name(EventKind kind);

/// Discrete-event engine with a virtual clock.  Events fire in
/// (time, insertion sequence) order so simultaneous events run in the order
/// they were scheduled, which keeps runs reproducible.
class Engine {
public:
    using Handler = std::function<void()>;

    double now() const { return now_; }

    /// Schedule `fn` at absolute time `at`.  Scheduling strictly in the past
    /// is a logic error; `at == now()` is allowed and runs after the current
    /// handler returns.
    void schedule(double at, EventKind kind, int station, std::string detail,
                  Handler fn);

    void schedule(double at, EventKind kind, Handler fn) {
        schedule(at, kind, -1, std::string(), std::move(fn));
    }

    /// Run until the horizon, until `stop()` is called, or until the queue
    /// drains.  Returns true if stopped by request, false if the queue
    /// starved or the horizon was reached.
    bool run(double horizon);

    /// Request that run() return after the current handler finishes.
    void stop() { stop_requested_ = true; }

    bool stop_requested() const { return stop_requested_; }

    std::size_t events_dispatched() const { return dispatched_; }

    std::size_t queue_size() const { return queue_.size(); }

    /// Optional event trace: one line per dispatched event,
    /// "time<TAB>kind<TAB>station<TAB>detail".
    void set_trace(std::ostream* out) { trace_ = out; }

private:
    struct Event {
        double time;
        uint64_t seq;
        EventKind kind;
        int station;
        std::string detail;
        Handler fn;
    };
    struct Later {
        bool operator()(const Event& a, const Event& b) const {
            if (a.time != b.time) return a.time > b.time;
            return a.seq > b.seq;
        }
    };

    double now_ = 0.0;
    uint64_t next_seq_ = 0;
    std::size_t dispatched_ = 0;
    bool stop_requested_ = false;
    std::ostream* trace_ = nullptr;
    std::priority_queue<Event, std::vector<Event>, Later> queue_;
};

/// Shared-medium bookkeeping.  Transmissions occupy half-open intervals
/// [start, end): a transmission ending exactly when another starts does not
/// collide with it.  Any overlap marks every involved transmission collided.
class Channel {
public:
    struct Tx {
        int id;
        int station;
        double start;
        double end;
        bool collided;
        bool ended = false;
    };

    explicit Channel(double history_window = 0.0)
        : history_window_(history_window) {}

    /// Begin a transmission of `duration` at time `now`; returns its id.
    int begin_tx(double now, int station, double duration);

    /// Finish transmission `id` at its scheduled end time; returns whether it
    /// survived without collision.
    bool end_tx(int id, double now);

    /// Is any transmission occupying the medium at time `t`?  Uses the
    /// half-open convention: a transmission covers [start, end).
    bool busy_at(double t) const;

    /// Number of transmissions in flight at `t` (same convention).
    int active_count(double t) const;

    /// End time of the latest transmission overlapping or before `t`,
    /// or nullopt if the medium has been idle the whole retained history.
    std::optional<double> last_end_before(double t) const;

    double busy_time() const { return busy_time_; }
    double success_time() const { return success_time_; }
    uint64_t total_tx() const { return total_tx_; }
    uint64_t collided_tx() const { return collided_tx_; }

private:
    void purge(double now);

    double history_window_;
    int next_id_ = 0;
    std::deque<Tx> txs_;  // ordered by start time
    double busy_until_ = 0.0;
    double busy_time_ = 0.0;
    double success_time_ = 0.0;
    uint64_t total_tx_ = 0;
    uint64_t collided_tx_ = 0;
};

}  // namespace macbench::des
