#include "des.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <utility>

namespace macbench::des {

const char* event_kind_name(EventKind kind) {
    switch (kind) {
        case EventKind::arrival: return "arrival";
        case EventKind::start_tx: return "start_tx";
        case EventKind::end_tx: return "end_tx";
        case EventKind::sense: return "sense";
        case EventKind::timer: return "timer";
        case EventKind::slot_boundary: return "slot_boundary";
    }
    return "unknown";
}

void Engine::schedule(double at, EventKind kind, int station, std::string detail,
                      Handler fn) {
    if (at < now_) throw std::logic_error("event scheduled in the past");
    queue_.push(Event{at, next_seq_++, kind, station, std::move(detail), std::move(fn)});
}

bool Engine::run(double horizon) {
    while (!queue_.empty()) {
        if (queue_.top().time > horizon) {
            now_ = horizon;
            return false;
        }
        // priority_queue::top() is const; move out via const_cast before pop,
        // which is safe because the element is removed immediately after.
        Event ev = std::move(const_cast<Event&>(queue_.top()));
        queue_.pop();
        now_ = ev.time;
        ++dispatched_;
        if (trace_) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.9g", ev.time);
            *trace_ << buf << '\t' << event_kind_name(ev.kind) << '\t' << ev.station
                    << '\t' << ev.detail << '\n';
        }
        ev.fn();
        if (stop_requested_) return true;
    }
    return false;  // starved
}

int Channel::begin_tx(double now, int station, double duration) {
    purge(now);
    const double end = now + duration;
    Tx tx{next_id_++, station, now, end, false};
    for (Tx& other : txs_) {
        // Existing transmissions started at or before `now`; they overlap the
        // new one exactly when they are still in flight (half-open intervals).
        if (other.end > now) {
            other.collided = true;
            tx.collided = true;
        }
    }
    // Busy-time union: everything before busy_until_ is already counted.
    const double covered_from = std::max(now, busy_until_);
    if (end > covered_from) busy_time_ += end - covered_from;
    busy_until_ = std::max(busy_until_, end);
    txs_.push_back(std::move(tx));
    return txs_.back().id;
}

bool Channel::end_tx(int id, double now) {
    for (Tx& tx : txs_) {
        if (tx.id != id) continue;
        if (tx.ended) throw std::logic_error("transmission ended twice");
        tx.ended = true;
        ++total_tx_;
        if (tx.collided) {
            ++collided_tx_;
        } else {
            success_time_ += tx.end - tx.start;
        }
        const bool ok = !tx.collided;
        purge(now);
        return ok;
    }
    throw std::logic_error("unknown transmission id");
}

bool Channel::busy_at(double t) const { return active_count(t) > 0; }

int Channel::active_count(double t) const {
    int n = 0;
    for (const Tx& tx : txs_) {
        if (tx.start <= t && t < tx.end) ++n;
    }
    return n;
}

std::optional<double> Channel::last_end_before(double t) const {
    std::optional<double> latest;
    for (const Tx& tx : txs_) {
        if (tx.start > t) continue;
        if (!latest || tx.end > *latest) latest = tx.end;
    }
    return latest;
}

void Channel::purge(double now) {
    const double keep_after = now - history_window_;
    while (!txs_.empty() && txs_.front().ended && txs_.front().end <= keep_after) {
        txs_.pop_front();
    }
}

}  // namespace macbench::des
