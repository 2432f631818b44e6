#include "analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace macbench::analytic {

void AnalyticParams::validate() const {
    if (n_nodes < 1) throw std::invalid_argument("n_nodes must be >= 1");
    if (!(pkt_len > 0)) throw std::invalid_argument("pkt_len must be > 0");
    if (!(cycle_len > 0)) throw std::invalid_argument("cycle_len must be > 0");
    if (!(queue_occ >= 0 && queue_occ < 1))
        throw std::invalid_argument("queue_occ must lie in [0,1)");
    if (!(norm_prop_delay >= 0))
        throw std::invalid_argument("norm_prop_delay must be >= 0");
    if (!(retrans_window >= 1))
        throw std::invalid_argument("retrans_window must be >= 1");
}

double aloha_throughput(double g) {
    if (!(g >= 0)) throw std::domain_error("offered load must be >= 0");
    return g * std::exp(-2.0 * g);
}

double slotted_aloha_throughput(double g) {
    if (!(g >= 0)) throw std::domain_error("offered load must be >= 0");
    return g * std::exp(-g);
}

namespace {

// Shared kernel of the 1-persistent CSMA throughput curve; the delay-vs-load
// relation reuses it with the packet count in the second slot.
double csma_kernel(double g, double a) {
    if (g == 0) return 0.0;  // limit of the expression
    const double num =
        g * (1.0 + g + a * g * (1.0 + g + a * g / 2.0)) * std::exp(-g * (1.0 + 2.0 * a));
    const double den = g * (1.0 + 2.0 * a) - (1.0 - std::exp(-a * g)) +
                       (1.0 + a * g) * std::exp(-g * (1.0 + a));
    return num / den;
}

// Retransmission-cycle delay template shared by the random-access relations:
// growth(e^x - 1) scaled by the backoff-and-turnaround factor, plus the
// zero-load constant.
double retrans_delay(double growth, double zero_load, const AnalyticParams& p) {
    const double k = p.retrans_window;
    const double a = p.norm_prop_delay;
    return growth * ((k - 1.0) / 2.0 + 2.0 * a + 1.0) + zero_load;
}

double saturating_load_check(double load) {
    if (!(load >= 0)) throw std::domain_error("load must be >= 0");
    if (load >= 1.0) throw std::domain_error("saturated queue");
    return load;
}

}  // namespace

double csma_throughput(double g, double a) {
    if (!(g >= 0)) throw std::domain_error("offered load must be >= 0");
    if (!(a >= 0)) throw std::domain_error("propagation ratio must be >= 0");
    return csma_kernel(g, a);
}

double csma_delay_vs_load(double g, double pkt_len) {
    if (!(g >= 0)) throw std::domain_error("offered load must be >= 0");
    if (!(pkt_len >= 0)) throw std::domain_error("pkt_len must be >= 0");
    return csma_kernel(g, pkt_len);
}

double aloha_delay_vs_throughput(double s, const AnalyticParams& p) {
    if (!(s >= 0 && s <= 1)) throw std::domain_error("throughput must lie in [0,1]");
    return retrans_delay(std::expm1(2.0 * s), 1.0 + p.norm_prop_delay, p);
}

double aloha_delay_vs_load(double g, const AnalyticParams& p) {
    if (!(g >= 0)) throw std::domain_error("offered load must be >= 0");
    return retrans_delay(std::expm1(g), 1.0 + p.norm_prop_delay, p);
}

double saloha_delay_vs_throughput(double s, const AnalyticParams& p) {
    if (!(s >= 0 && s <= 1)) throw std::domain_error("throughput must lie in [0,1]");
    return retrans_delay(std::expm1(s), 1.5 + p.norm_prop_delay, p);
}

double saloha_delay_vs_load(double g, const AnalyticParams& p) {
    if (!(g >= 0)) throw std::domain_error("offered load must be >= 0");
    return retrans_delay(std::expm1(g), 1.5 + p.norm_prop_delay, p);
}

double csma_delay_vs_throughput(double t, const AnalyticParams& p) {
    if (!(t >= 0 && t <= 1)) throw std::domain_error("throughput must lie in [0,1]");
    return retrans_delay(std::expm1(2.0 * t), 1.0 + p.norm_prop_delay, p);
}

double tdma_delay(double load_term, const AnalyticParams& p, RateParam rate) {
    saturating_load_check(load_term);
    const double r = rate == RateParam::cycle_len ? p.cycle_len : p.norm_prop_delay;
    if (!(r > 0)) throw std::domain_error("rate parameter must be > 0");
    const double n = static_cast<double>(p.n_nodes);
    const double l = p.pkt_len;
    return l / r + load_term / (2.0 * (1.0 - load_term)) * n * l / r + n * l / (2.0 * r);
}

double tdma_throughput_vs_load(double g, const AnalyticParams& p) {
    return tdma_delay(g, p, RateParam::cycle_len);
}

double fdma_delay(double load_term, const AnalyticParams& p, RateParam rate) {
    saturating_load_check(load_term);
    const double r = rate == RateParam::cycle_len ? p.cycle_len : p.norm_prop_delay;
    if (!(r > 0)) throw std::domain_error("rate parameter must be > 0");
    const double n = static_cast<double>(p.n_nodes);
    const double l = p.pkt_len;
    return n * l / r * (1.0 + load_term / (2.0 * (1.0 - load_term)));
}

double fdma_throughput_vs_load(double g, const AnalyticParams& p) {
    return fdma_delay(g, p, RateParam::cycle_len);
}

bool in_domain(Technique t, Relation rel, double x, const AnalyticParams&) {
    switch (t) {
        case Technique::tdma:
        case Technique::fdma:
            return x >= 0 && x < 1.0;  // queueing factor diverges at 1
        default:
            break;
    }
    if (rel == Relation::d_vs_t) return x >= 0 && x <= 1.0;
    return x >= 0;
}

double eval(Technique t, Relation rel, double x, const AnalyticParams& p) {
    switch (t) {
        case Technique::pure_aloha:
            switch (rel) {
                case Relation::t_vs_g: return aloha_throughput(x);
                case Relation::d_vs_g: return aloha_delay_vs_load(x, p);
                case Relation::d_vs_t: return aloha_delay_vs_throughput(x, p);
            }
            break;
        case Technique::slotted_aloha:
            switch (rel) {
                case Relation::t_vs_g: return slotted_aloha_throughput(x);
                case Relation::d_vs_g: return saloha_delay_vs_load(x, p);
                case Relation::d_vs_t: return saloha_delay_vs_throughput(x, p);
            }
            break;
        case Technique::csma_1p:
        case Technique::csma_ca:
            switch (rel) {
                case Relation::t_vs_g: return csma_throughput(x, p.norm_prop_delay);
                case Relation::d_vs_g: return csma_delay_vs_load(x, p.pkt_len);
                case Relation::d_vs_t: return csma_delay_vs_throughput(x, p);
            }
            break;
        case Technique::tdma:
            switch (rel) {
                case Relation::t_vs_g: return tdma_throughput_vs_load(x, p);
                // x plays the role of the queueing load term in both delay
                // relations; only the rate divisor differs.
                case Relation::d_vs_g: return tdma_delay(x, p, RateParam::prop_delay);
                case Relation::d_vs_t: return tdma_delay(x, p, RateParam::cycle_len);
            }
            break;
        case Technique::fdma:
            switch (rel) {
                case Relation::t_vs_g: return fdma_throughput_vs_load(x, p);
                case Relation::d_vs_g: return fdma_delay(x, p, RateParam::prop_delay);
                case Relation::d_vs_t: return fdma_delay(x, p, RateParam::cycle_len);
            }
            break;
    }
    throw std::logic_error("unhandled technique/relation pair");
}

Curve generate_curve(Technique t, Relation rel, const GridRange& range,
                     const AnalyticParams& p) {
    p.validate();
    if (!(range.step > 0)) throw std::invalid_argument("grid step must be > 0");
    if (!(range.lo <= range.hi)) throw std::invalid_argument("empty grid range");

    Curve curve;
    curve.relation = rel;
    curve.technique = t;
    curve.as_printed = rel == Relation::d_vs_g &&
                       (t == Technique::csma_1p || t == Technique::csma_ca);

    const double span = range.hi - range.lo;
    const long n_steps = static_cast<long>(std::floor(span / range.step + 1e-9));
    for (long i = 0; i <= n_steps; ++i) {
        const double x = range.lo + static_cast<double>(i) * range.step;
        if (!in_domain(t, rel, x, p)) {
            ++curve.skipped;
            continue;
        }
        curve.points.push_back(CurvePoint{x, eval(t, rel, x, p), rel, t});
    }
    return curve;
}

}  // namespace macbench::analytic
