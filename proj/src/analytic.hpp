#pragma once

#include <vector>

#include "technique.hpp"

namespace macbench::analytic {

/// Parameter set shared by the closed-form delay/throughput relations.
/// All quantities are dimensionless; delays come out as multiples of one
/// packet transmission time.
struct AnalyticParams {
    int n_nodes = 10;              ///< N, number of nodes
    double pkt_len = 1.0;          ///< L, packets per message
    double cycle_len = 1.0;        ///< C, channel-rate proxy (packets per cycle)
    double queue_occ = 0.5;        ///< q in [0,1)
    double norm_prop_delay = 0.01; ///< a, propagation delay / packet time
    double retrans_window = 1.0;   ///< K, retransmission randomization window (slots)

    /// Throws std::invalid_argument when a field is outside its domain.
    void validate() const;
};

// Random-access throughput curves.
double aloha_throughput(double g);
double slotted_aloha_throughput(double g);
double csma_throughput(double g, double a);

// Delay relations for the random-access techniques. The d-vs-t forms take a
// normalized throughput in [0,1]; the d-vs-g forms take the offered load.
double aloha_delay_vs_throughput(double s, const AnalyticParams& p);
double aloha_delay_vs_load(double g, const AnalyticParams& p);
double saloha_delay_vs_throughput(double s, const AnalyticParams& p);
double saloha_delay_vs_load(double g, const AnalyticParams& p);
double csma_delay_vs_throughput(double t, const AnalyticParams& p);

/// CSMA delay-vs-load curve. The source model reuses the throughput kernel
/// with the packet count substituted for the propagation ratio, so the output
/// is a delay proxy rather than a time; curves built from it carry an
/// `as_printed` flag.
double csma_delay_vs_load(double g, double pkt_len);

/// Which rate parameter divides the TDMA/FDMA transfer-time expressions.
enum class RateParam { cycle_len, prop_delay };

/// TDMA transfer time: L/r + load/(2(1-load))*N*L/r + N*L/(2r).
/// Throws std::domain_error("saturated queue") when load_term >= 1.
double tdma_delay(double load_term, const AnalyticParams& p, RateParam rate);
double tdma_throughput_vs_load(double g, const AnalyticParams& p);

/// FDMA transfer time: N*L/r * (1 + load/(2(1-load))).
double fdma_delay(double load_term, const AnalyticParams& p, RateParam rate);
double fdma_throughput_vs_load(double g, const AnalyticParams& p);

struct CurvePoint {
    double x = 0;
    double y = 0;
    Relation relation = Relation::t_vs_g;
    Technique technique = Technique::pure_aloha;
};

struct Curve {
    std::vector<CurvePoint> points;  ///< ascending in x
    int skipped = 0;                 ///< grid values outside the relation's domain
    bool as_printed = false;         ///< set for the csma d-vs-g delay proxy
    Relation relation = Relation::t_vs_g;
    Technique technique = Technique::pure_aloha;
};

struct GridRange {
    double lo = 0;
    double hi = 0;
    double step = 0;
};

/// True when x is inside the domain of (technique, relation).
bool in_domain(Technique t, Relation rel, double x, const AnalyticParams& p);

/// Evaluates one point of the named relation. Callers are expected to check
/// in_domain first; out-of-domain inputs throw std::domain_error.
double eval(Technique t, Relation rel, double x, const AnalyticParams& p);

/// Samples a relation over an inclusive grid [lo, lo+step, ..., hi].
/// Out-of-domain grid values are omitted and counted in Curve::skipped.
/// Throws std::invalid_argument for an empty or malformed range.
Curve generate_curve(Technique t, Relation rel, const GridRange& range,
                     const AnalyticParams& p);

}  // namespace macbench::analytic
