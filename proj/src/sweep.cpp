#include "sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "format.hpp"
#include "rng.hpp"

namespace macbench::sweep {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

struct MeanCi {
    double mean = kNan;
    double lo = kNan;
    double hi = kNan;
};

// Normal-approximation 95% interval over replication means.
MeanCi aggregate(const std::vector<double>& xs) {
    MeanCi r;
    if (xs.empty()) return r;
    double sum = 0;
    for (double x : xs) sum += x;
    r.mean = sum / static_cast<double>(xs.size());
    double ss = 0;
    for (double x : xs) ss += (x - r.mean) * (x - r.mean);
    const double sd =
        xs.size() > 1 ? std::sqrt(ss / static_cast<double>(xs.size() - 1)) : 0.0;
    const double half = 1.96 * sd / std::sqrt(static_cast<double>(xs.size()));
    r.lo = r.mean - half;
    r.hi = r.mean + half;
    return r;
}

std::vector<Technique> sorted_unique(std::vector<Technique> ts) {
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    return ts;
}

std::vector<double> grid_points(const analytic::GridRange& g) {
    std::vector<double> xs;
    const long n = static_cast<long>(std::floor((g.hi - g.lo) / g.step + 1e-9));
    for (long i = 0; i <= n; ++i) xs.push_back(g.lo + static_cast<double>(i) * g.step);
    return xs;
}

// Analytic parameter set used for the join: the simulator's retransmission
// window, staleness and station count override the template so both columns
// describe the same system.
analytic::AnalyticParams join_params(const SweepSpec& spec, const sim::SimConfig& c) {
    analytic::AnalyticParams ap = spec.analytic_params;
    ap.retrans_window = c.retrans_window_k;
    ap.norm_prop_delay = c.norm_prop_delay_a;
    const int n = c.resolved_stations();
    if (n > 0) ap.n_nodes = n;
    return ap;
}

}  // namespace

void SweepSpec::validate() const {
    if (techniques.empty()) throw std::invalid_argument("technique set is empty");
    if (replications < 1) throw std::invalid_argument("replications must be >= 1");
    if (!(g_grid.step > 0)) throw std::invalid_argument("grid step must be > 0");
    if (!(g_grid.lo <= g_grid.hi)) throw std::invalid_argument("empty grid range");
    analytic_params.validate();
}

SweepTable run_sweep(const SweepSpec& spec) {
    spec.validate();
    SweepTable table;
    const auto techniques = sorted_unique(spec.techniques);
    const auto grid = grid_points(spec.g_grid);

    for (Technique tech : techniques) {
        for (std::size_t gi = 0; gi < grid.size(); ++gi) {
            const double g = grid[gi];
            SweepRow row;
            row.technique = tech;
            row.g = g;
            row.n_replications = spec.replications;

            sim::SimConfig cell = spec.sim;
            cell.technique = tech;
            cell.offered_load_g = g;

            std::vector<double> s_reps, d_reps;
            bool delay_gap = false;
            try {
                for (int r = 0; r < spec.replications; ++r) {
                    cell.seed = rng::derive_seed(spec.base_seed,
                                                 static_cast<uint64_t>(tech), gi,
                                                 static_cast<uint64_t>(r));
                    const sim::Metrics m = sim::simulate(cell);
                    s_reps.push_back(m.throughput_s);
                    if (m.delay_samples > 0) {
                        d_reps.push_back(m.mean_delay);
                    } else {
                        delay_gap = true;
                    }
                }
            } catch (const std::exception& e) {
                table.diagnostics.push_back(std::string(technique_name(tech)) + " g=" +
                                            fmt::format_double(g) +
                                            ": simulation aborted: " + e.what());
                s_reps.clear();
                d_reps.clear();
            }

            const MeanCi s = aggregate(s_reps);
            const MeanCi d = aggregate(d_reps);
            row.s_sim_mean = s.mean;
            row.s_sim_ci95_lo = s.lo;
            row.s_sim_ci95_hi = s.hi;
            row.d_sim_mean = d.mean;
            row.d_sim_ci95_lo = d.lo;
            row.d_sim_ci95_hi = d.hi;
            if (delay_gap)
                table.diagnostics.push_back(std::string(technique_name(tech)) + " g=" +
                                            fmt::format_double(g) +
                                            ": replication without delay samples");

            const analytic::AnalyticParams ap = join_params(spec, cell);
            row.s_analytic = kNan;
            row.d_analytic = kNan;
            if (analytic::in_domain(tech, Relation::t_vs_g, g, ap)) {
                row.s_analytic = analytic::eval(tech, Relation::t_vs_g, g, ap);
            } else {
                table.diagnostics.push_back(std::string(technique_name(tech)) + " g=" +
                                            fmt::format_double(g) +
                                            ": outside analytic throughput domain");
            }
            if (tech == Technique::tdma || tech == Technique::fdma) {
                // The delay model is evaluated at the realized utilization, so
                // the comparison describes the load the queue actually saw.
                const double q = row.s_sim_mean;
                if (q >= 0 && q < 1) {
                    row.d_analytic =
                        tech == Technique::tdma
                            ? analytic::tdma_delay(q, ap, analytic::RateParam::cycle_len)
                            : analytic::fdma_delay(q, ap, analytic::RateParam::cycle_len);
                } else {
                    table.diagnostics.push_back(
                        std::string(technique_name(tech)) + " g=" +
                        fmt::format_double(g) + ": realized utilization saturated");
                }
            } else if (analytic::in_domain(tech, Relation::d_vs_g, g, ap)) {
                row.d_analytic = analytic::eval(tech, Relation::d_vs_g, g, ap);
            }
            table.rows.push_back(row);
        }
    }
    return table;
}

ErrorStat max_relative_error(const SweepTable& table, ErrorColumn column) {
    if (table.rows.empty()) throw std::invalid_argument("empty sweep table");
    ErrorStat best;
    bool found = false;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const SweepRow& r = table.rows[i];
        const double an =
            column == ErrorColumn::throughput ? r.s_analytic : r.d_analytic;
        const double si =
            column == ErrorColumn::throughput ? r.s_sim_mean : r.d_sim_mean;
        if (std::isnan(an) || std::isnan(si)) continue;
        const double err = std::fabs(si - an) / std::max(std::fabs(an), 1e-3);
        if (!found || err > best.value) {
            best.value = err;
            best.row_index = i;
            found = true;
        }
    }
    if (!found) throw std::invalid_argument("no comparable rows in sweep table");
    return best;
}

ConclusionReport reproduce_conclusion(const SweepSpec& spec, double g) {
    spec.validate();
    const auto techniques = sorted_unique(spec.techniques);
    for (Technique required :
         {Technique::pure_aloha, Technique::slotted_aloha, Technique::csma_ca,
          Technique::tdma, Technique::fdma}) {
        if (std::find(techniques.begin(), techniques.end(), required) ==
            techniques.end())
            throw std::invalid_argument(
                "conclusion ranking needs pure_aloha, slotted_aloha, csma_ca, "
                "tdma and fdma in the technique set");
    }
    if (!(g > 0)) throw std::invalid_argument("ranking load must be > 0");

    ConclusionReport report;
    report.g = g;
    report.replications = spec.replications;
    report.base_seed = spec.base_seed;

    for (Technique tech : techniques) {
        sim::SimConfig cell = spec.sim;
        cell.technique = tech;
        cell.offered_load_g = g;
        std::vector<double> s_reps, d_reps;
        uint64_t collided = 0;
        for (int r = 0; r < spec.replications; ++r) {
            cell.seed = rng::derive_seed(spec.base_seed, static_cast<uint64_t>(tech),
                                         0, static_cast<uint64_t>(r));
            const sim::Metrics m = sim::simulate(cell);
            s_reps.push_back(m.throughput_s);
            if (m.delay_samples > 0) d_reps.push_back(m.mean_delay);
            collided += m.collided;
        }
        ConclusionEntry e;
        e.technique = tech;
        e.throughput = aggregate(s_reps).mean;
        e.mean_delay = aggregate(d_reps).mean;
        e.collided = collided;
        report.by_throughput.push_back(e);
        report.by_delay.push_back(e);
    }

    const auto name_less = [](const ConclusionEntry& a, const ConclusionEntry& b) {
        return std::string_view(technique_name(a.technique)) <
               std::string_view(technique_name(b.technique));
    };
    std::sort(report.by_throughput.begin(), report.by_throughput.end(),
              [&](const ConclusionEntry& a, const ConclusionEntry& b) {
                  if (a.throughput != b.throughput) return a.throughput > b.throughput;
                  return name_less(a, b);
              });
    const auto delay_key = [](const ConclusionEntry& e) {
        return std::isnan(e.mean_delay) ? std::numeric_limits<double>::infinity()
                                        : e.mean_delay;
    };
    std::sort(report.by_delay.begin(), report.by_delay.end(),
              [&](const ConclusionEntry& a, const ConclusionEntry& b) {
                  if (delay_key(a) != delay_key(b)) return delay_key(a) < delay_key(b);
                  return name_less(a, b);
              });

    report.tdma_first_throughput =
        report.by_throughput.front().technique == Technique::tdma;
    report.tdma_first_delay = report.by_delay.front().technique == Technique::tdma;
    report.tdma_first_both =
        report.tdma_first_throughput && report.tdma_first_delay;
    return report;
}

std::string to_csv(const SweepTable& table) {
    std::string out =
        "technique,g,s_analytic,s_sim_mean,s_sim_ci95_lo,s_sim_ci95_hi,"
        "d_analytic,d_sim_mean,d_sim_ci95_lo,d_sim_ci95_hi,n_replications\n";
    for (const SweepRow& r : table.rows) {
        out += technique_name(r.technique);
        out += ',';
        out += fmt::format_double(r.g);
        for (double v : {r.s_analytic, r.s_sim_mean, r.s_sim_ci95_lo, r.s_sim_ci95_hi,
                         r.d_analytic, r.d_sim_mean, r.d_sim_ci95_lo, r.d_sim_ci95_hi}) {
            out += ',';
            out += fmt::format_double(v);
        }
        out += ',';
        out += std::to_string(r.n_replications);
        out += '\n';
    }
    return out;
}

std::string to_report(const ConclusionReport& r) {
    std::ostringstream out;
    out << "ranking point g=" << fmt::format_double(r.g)
        << " replications=" << r.replications << " base_seed=" << r.base_seed << "\n";
    out << "throughput ranking (descending):\n";
    for (std::size_t i = 0; i < r.by_throughput.size(); ++i) {
        const ConclusionEntry& e = r.by_throughput[i];
        out << "  " << (i + 1) << ". " << technique_name(e.technique)
            << " S=" << fmt::format_double(e.throughput)
            << " collisions=" << e.collided << "\n";
    }
    out << "delay ranking (ascending):\n";
    for (std::size_t i = 0; i < r.by_delay.size(); ++i) {
        const ConclusionEntry& e = r.by_delay[i];
        out << "  " << (i + 1) << ". " << technique_name(e.technique)
            << " D=" << fmt::format_double(e.mean_delay) << "\n";
    }
    out << "tdma rank-1 in throughput: " << (r.tdma_first_throughput ? "yes" : "no")
        << "\n";
    out << "tdma rank-1 in delay: " << (r.tdma_first_delay ? "yes" : "no") << "\n";
    out << "tdma rank-1 in both: " << (r.tdma_first_both ? "yes" : "no") << "\n";
    return out.str();
}

}  // namespace macbench::sweep
