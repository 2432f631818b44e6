#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "analytic.hpp"
#include "protocols.hpp"
#include "technique.hpp"

namespace macbench::sweep {

/// An offered-load sweep: techniques x grid points x replications.
struct SweepSpec {
    std::vector<Technique> techniques;
    analytic::GridRange g_grid{0.1, 1.0, 0.1};
    int replications = 5;
    uint64_t base_seed = 42;
    analytic::AnalyticParams analytic_params;
    /// Simulation template; technique, offered load and seed are overwritten
    /// per cell, and the analytic join reuses this template's K and a.
    sim::SimConfig sim;

    void validate() const;
};

struct SweepRow {
    Technique technique;
    double g = 0;
    double s_analytic = 0, s_sim_mean = 0, s_sim_ci95_lo = 0, s_sim_ci95_hi = 0;
    double d_analytic = 0, d_sim_mean = 0, d_sim_ci95_lo = 0, d_sim_ci95_hi = 0;
    int n_replications = 0;
};

struct SweepTable {
    std::vector<SweepRow> rows;  ///< sorted by (technique, g)
    /// One entry per aborted cell or column; NaN marks the affected values.
    std::vector<std::string> diagnostics;
};

/// Runs every cell. Per-replication seeds derive from
/// (base_seed, technique, grid index, replication) through the documented
/// mixing chain, so the same spec always reproduces the same table.
SweepTable run_sweep(const SweepSpec& spec);

enum class ErrorColumn { throughput, delay };

struct ErrorStat {
    double value = 0;
    std::size_t row_index = 0;
};

/// Max over rows of |sim - analytic| / max(|analytic|, 1e-3); the floor makes
/// zero-analytic rows compare absolutely. Rows whose compared values are NaN
/// are skipped; an empty or fully-skipped table throws std::invalid_argument.
ErrorStat max_relative_error(const SweepTable& table, ErrorColumn column);

struct ConclusionEntry {
    Technique technique;
    double throughput = 0;
    double mean_delay = 0;
    uint64_t collided = 0;
};

/// Ranking of the techniques at one load point, by simulated throughput
/// (descending) and by simulated mean delay (ascending).
struct ConclusionReport {
    double g = 0;
    int replications = 0;
    uint64_t base_seed = 0;
    std::vector<ConclusionEntry> by_throughput;
    std::vector<ConclusionEntry> by_delay;
    bool tdma_first_throughput = false;
    bool tdma_first_delay = false;
    bool tdma_first_both = false;
};

/// Runs every technique of the spec at the single load g and ranks them.
/// The verdict fields record whether tdma leads both orderings; the report
/// records the outcome, it never asserts it.
ConclusionReport reproduce_conclusion(const SweepSpec& spec, double g);

std::string to_csv(const SweepTable& table);
std::string to_report(const ConclusionReport& report);

}  // namespace macbench::sweep
