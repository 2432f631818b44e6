// Sweep-harness tests: aggregation against the closed-form targets,
// replication statistics, seed-derivation determinism, error statistics and
// the ranking experiment.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "analytic.hpp"
#include "sweep.hpp"

using namespace macbench;
using namespace macbench::sweep;

namespace {

SweepSpec small_spec(std::vector<Technique> ts, analytic::GridRange grid,
                     int reps, uint64_t stop) {
    SweepSpec spec;
    spec.techniques = std::move(ts);
    spec.g_grid = grid;
    spec.replications = reps;
    spec.sim.stop_packets = stop;
    return spec;
}

// The analytic-parameter set the harness joins against: the simulator's
// retransmission window, staleness and station count override the template.
analytic::AnalyticParams joined(const SweepSpec& spec) {
    analytic::AnalyticParams ap = spec.analytic_params;
    ap.retrans_window = spec.sim.retrans_window_k;
    ap.norm_prop_delay = spec.sim.norm_prop_delay_a;
    return ap;
}

}  // namespace

TEST_CASE("single-cell sweep reproduces the peak throughput") {
    SweepSpec spec = small_spec({Technique::pure_aloha},
                                analytic::GridRange{0.5, 0.5, 1.0}, 5, 100000);
    const SweepTable table = run_sweep(spec);
    REQUIRE(table.rows.size() == 1);
    const SweepRow& row = table.rows[0];
    CHECK(row.technique == Technique::pure_aloha);
    CHECK(row.g == 0.5);
    CHECK(row.n_replications == 5);
    CHECK(std::fabs(row.s_sim_mean - 0.18393972058572116) <= 0.01);
    CHECK(row.s_sim_ci95_hi - row.s_sim_ci95_lo < 0.01);
    CHECK(row.s_sim_ci95_lo <= row.s_sim_mean);
    CHECK(row.s_sim_mean <= row.s_sim_ci95_hi);
    CHECK(row.d_sim_ci95_lo <= row.d_sim_mean);
    CHECK(row.d_sim_mean <= row.d_sim_ci95_hi);
    CHECK(table.diagnostics.empty());

    // Analytic columns are bit-for-bit replays of the closed forms.
    const analytic::AnalyticParams ap = joined(spec);
    CHECK(row.s_analytic ==
          analytic::eval(Technique::pure_aloha, Relation::t_vs_g, 0.5, ap));
    CHECK(row.d_analytic == analytic::aloha_delay_vs_load(0.5, ap));
}

TEST_CASE("one replication degenerates the interval") {
    SweepSpec spec = small_spec({Technique::slotted_aloha},
                                analytic::GridRange{1.0, 1.0, 1.0}, 1, 2000);
    const SweepTable table = run_sweep(spec);
    REQUIRE(table.rows.size() == 1);
    const SweepRow& row = table.rows[0];
    CHECK(row.s_sim_ci95_lo == row.s_sim_mean);
    CHECK(row.s_sim_ci95_hi == row.s_sim_mean);
    CHECK(row.d_sim_ci95_lo == row.d_sim_mean);
    CHECK(row.d_sim_ci95_hi == row.d_sim_mean);
}

TEST_CASE("identical specs give byte-identical tables") {
    SweepSpec spec =
        small_spec({Technique::pure_aloha, Technique::tdma},
                   analytic::GridRange{0.2, 0.6, 0.2}, 2, 20000);
    const std::string a = to_csv(run_sweep(spec));
    const std::string b = to_csv(run_sweep(spec));
    CHECK(a == b);
    CHECK(a.rfind("technique,g,s_analytic,s_sim_mean,s_sim_ci95_lo,"
                  "s_sim_ci95_hi,d_analytic,d_sim_mean,d_sim_ci95_lo,"
                  "d_sim_ci95_hi,n_replications\n",
                  0) == 0);
    // Two techniques x three grid points, sorted by (technique, g).
    CHECK(std::count(a.begin(), a.end(), '\n') == 7);
}

TEST_CASE("rows come out sorted by technique then load") {
    SweepSpec spec =
        small_spec({Technique::tdma, Technique::pure_aloha, Technique::tdma},
                   analytic::GridRange{0.2, 0.4, 0.2}, 1, 2000);
    const SweepTable table = run_sweep(spec);
    REQUIRE(table.rows.size() == 4);  // duplicates collapse
    CHECK(table.rows[0].technique == Technique::pure_aloha);
    CHECK(table.rows[0].g == 0.2);
    CHECK(table.rows[1].technique == Technique::pure_aloha);
    CHECK(table.rows[1].g == doctest::Approx(0.4));
    CHECK(table.rows[2].technique == Technique::tdma);
    CHECK(table.rows[3].technique == Technique::tdma);
}

TEST_CASE("sweep-scale agreement with the throughput curve") {
    SweepSpec spec = small_spec({Technique::pure_aloha},
                                analytic::GridRange{0.1, 2.0, 0.1}, 5, 100000);
    const SweepTable table = run_sweep(spec);
    REQUIRE(table.rows.size() == 20);
    const ErrorStat err = max_relative_error(table, ErrorColumn::throughput);
    MESSAGE("max relative throughput error ", err.value, " at row ",
            err.row_index);
    CHECK(err.value < 0.06);
    CHECK(err.row_index < table.rows.size());
}

TEST_CASE("error statistics on handcrafted tables") {
    SweepTable table;
    SweepRow row;
    row.technique = Technique::pure_aloha;
    row.g = 0.5;
    row.s_analytic = 0.5;
    row.s_sim_mean = 0.5;
    row.d_analytic = 2.0;
    row.d_sim_mean = 2.2;
    table.rows.push_back(row);

    SUBCASE("exact agreement reports zero") {
        const ErrorStat err = max_relative_error(table, ErrorColumn::throughput);
        CHECK(err.value == 0.0);
        CHECK(err.row_index == 0);
    }
    SUBCASE("a single-row table is its own argmax") {
        const ErrorStat err = max_relative_error(table, ErrorColumn::delay);
        CHECK(err.value == doctest::Approx(0.1));
        CHECK(err.row_index == 0);
    }
    SUBCASE("zero analytic values compare against the documented floor") {
        table.rows[0].s_analytic = 0.0;
        table.rows[0].s_sim_mean = 0.0005;
        const ErrorStat err = max_relative_error(table, ErrorColumn::throughput);
        CHECK(err.value == doctest::Approx(0.5));  // 0.0005 / 1e-3
    }
    SUBCASE("rows with missing values are skipped") {
        SweepRow nan_row = row;
        nan_row.g = 0.7;
        nan_row.s_analytic = std::nan("");
        nan_row.s_sim_mean = 123.0;
        table.rows.push_back(nan_row);
        const ErrorStat err = max_relative_error(table, ErrorColumn::throughput);
        CHECK(err.row_index == 0);
    }
    SUBCASE("empty and all-missing tables are errors") {
        CHECK_THROWS_AS(max_relative_error(SweepTable{}, ErrorColumn::delay),
                        std::invalid_argument);
        SweepTable missing;
        SweepRow r2;
        r2.s_analytic = std::nan("");
        missing.rows.push_back(r2);
        CHECK_THROWS_AS(max_relative_error(missing, ErrorColumn::throughput),
                        std::invalid_argument);
    }
}

TEST_CASE("doubling replications shrinks the interval almost always") {
    int shrank = 0;
    const int trials = 100;
    for (int k = 0; k < trials; ++k) {
        SweepSpec spec = small_spec({Technique::pure_aloha},
                                    analytic::GridRange{0.5, 0.5, 1.0}, 40, 300);
        spec.base_seed = 1000 + static_cast<uint64_t>(k);
        const SweepRow r40 = run_sweep(spec).rows.at(0);
        spec.replications = 80;
        const SweepRow r80 = run_sweep(spec).rows.at(0);
        const double w40 = r40.s_sim_ci95_hi - r40.s_sim_ci95_lo;
        const double w80 = r80.s_sim_ci95_hi - r80.s_sim_ci95_lo;
        if (w80 < w40) ++shrank;
    }
    MESSAGE("interval shrank in ", shrank, " of ", trials, " paired trials");
    CHECK(shrank >= 95);
}

TEST_CASE("saturated grid points degrade into diagnostics, not failures") {
    SweepSpec spec = small_spec({Technique::tdma},
                                analytic::GridRange{1.0, 1.0, 1.0}, 1, 2000);
    const SweepTable table = run_sweep(spec);
    REQUIRE(table.rows.size() == 1);
    CHECK(std::isnan(table.rows[0].s_analytic));
    CHECK_FALSE(std::isnan(table.rows[0].s_sim_mean));
    bool noted = false;
    for (const std::string& d : table.diagnostics)
        noted = noted || d.find("outside analytic throughput domain") !=
                             std::string::npos;
    CHECK(noted);
}

TEST_CASE("scheduled-technique delay columns join at the realized load") {
    SweepSpec spec = small_spec({Technique::tdma, Technique::fdma},
                                analytic::GridRange{0.5, 0.5, 1.0}, 2, 50000);
    const SweepTable table = run_sweep(spec);
    REQUIRE(table.rows.size() == 2);
    const analytic::AnalyticParams ap = joined(spec);
    for (const SweepRow& row : table.rows) {
        REQUIRE_FALSE(std::isnan(row.d_analytic));
        const double expect =
            row.technique == Technique::tdma
                ? analytic::tdma_delay(row.s_sim_mean, ap,
                                       analytic::RateParam::cycle_len)
                : analytic::fdma_delay(row.s_sim_mean, ap,
                                       analytic::RateParam::cycle_len);
        CHECK(row.d_analytic == expect);
        // At half load the simulated delay sits near the closed form.
        CHECK(std::fabs(row.d_sim_mean - row.d_analytic) / row.d_analytic <
              0.10);
    }
}

TEST_CASE("specification validation") {
    SweepSpec spec;
    spec.techniques.clear();
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = small_spec({Technique::pure_aloha}, analytic::GridRange{0.1, 1.0, 0.1},
                      0, 1000);
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = small_spec({Technique::pure_aloha}, analytic::GridRange{0.1, 1.0, 0.0},
                      1, 1000);
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = small_spec({Technique::pure_aloha}, analytic::GridRange{1.0, 0.1, 0.1},
                      1, 1000);
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("ranking experiment covers every technique exactly once") {
    SweepSpec spec = small_spec(
        {Technique::pure_aloha, Technique::slotted_aloha, Technique::csma_1p,
         Technique::csma_ca, Technique::tdma, Technique::fdma},
        analytic::GridRange{0.8, 0.8, 1.0}, 2, 20000);
    const ConclusionReport report = reproduce_conclusion(spec, 0.8);
    CHECK(report.g == 0.8);
    CHECK(report.replications == 2);

    REQUIRE(report.by_throughput.size() == 6);
    REQUIRE(report.by_delay.size() == 6);
    std::set<Technique> seen_t, seen_d;
    for (const ConclusionEntry& e : report.by_throughput)
        seen_t.insert(e.technique);
    for (const ConclusionEntry& e : report.by_delay) seen_d.insert(e.technique);
    CHECK(seen_t.size() == 6);
    CHECK(seen_d.size() == 6);

    for (std::size_t i = 1; i < report.by_throughput.size(); ++i)
        CHECK(report.by_throughput[i - 1].throughput >=
              report.by_throughput[i].throughput);
    for (std::size_t i = 1; i < report.by_delay.size(); ++i)
        CHECK(report.by_delay[i - 1].mean_delay <=
              report.by_delay[i].mean_delay);

    // Structural: the scheduled techniques never collide, contention at
    // g=0.8 always does.
    uint64_t tdma_coll = 1, pure_coll = 0;
    for (const ConclusionEntry& e : report.by_throughput) {
        if (e.technique == Technique::tdma) tdma_coll = e.collided;
        if (e.technique == Technique::pure_aloha) pure_coll = e.collided;
    }
    CHECK(tdma_coll == 0);
    CHECK(pure_coll > 0);

    CHECK(report.tdma_first_both ==
          (report.tdma_first_throughput && report.tdma_first_delay));

    const std::string text = to_report(report);
    CHECK(text.find("throughput ranking (descending):") != std::string::npos);
    CHECK(text.find("delay ranking (ascending):") != std::string::npos);
    CHECK(text.find("tdma rank-1 in both:") != std::string::npos);
    CHECK(text.find("ranking point g=0.8") != std::string::npos);
}

TEST_CASE("the ranking experiment requires the full technique set") {
    SweepSpec spec = small_spec({Technique::pure_aloha, Technique::tdma},
                                analytic::GridRange{0.8, 0.8, 1.0}, 1, 2000);
    CHECK_THROWS_AS(reproduce_conclusion(spec, 0.8), std::invalid_argument);

    SweepSpec full = small_spec(
        {Technique::pure_aloha, Technique::slotted_aloha, Technique::csma_ca,
         Technique::tdma, Technique::fdma},
        analytic::GridRange{0.8, 0.8, 1.0}, 1, 2000);
    CHECK_THROWS_AS(reproduce_conclusion(full, 0.0), std::invalid_argument);
    CHECK_NOTHROW(reproduce_conclusion(full, 0.8));
}
