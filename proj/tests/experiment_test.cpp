#include "nudd/experiment.hpp"

#include <cmath>
#include <sstream>

#include "gtest/gtest.h"
#include "nudd/algebra.hpp"
#include "nudd/rng.hpp"
#include "oracle.hpp"

using namespace nudd;

namespace {

SweepConfig small(std::vector<Ordering> orderings, std::vector<int> ns, std::uint64_t seed = 5) {
  SweepConfig c;
  c.orderings = std::move(orderings);
  c.n_values = std::move(ns);
  c.n_models = 2;
  c.n_states = 2;
  c.master_seed = seed;
  c.jobs = 1;
  return c;
}

std::vector<Ordering> fig1_orderings() { return preset("fig1").orderings; }

enum class Curve { Decreasing, Saturating, Flat };

Curve classify(const SweepResult& r, const Ordering& o) {
  const double lo = r.find(o, 3)->mean_d;
  const double hi = r.find(o, 8)->mean_d;
  if (hi > 1e-2) return Curve::Flat;
  if (hi < 1e-9 && hi < 1e-3 * lo) return Curve::Decreasing;
  return Curve::Saturating;
}

}  // namespace

TEST(experiment, ordering_labels) {
  EXPECT_EQ(parse_ordering("Xphi,X1,X0"), (Ordering{Control::Xphi, Control::X1, Control::X0}));
  EXPECT_EQ(parse_ordering("Xphi-X1-X0"), (Ordering{Control::Xphi, Control::X1, Control::X0}));
  EXPECT_TRUE(parse_ordering("none").empty());
  EXPECT_EQ(ordering_label({Control::X01, Control::Z4}), "X01-Z4");
  EXPECT_EQ(ordering_label({}), "none");
  EXPECT_THROW(parse_ordering("X0-Q"), std::invalid_argument);
}

TEST(experiment, state_and_bath_names) {
  for (StateClass s : {StateClass::Zero, StateClass::Pair, StateClass::Full}) {
    EXPECT_EQ(parse_state_class(state_class_name(s)), s);
  }
  for (BathState b : {BathState::Haar, BathState::Mixed}) EXPECT_EQ(parse_bath_state(bath_state_name(b)), b);
  EXPECT_THROW(parse_state_class("thermal"), std::invalid_argument);
}

TEST(experiment, draw_system_state_classes) {
  const auto basis = default_basis();
  const SystemState zero = draw_system_state(StateClass::Zero, 3, basis);
  EXPECT_LT((zero.amplitudes - basis.ket(0)).norm(), 1e-15);
  const SystemState pair = draw_system_state(StateClass::Pair, 3, basis);
  const double in_pair = std::norm(basis.ket(0).dot(pair.amplitudes)) + std::norm(basis.ket(1).dot(pair.amplitudes));
  EXPECT_NEAR(in_pair, 1.0, 1e-12);
  EXPECT_NEAR(draw_system_state(StateClass::Full, 3, basis).amplitudes.norm(), 1.0, 1e-12);
}

TEST(experiment, csv_header_and_row_counts) {
  const SweepResult r = sweep(small({parse_ordering("Xphi-X1-X0"), parse_ordering("X0-Xphi-X1")}, {1, 2}));
  ASSERT_EQ(r.rows.size(), 4u);
  const std::string csv = to_csv(r);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, kCsvHeader);
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 4);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.runs, 4);
    EXPECT_LE(row.min_d, row.mean_d);
    EXPECT_LE(row.geo_mean_d, row.mean_d * (1 + 1e-12));
    EXPECT_LE(row.mean_d, row.max_d);
  }
  EXPECT_NE(r.find(parse_ordering("X0-Xphi-X1"), 2), nullptr);
  EXPECT_EQ(r.find(parse_ordering("X0-Xphi-X1"), 7), nullptr);
}

TEST(experiment, sweep_is_deterministic_and_jobs_independent) {
  SweepConfig c = small(fig1_orderings(), {1, 3});
  const std::string a = to_csv(sweep(c));
  const std::string b = to_csv(sweep(c));
  EXPECT_EQ(a, b);
  c.jobs = 3;
  EXPECT_EQ(to_csv(sweep(c)), a);
  c.master_seed = 6;
  EXPECT_NE(to_csv(sweep(c)), a);
}

TEST(experiment, sweep_run_reproduces_a_single_cell) {
  SweepConfig c = small({parse_ordering("Xphi-X1-X0")}, {2});
  c.n_models = 1;
  c.n_states = 1;
  const SweepResult r = sweep(c);
  const RunResult one = sweep_run(c, c.orderings[0], 2);
  EXPECT_EQ(one.d_value, r.rows[0].mean_d);
  EXPECT_EQ(one.model_seed, derive_seed(c.master_seed, "model", 0));
  EXPECT_EQ(one.state_seed, derive_seed(c.master_seed, "state", 0));
  EXPECT_EQ(one.bath_seed, derive_seed(c.master_seed, "bath", 0, 0));

  // Replay through an explicit model gives the same number.
  const SpinBathModel m = build_model(5, one.model_seed);
  EXPECT_EQ(sweep_run(c, c.orderings[0], 2, 0, 0, &m).d_value, one.d_value);
}

TEST(experiment, sample_statistics) {
  SweepConfig c = small({parse_ordering("X0-Xphi-X1")}, {2});
  const SweepResult r = sweep(c);
  std::vector<double> d;
  for (int i = 0; i < c.n_models; ++i) {
    for (int j = 0; j < c.n_states; ++j) d.push_back(sweep_run(c, c.orderings[0], 2, i, j).d_value);
  }
  double mean = 0.0;
  double logsum = 0.0;
  for (double v : d) {
    mean += v;
    logsum += std::log(v);
  }
  mean /= static_cast<double>(d.size());
  double var = 0.0;
  for (double v : d) var += (v - mean) * (v - mean);
  var /= static_cast<double>(d.size() - 1);
  EXPECT_NEAR(r.rows[0].mean_d, mean, 1e-15);
  EXPECT_NEAR(r.rows[0].std_d, std::sqrt(var), 1e-15);
  EXPECT_NEAR(r.rows[0].geo_mean_d, std::exp(logsum / static_cast<double>(d.size())), 1e-14);
}

TEST(experiment, presets) {
  for (const auto& name : preset_names()) {
    const SweepConfig c = preset(name);
    EXPECT_EQ(c.orderings.size(), name == "fourlayer" ? 3u : 6u) << name;
    EXPECT_EQ(c.n_models, 10);
    EXPECT_EQ(c.n_states, 10);
    EXPECT_DOUBLE_EQ(c.total_time, 0.1);
  }
  EXPECT_EQ(preset("fig2").rule, TimingRule::Periodic);
  EXPECT_EQ(preset("fourlayer").basis, "local");
  EXPECT_EQ(preset("fourlayer").n_values, (std::vector<int>{1, 2, 3, 4, 5, 6}));
  EXPECT_THROW(preset("fig4"), std::invalid_argument);
}

TEST(experiment, swapped_convention_preserves_fig_values) {
  SweepConfig a = small({parse_ordering("Xphi-X1-X0"), parse_ordering("X1-Xphi-X0")}, {2, 4});
  SweepConfig b = a;
  b.basis = "default-swapped";
  const SweepResult ra = sweep(a);
  const SweepResult rb = sweep(b);
  for (size_t k = 0; k < ra.rows.size(); ++k) {
    // Same class and within a decade of each other.
    EXPECT_LT(std::abs(std::log10(ra.rows[k].mean_d) - std::log10(rb.rows[k].mean_d)), 1.0);
  }
}

TEST(experiment, curve_classes_are_seed_independent) {
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    const SweepResult r = sweep(small(fig1_orderings(), {3, 8}, seed));
    EXPECT_EQ(classify(r, parse_ordering("Xphi-X1-X0")), Curve::Decreasing) << seed;
    EXPECT_EQ(classify(r, parse_ordering("Xphi-X0-X1")), Curve::Decreasing) << seed;
    EXPECT_EQ(classify(r, parse_ordering("X0-Xphi-X1")), Curve::Flat) << seed;
    EXPECT_EQ(classify(r, parse_ordering("X1-Xphi-X0")), Curve::Flat) << seed;
    EXPECT_EQ(classify(r, parse_ordering("X0-X1-Xphi")), Curve::Saturating) << seed;
    EXPECT_EQ(classify(r, parse_ordering("X1-X0-Xphi")), Curve::Saturating) << seed;
  }
}

TEST(experiment, algebra_outcome_matches_dynamics) {
  const AlgebraAnalyzer an(default_basis());
  const SweepResult r = sweep(small(fig1_orderings(), {3, 8}));
  for (const auto& o : fig1_orderings()) {
    const StepOutcome predicted = an.predict_chain(o).outcome();
    const Curve seen = classify(r, o);
    switch (predicted) {
      case StepOutcome::Reduced: EXPECT_EQ(seen, Curve::Decreasing) << ordering_label(o); break;
      case StepOutcome::BreakdownClosure: EXPECT_EQ(seen, Curve::Saturating) << ordering_label(o); break;
      case StepOutcome::BreakdownNonInvariant: EXPECT_EQ(seen, Curve::Flat) << ordering_label(o); break;
    }
  }
}

TEST(experiment, fit_order_single_layer) {
  FitConfig f;
  f.ordering = {Control::X0};
  f.t_values = log_grid(0.01, 0.1, 8);
  f.n_models = 2;
  f.jobs = 1;
  for (int n : {1, 2}) {
    f.n = n;
    const FitResult r = fit_order(f);
    EXPECT_FALSE(r.below_noise_floor);
    EXPECT_NEAR(r.slope, n + 1, 0.5) << n;
  }
}

TEST(experiment, fit_order_below_noise_floor) {
  FitConfig f;
  f.ordering = {Control::X0};
  f.n = 3;
  f.t_values = {1e-7, 1e-6};
  f.n_models = 1;
  f.jobs = 1;
  EXPECT_TRUE(fit_order(f).below_noise_floor);
}

TEST(experiment, fit_helpers) {
  const auto g = log_grid(0.01, 0.1, 8);
  ASSERT_EQ(g.size(), 8u);
  EXPECT_EQ(g.front(), 0.01);
  EXPECT_EQ(g.back(), 0.1);
  for (size_t k = 1; k < g.size(); ++k) EXPECT_NEAR(g[k] / g[k - 1], std::pow(10.0, 1.0 / 7.0), 1e-12);
  EXPECT_NEAR(least_squares_slope({0, 1, 2, 3}, {1, 3, 5, 7}), 2.0, 1e-15);
  EXPECT_THROW(least_squares_slope({1}, {1}), std::invalid_argument);
  EXPECT_THROW(log_grid(0.0, 1.0, 3), std::invalid_argument);
}

TEST(experiment, parallel_for_covers_every_index) {
  std::vector<int> hits(100, 0);
  parallel_for(hits.size(), 4, [&](size_t k) { hits[k] += 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
}

TEST(experiment, four_layer_sweep_forces_local_full_states) {
  SweepConfig c = small({}, {1});
  c.n_models = 1;
  const SweepResult r = four_layer_sweep(c);
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(ordering_label(r.rows[0].ordering), "Z4-Z3-Z2-Z1");

  SweepConfig base = small({{}}, {1});
  base.n_models = 1;
  base.basis = "local";
  base.states = StateClass::Full;
  EXPECT_LT(r.rows[0].mean_d, sweep(base).rows[0].mean_d);
}

TEST(experiment, mixed_bath_sweep_runs) {
  SweepConfig c = small({parse_ordering("Xphi-X1-X0")}, {2});
  c.bath = BathState::Mixed;
  const SweepResult r = sweep(c);
  EXPECT_EQ(r.rows[0].runs, 4);
  EXPECT_GT(r.rows[0].mean_d, 0.0);
  EXPECT_LT(r.rows[0].max_norm_error, 1e-10);
}
