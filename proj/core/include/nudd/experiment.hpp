#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nudd/evolve.hpp"
#include "nudd/schedule.hpp"

namespace nudd {

/// Which initial system states a sweep draws.
enum class StateClass {
  Zero,  // |0> under the active convention
  Pair,  // alpha|0> + beta|1>, Haar on the (|0>, |1>) sphere
  Full,  // Haar over the four-dimensional system space
};

std::string_view state_class_name(StateClass s);
StateClass parse_state_class(std::string_view name);

/// Initial system state of class `cls` drawn from `seed`.
SystemState draw_system_state(StateClass cls, std::uint64_t seed, const BasisConvention& basis);

/// Initial bath state of every run.
enum class BathState {
  Haar,   // seeded Haar-random pure state
  Mixed,  // maximally mixed; bath seeds are unused
};

std::string_view bath_state_name(BathState b);
BathState parse_bath_state(std::string_view name);

using Ordering = std::vector<Control>;  // outer to inner; empty = no control

/// "Xphi-X1-X0", or "none" for an empty ordering.
std::string ordering_label(const Ordering& o);
/// Accepts "Xphi,X1,X0" or "Xphi-X1-X0"; "none" gives the empty ordering.
Ordering parse_ordering(std::string_view text);

struct SweepConfig {
  std::vector<Ordering> orderings;
  std::vector<int> n_values = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  double total_time = 0.1;
  int n_models = 10;
  int n_states = 10;
  TimingRule rule = TimingRule::Udd;
  std::uint64_t master_seed = 1;
  std::string basis = "default";
  StateClass states = StateClass::Pair;
  BathState bath = BathState::Haar;
  int n_spins = 5;
  /// Worker threads; 0 = hardware concurrency. Output does not depend on it.
  int jobs = 0;
  FlattenOptions flatten;
};

struct SweepRow {
  Ordering ordering;
  int n = 0;
  TimingRule rule = TimingRule::Udd;
  double mean_d = 0.0;
  double geo_mean_d = 0.0;
  double std_d = 0.0;  // sample standard deviation
  double min_d = 0.0;
  double max_d = 0.0;
  int runs = 0;
  int pulses_total = 0;  // pulse instants per run

  // Worst numerical health over the runs in this row.
  double max_norm_error = 0.0;
  double max_rho_hermiticity_error = 0.0;
  double max_rho_trace_error = 0.0;
  double min_rho_eigenvalue = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;

  /// nullptr when absent.
  const SweepRow* find(const Ordering& ordering, int n) const;
};

/// Sub-seeds: model i uses derive_seed(master, "model", i), state j uses
/// derive_seed(master, "state", j), bath (i, j) uses derive_seed(master,
/// "bath", i, j). Every (ordering, n) row sees the same model/state/bath
/// cross product.
SweepResult sweep(const SweepConfig& config);

/// The run a sweep performs for model `model_index` and state
/// `state_index` of the (ordering, n) cell, on its own. A non-null `model`
/// replaces the derived one (JSON replay); its bath and state seeds still
/// follow the indices.
RunResult sweep_run(const SweepConfig& config, const Ordering& ordering, int n, int model_index = 0,
                    int state_index = 0, const SpinBathModel* model = nullptr);

/// Forces the local convention and Haar states over the full system space;
/// defaults to the Z4-Z3-Z2-Z1 ordering when none is given.
SweepResult four_layer_sweep(SweepConfig config);

/// Header: ordering,N,rule,mean_d,geo_mean_d,std_d,min_d,max_d,runs,pulses_total
std::string to_csv(const SweepResult& result);
inline constexpr std::string_view kCsvHeader =
    "ordering,N,rule,mean_d,geo_mean_d,std_d,min_d,max_d,runs,pulses_total";

/// Frozen configurations: fig1, fig2, fig3, fourlayer.
SweepConfig preset(std::string_view name);
std::vector<std::string> preset_names();

struct FitConfig {
  Ordering ordering;
  int n = 1;
  std::vector<double> t_values;
  int n_models = 5;
  int n_states = 1;
  StateClass states = StateClass::Zero;
  BathState bath = BathState::Haar;
  TimingRule rule = TimingRule::Udd;
  std::uint64_t master_seed = 1;
  std::string basis = "default";
  int jobs = 0;
};

struct FitResult {
  /// All mean_d values below 1e-14; `slope` is then meaningless.
  bool below_noise_floor = false;
  double slope = 0.0;
  std::vector<double> t_values;
  std::vector<double> mean_d;
};

/// Least-squares slope of log(mean_d) against log(T).
FitResult fit_order(const FitConfig& config);

/// `count` log-spaced points from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, int count);

/// Ordinary least-squares slope of y against x.
double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Runs fn(0..count-1) on `jobs` threads (0 = hardware concurrency).
void parallel_for(size_t count, int jobs, const std::function<void(size_t)>& fn);

}  // namespace nudd
