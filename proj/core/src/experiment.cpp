#include "nudd/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "nudd/rng.hpp"

namespace nudd {

namespace {

constexpr double kNoiseFloor = 1e-14;

void validate(const SweepConfig& c) {
  if (c.orderings.empty()) throw std::invalid_argument("sweep: no orderings given");
  if (c.n_values.empty()) throw std::invalid_argument("sweep: no N values given");
  for (int n : c.n_values) {
    if (n < 1) throw std::invalid_argument("sweep: N must be >= 1");
  }
  if (!std::isfinite(c.total_time) || c.total_time < 0.0) {
    throw std::invalid_argument("sweep: T must be finite and non-negative");
  }
  if (c.n_models < 1 || c.n_states < 1) throw std::invalid_argument("sweep: models and states must be >= 1");
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

SystemState draw_system_state(StateClass cls, std::uint64_t seed, const BasisConvention& basis) {
  switch (cls) {
    case StateClass::Zero: return SystemState{basis.ket(0)};
    case StateClass::Pair: return random_protected_state(seed, basis);
    case StateClass::Full: return random_system_state(seed);
  }
  throw std::logic_error("draw_system_state: bad state class");
}

std::string_view bath_state_name(BathState b) {
  return b == BathState::Haar ? "haar" : "mixed";
}

BathState parse_bath_state(std::string_view name) {
  if (name == "haar") return BathState::Haar;
  if (name == "mixed") return BathState::Mixed;
  throw std::invalid_argument("unknown bath state '" + std::string(name) + "'");
}

std::string_view state_class_name(StateClass s) {
  switch (s) {
    case StateClass::Zero: return "zero";
    case StateClass::Pair: return "pair";
    case StateClass::Full: return "full";
  }
  return "?";
}

StateClass parse_state_class(std::string_view name) {
  if (name == "zero") return StateClass::Zero;
  if (name == "pair") return StateClass::Pair;
  if (name == "full") return StateClass::Full;
  throw std::invalid_argument("unknown state class '" + std::string(name) + "'");
}

std::string ordering_label(const Ordering& o) {
  if (o.empty()) return "none";
  std::string s;
  for (size_t k = 0; k < o.size(); ++k) {
    if (k) s += '-';
    s += control_name(o[k]);
  }
  return s;
}

Ordering parse_ordering(std::string_view text) {
  if (text == "none") return {};
  Ordering o;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find_first_of(",-", start);
    if (end == std::string_view::npos) end = text.size();
    const auto tok = text.substr(start, end - start);
    if (tok.empty()) throw std::invalid_argument("empty control name in ordering '" + std::string(text) + "'");
    o.push_back(parse_control(tok));
    start = end + 1;
  }
  return o;
}

const SweepRow* SweepResult::find(const Ordering& ordering, int n) const {
  for (const auto& r : rows) {
    if (r.ordering == ordering && r.n == n) return &r;
  }
  return nullptr;
}

void parallel_for(size_t count, int jobs, const std::function<void(size_t)>& fn) {
  size_t workers = jobs > 0 ? static_cast<size_t>(jobs) : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    for (size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (size_t i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            next = count;
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

SweepResult sweep(const SweepConfig& config) {
  validate(config);
  const BasisConvention basis = basis_by_name(config.basis);
  const PulseTable pulses = PulseTable::from_convention(basis);

  const auto n_models = static_cast<size_t>(config.n_models);
  const auto n_states = static_cast<size_t>(config.n_states);
  std::vector<SpinBathModel> models(n_models);
  parallel_for(n_models, config.jobs, [&](size_t i) {
    models[i] = build_model(config.n_spins, derive_seed(config.master_seed, "model", i));
  });
  std::vector<SystemState> states;
  std::vector<std::uint64_t> state_seeds;
  for (size_t j = 0; j < n_states; ++j) {
    state_seeds.push_back(derive_seed(config.master_seed, "state", j));
    states.push_back(draw_system_state(config.states, state_seeds.back(), basis));
  }
  std::vector<JointState> initial(n_models * n_states);
  std::vector<std::uint64_t> bath_seeds(n_models * n_states);
  for (size_t i = 0; i < n_models; ++i) {
    for (size_t j = 0; j < n_states; ++j) {
      bath_seeds[i * n_states + j] = derive_seed(config.master_seed, "bath", i, j);
      if (config.bath == BathState::Haar) {
        initial[i * n_states + j] =
            initial_joint_state(states[j], models[i].n_bath_spins(), bath_seeds[i * n_states + j]);
      }
    }
  }

  struct Cell {
    Ordering ordering;
    int n;
    EventList events;
  };
  std::vector<Cell> cells;
  for (const auto& o : config.orderings) {
    for (int n : config.n_values) {
      EventList ev = o.empty()
          ? free_evolution(config.total_time)
          : flatten(LayeredSchedule::uniform(o, n, config.total_time, config.rule), config.flatten);
      cells.push_back({o, n, std::move(ev)});
    }
  }

  const size_t per_cell = n_models * n_states;
  std::vector<RunResult> runs(cells.size() * per_cell);
  parallel_for(runs.size(), config.jobs, [&](size_t task) {
    const size_t cell = task / per_cell;
    const size_t i = (task % per_cell) / n_states;
    const size_t j = task % n_states;
    RunResult r = config.bath == BathState::Haar
        ? run_events(models[i], cells[cell].events, states[j], initial[i * n_states + j], pulses)
        : run_events_mixed_bath(models[i], cells[cell].events, states[j], pulses);
    r.ordering = cells[cell].ordering;
    r.n = cells[cell].n;
    r.rule = config.rule;
    r.bath_seed = bath_seeds[i * n_states + j];
    r.state_seed = state_seeds[j];
    runs[task] = std::move(r);
  });

  SweepResult out;
  for (size_t cell = 0; cell < cells.size(); ++cell) {
    SweepRow row;
    row.ordering = cells[cell].ordering;
    row.n = cells[cell].n;
    row.rule = config.rule;
    row.runs = static_cast<int>(per_cell);
    row.pulses_total = cells[cell].events.pulse_instants();
    row.min_d = std::numeric_limits<double>::infinity();
    row.max_d = -std::numeric_limits<double>::infinity();
    row.min_rho_eigenvalue = std::numeric_limits<double>::infinity();
    double sum = 0.0;
    double log_sum = 0.0;
    for (size_t k = 0; k < per_cell; ++k) {
      const RunResult& r = runs[cell * per_cell + k];
      sum += r.d_value;
      log_sum += std::log(std::max(r.d_value, 1e-300));
      row.min_d = std::min(row.min_d, r.d_value);
      row.max_d = std::max(row.max_d, r.d_value);
      row.max_norm_error = std::max(row.max_norm_error, r.norm_error);
      row.max_rho_hermiticity_error = std::max(row.max_rho_hermiticity_error, r.rho_hermiticity_error);
      row.max_rho_trace_error = std::max(row.max_rho_trace_error, r.rho_trace_error);
      row.min_rho_eigenvalue = std::min(row.min_rho_eigenvalue, r.rho_min_eigenvalue);
    }
    const double count = static_cast<double>(per_cell);
    row.mean_d = sum / count;
    row.geo_mean_d = std::exp(log_sum / count);
    double var = 0.0;
    for (size_t k = 0; k < per_cell; ++k) {
      const double dev = runs[cell * per_cell + k].d_value - row.mean_d;
      var += dev * dev;
    }
    row.std_d = per_cell > 1 ? std::sqrt(var / (count - 1.0)) : 0.0;
    out.rows.push_back(std::move(row));
  }
  return out;
}

RunResult sweep_run(const SweepConfig& config, const Ordering& ordering, int n, int model_index,
                    int state_index, const SpinBathModel* model) {
  if (n < 1) throw std::invalid_argument("sweep_run: N must be >= 1");
  if (model_index < 0 || state_index < 0) throw std::invalid_argument("sweep_run: negative index");
  const BasisConvention basis = basis_by_name(config.basis);
  const auto i = static_cast<std::uint64_t>(model_index);
  const auto j = static_cast<std::uint64_t>(state_index);
  SpinBathModel built;
  if (model == nullptr) {
    built = build_model(config.n_spins, derive_seed(config.master_seed, "model", i));
    model = &built;
  }
  const std::uint64_t state_seed = derive_seed(config.master_seed, "state", j);
  const std::uint64_t bath_seed = derive_seed(config.master_seed, "bath", i, j);
  const SystemState sys = draw_system_state(config.states, state_seed, basis);
  const EventList events = ordering.empty()
      ? free_evolution(config.total_time)
      : flatten(LayeredSchedule::uniform(ordering, n, config.total_time, config.rule), config.flatten);
  const PulseTable pulses = PulseTable::from_convention(basis);
  RunResult r = config.bath == BathState::Haar
      ? run_events(*model, events, sys, initial_joint_state(sys, model->n_bath_spins(), bath_seed), pulses)
      : run_events_mixed_bath(*model, events, sys, pulses);
  r.ordering = ordering;
  r.n = n;
  r.rule = config.rule;
  r.bath_seed = bath_seed;
  r.state_seed = state_seed;
  return r;
}

SweepResult four_layer_sweep(SweepConfig config) {
  config.basis = "local";
  config.states = StateClass::Full;
  if (config.orderings.empty()) {
    config.orderings = {{Control::Z4, Control::Z3, Control::Z2, Control::Z1}};
  }
  for (const auto& o : config.orderings) {
    for (Control c : o) {
      if (c != Control::Z1 && c != Control::Z2 && c != Control::Z3 && c != Control::Z4) {
        throw std::invalid_argument("four_layer_sweep: orderings may only use Z1..Z4");
      }
    }
  }
  return sweep(config);
}

std::string to_csv(const SweepResult& result) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (const auto& r : result.rows) {
    os << ordering_label(r.ordering) << ',' << r.n << ',' << rule_name(r.rule) << ','
       << fmt_double(r.mean_d) << ',' << fmt_double(r.geo_mean_d) << ',' << fmt_double(r.std_d) << ','
       << fmt_double(r.min_d) << ',' << fmt_double(r.max_d) << ',' << r.runs << ',' << r.pulses_total
       << '\n';
  }
  return os.str();
}

SweepConfig preset(std::string_view name) {
  using C = Control;
  SweepConfig c;
  c.master_seed = 20100;
  if (name == "fig1" || name == "fig2") {
    c.orderings = {{C::Xphi, C::X1, C::X0}, {C::Xphi, C::X0, C::X1}, {C::X0, C::Xphi, C::X1},
                   {C::X1, C::Xphi, C::X0}, {C::X0, C::X1, C::Xphi}, {C::X1, C::X0, C::Xphi}};
    c.rule = name == "fig1" ? TimingRule::Udd : TimingRule::Periodic;
  } else if (name == "fig3") {
    c.orderings = {{C::Xphi, C::X1, C::X01}, {C::Xphi, C::X01, C::X1}, {C::X1, C::Xphi, C::X01},
                   {C::X1, C::X01, C::Xphi}, {C::X01, C::X1, C::Xphi}, {C::X01, C::Xphi, C::X1}};
  } else if (name == "fourlayer") {
    c.orderings = {{C::Z4, C::Z3, C::Z2, C::Z1}, {C::Z4, C::Z1, C::Z2, C::Z3}, {C::Z1, C::Z2, C::Z3, C::Z4}};
    c.n_values = {1, 2, 3, 4, 5, 6};
    c.basis = "local";
    c.states = StateClass::Full;
  } else {
    throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
  }
  return c;
}

std::vector<std::string> preset_names() { return {"fig1", "fig2", "fig3", "fourlayer"}; }

std::vector<double> log_grid(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) throw std::invalid_argument("log_grid: need 0 < lo < hi, count >= 2");
  std::vector<double> out(static_cast<size_t>(count));
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int k = 0; k < count; ++k) out[static_cast<size_t>(k)] = std::exp(a + (b - a) * k / (count - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("least_squares_slope: need >= 2 points");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (size_t k = 0; k < x.size(); ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("least_squares_slope: x values are all equal");
  return sxy / sxx;
}

FitResult fit_order(const FitConfig& config) {
  if (config.t_values.size() < 2) throw std::invalid_argument("fit_order: need at least two T values");
  FitResult out;
  out.t_values = config.t_values;
  for (double t : config.t_values) {
    SweepConfig sc;
    sc.orderings = {config.ordering};
    sc.n_values = {config.n};
    sc.total_time = t;
    sc.n_models = config.n_models;
    sc.n_states = config.n_states;
    sc.rule = config.rule;
    sc.master_seed = config.master_seed;
    sc.basis = config.basis;
    sc.states = config.states;
    sc.bath = config.bath;
    sc.jobs = config.jobs;
    out.mean_d.push_back(sweep(sc).rows.front().mean_d);
  }
  std::vector<double> lx;
  std::vector<double> ly;
  for (size_t k = 0; k < out.t_values.size(); ++k) {
    if (out.mean_d[k] < kNoiseFloor) continue;
    lx.push_back(std::log(out.t_values[k]));
    ly.push_back(std::log(out.mean_d[k]));
  }
  if (lx.size() < 2) {
    out.below_noise_floor = true;
    return out;
  }
  out.slope = least_squares_slope(lx, ly);
  return out;
}

}  // namespace nudd
