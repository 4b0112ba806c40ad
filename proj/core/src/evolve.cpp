#include "nudd/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nudd {

namespace {
constexpr double kNormFaultTol = 1e-8;
}

PulseTable PulseTable::from_convention(const BasisConvention& basis) {
  PulseTable t;
  for (Control c : kAllControls) t[c] = build_control(c, basis).sys;
  return t;
}

void apply_system_operator(const CMat& op, CVec& psi, Eigen::Index bath_dim) {
  if (op.rows() != kSysDim || op.cols() != kSysDim || psi.size() != kSysDim * bath_dim) {
    throw std::invalid_argument("apply_system_operator: dimension mismatch");
  }
  Eigen::Map<Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> amps(
      psi.data(), kSysDim, bath_dim);
  amps = op * amps;
}

JointState evolve(const SpinBathModel& model, const EventList& events, const JointState& psi0,
                  const PulseTable& pulses, EvolveStats* stats) {
  if (psi0.amplitudes.size() != model.dim()) {
    throw std::invalid_argument("evolve: state and model dimensions differ");
  }
  CVec psi = psi0.amplitudes;
  CVec scratch(model.dim());
  const Eigen::Index bath_dim = model.bath_dim();
  for (const auto& e : events.events) {
    apply_propagator(model.eig, e.duration, psi, scratch);
    for (Control c : e.pulses) apply_system_operator(pulses[c], psi, bath_dim);
  }
  const double norm_error = std::abs(psi.norm() - 1.0);
  if (!(norm_error <= kNormFaultTol)) {
    throw NumericalFault("evolve: state norm drifted by " + std::to_string(norm_error));
  }
  if (stats) stats->norm_error = norm_error;
  return JointState{std::move(psi)};
}

namespace {

RunResult measure(const SpinBathModel& model, const EventList& events, const SystemState& sys,
                  const CMat& rho, double norm_error) {
  RunResult r;
  r.total_time = events.total_time;
  r.pulse_count = events.pulse_instants();
  r.model_seed = model.seed;
  r.norm_error = norm_error;
  r.rho_hermiticity_error = hermiticity_error(rho);
  r.rho_trace_error = std::abs(rho.trace() - 1.0);
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
  r.rho_min_eigenvalue = es.eigenvalues().minCoeff();
  r.d_value = trace_distance(rho, sys.projector());
  return r;
}

}  // namespace

RunResult run_events(const SpinBathModel& model, const EventList& events, const SystemState& sys,
                     const JointState& psi0, const PulseTable& pulses) {
  EvolveStats stats;
  const JointState final_state = evolve(model, events, psi0, pulses, &stats);
  const CMat rho = reduced_density(final_state.amplitudes, kSysDim, model.bath_dim());
  return measure(model, events, sys, rho, stats.norm_error);
}

RunResult run_events_mixed_bath(const SpinBathModel& model, const EventList& events,
                                const SystemState& sys, const PulseTable& pulses) {
  const Eigen::Index bath_dim = model.bath_dim();
  CMat rho = CMat::Zero(kSysDim, kSysDim);
  double norm_error = 0.0;
  for (Eigen::Index k = 0; k < bath_dim; ++k) {
    CVec bath = CVec::Zero(bath_dim);
    bath(k) = 1.0;
    EvolveStats stats;
    const JointState out = evolve(model, events, initial_joint_state(sys, bath), pulses, &stats);
    rho += reduced_density(out.amplitudes, kSysDim, bath_dim);
    norm_error = std::max(norm_error, stats.norm_error);
  }
  rho /= static_cast<double>(bath_dim);
  return measure(model, events, sys, rho, norm_error);
}

RunResult run_once(const SpinBathModel& model, const LayeredSchedule& schedule,
                   const SystemState& sys, std::uint64_t bath_seed, const BasisConvention& basis,
                   const FlattenOptions& options) {
  const EventList events = schedule.layers.empty() ? free_evolution(schedule.total_time)
                                                   : flatten(schedule, options);
  const JointState psi0 = initial_joint_state(sys, model.n_bath_spins(), bath_seed);
  RunResult r = run_events(model, events, sys, psi0, PulseTable::from_convention(basis));
  for (const auto& l : schedule.layers) r.ordering.push_back(l.control);
  if (!schedule.layers.empty()) {
    r.n = schedule.layers.front().n_pulses;
    r.rule = schedule.layers.front().rule;
  }
  r.bath_seed = bath_seed;
  return r;
}

}  // namespace nudd
