#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "nudd/linalg.hpp"
#include "nudd/model.hpp"
#include "nudd/operators.hpp"
#include "nudd/schedule.hpp"

namespace nudd {

/// System pulse unitary for every named control. The pi-pulse
/// exp(-i pi X / 2) = -iX is represented by X: the dropped global phase
/// does not reach any reduced density matrix.
struct PulseTable {
  std::array<CMat, kAllControls.size()> ops;

  static PulseTable from_convention(const BasisConvention& basis);
  const CMat& operator[](Control c) const { return ops[static_cast<size_t>(c)]; }
  CMat& operator[](Control c) { return ops[static_cast<size_t>(c)]; }
};

/// psi <- (op (x) I_bath) psi for a 4x4 system operator.
void apply_system_operator(const CMat& op, CVec& psi, Eigen::Index bath_dim);

struct EvolveStats {
  /// | |psi_final| - 1 |
  double norm_error = 0.0;
};

/// Alternates cached-eigenbasis drifts and pulses in event order.
/// Throws NumericalFault when the final norm drifts by more than 1e-8.
JointState evolve(const SpinBathModel& model, const EventList& events, const JointState& psi0,
                  const PulseTable& pulses, EvolveStats* stats = nullptr);

struct RunResult {
  std::vector<Control> ordering;  // outer to inner; empty for free evolution
  int n = 0;
  double total_time = 0.0;
  TimingRule rule = TimingRule::Udd;
  double d_value = 0.0;
  std::uint64_t model_seed = 0;
  std::uint64_t bath_seed = 0;
  std::uint64_t state_seed = 0;
  int pulse_count = 0;

  // Numerical health of the run.
  double norm_error = 0.0;
  double rho_hermiticity_error = 0.0;
  double rho_trace_error = 0.0;
  double rho_min_eigenvalue = 0.0;
};

/// Trace distance between the final reduced system state and the initial
/// system projector, for an already flattened event list.
RunResult run_events(const SpinBathModel& model, const EventList& events, const SystemState& sys,
                     const JointState& psi0, const PulseTable& pulses);

/// Same measurement with the bath in the maximally mixed state: the reduced
/// state is averaged over runs started from every bath basis state.
RunResult run_events_mixed_bath(const SpinBathModel& model, const EventList& events,
                                const SystemState& sys, const PulseTable& pulses);

/// Flattens `schedule`, starts from sys (x) Haar bath(bath_seed) and
/// measures the trace distance at the end. Seeds other than the bath seed
/// are copied from `model` and left zero otherwise; callers fill them in.
RunResult run_once(const SpinBathModel& model, const LayeredSchedule& schedule,
                   const SystemState& sys, std::uint64_t bath_seed, const BasisConvention& basis,
                   const FlattenOptions& options = {});

}  // namespace nudd
