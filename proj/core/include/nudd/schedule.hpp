#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nudd/linalg.hpp"
#include "nudd/operators.hpp"

namespace nudd {

enum class TimingRule { Udd, Periodic };

std::string_view rule_name(TimingRule r);
TimingRule parse_rule(std::string_view name);

struct LayerSpec {
  Control control;
  int n_pulses = 1;
  TimingRule rule = TimingRule::Udd;
};

/// layers[0] is the outermost (slowest) sequence, layers.back() the innermost.
struct LayeredSchedule {
  std::vector<LayerSpec> layers;
  double total_time = 0.0;

  /// Same n and rule for every layer.
  static LayeredSchedule uniform(const std::vector<Control>& outer_to_inner, int n, double total_time,
                                 TimingRule rule = TimingRule::Udd);
};

/// Free evolution for `duration`, then the listed pulses at its end.
/// `pulses` is in application order.
struct Event {
  double duration = 0.0;
  double time = 0.0;  // instant at which the drift ends
  std::vector<Control> pulses;
};

struct EventList {
  std::vector<Event> events;
  double total_time = 0.0;

  /// Instants at which at least one pulse fires.
  int pulse_instants() const;
  /// Individual layer pulses, counting coincident ones separately.
  int pulse_applications() const;
};

/// T_j = t_start + (t_end - t_start) sin^2(j pi / (2n + 2)), j = 1..n.
std::vector<double> udd_times(int n, double t_start, double t_end);
/// t_start + k (t_end - t_start) / (n + 1), k = 1..n.
std::vector<double> periodic_times(int n, double t_start, double t_end);
std::vector<double> layer_times(TimingRule rule, int n, double t_start, double t_end);

/// Pulse instants of each layer (outer first). Inner layers are generated
/// inside every interval of their parent, with 0 and T as outer endpoints.
/// Odd-n terminal pulses are not listed; they sit on parent endpoints.
std::vector<std::vector<double>> nested_times(const std::vector<LayerSpec>& layers, double total_time);

struct FlattenOptions {
  /// Coincident pulses: inner layer first (default) or outer layer first.
  bool inner_first = true;
};

/// Chronological event list. Odd-n layers add a pulse at the end of every
/// interval they govern.
EventList flatten(const LayeredSchedule& schedule, const FlattenOptions& options = {});

/// A single drift with no pulses.
EventList free_evolution(double total_time);

/// Product of pulses given in application order: P_k ... P_2 P_1.
CMat compose_coincident(const std::vector<CMat>& in_application_order);

/// "X0+X1" for coincident pulses, "none" for no pulse.
std::string pulse_label(const std::vector<Control>& pulses);

}  // namespace nudd
