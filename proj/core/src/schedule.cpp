#include "nudd/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nudd {

namespace {

void check_interval(int n, double t_start, double t_end) {
  if (n < 1) throw std::invalid_argument("pulse count must be at least 1");
  if (!std::isfinite(t_start) || !std::isfinite(t_end) || !(t_end > t_start)) {
    throw std::invalid_argument("interval must satisfy t_end > t_start");
  }
}

struct Atom {
  bool is_drift;
  double a;
  double b;
  Control control;
};

void emit(const std::vector<LayerSpec>& layers, size_t depth, double a, double b,
          std::vector<Atom>& out) {
  if (depth == layers.size()) {
    out.push_back({true, a, b, Control::X0});
    return;
  }
  const LayerSpec& layer = layers[depth];
  std::vector<double> pts;
  pts.reserve(static_cast<size_t>(layer.n_pulses) + 2);
  pts.push_back(a);
  const auto inner = layer_times(layer.rule, layer.n_pulses, a, b);
  pts.insert(pts.end(), inner.begin(), inner.end());
  pts.push_back(b);
  for (size_t j = 0; j + 1 < pts.size(); ++j) {
    emit(layers, depth + 1, pts[j], pts[j + 1], out);
    if (j + 2 < pts.size()) out.push_back({false, pts[j + 1], pts[j + 1], layer.control});
  }
  if (layer.n_pulses % 2 == 1) out.push_back({false, b, b, layer.control});
}

}  // namespace

std::string_view rule_name(TimingRule r) { return r == TimingRule::Udd ? "udd" : "periodic"; }

TimingRule parse_rule(std::string_view name) {
  if (name == "udd") return TimingRule::Udd;
  if (name == "periodic") return TimingRule::Periodic;
  throw std::invalid_argument("unknown timing rule '" + std::string(name) + "'");
}

LayeredSchedule LayeredSchedule::uniform(const std::vector<Control>& outer_to_inner, int n,
                                         double total_time, TimingRule rule) {
  LayeredSchedule s;
  s.total_time = total_time;
  for (Control c : outer_to_inner) s.layers.push_back({c, n, rule});
  return s;
}

int EventList::pulse_instants() const {
  return static_cast<int>(std::count_if(events.begin(), events.end(),
                                        [](const Event& e) { return !e.pulses.empty(); }));
}

int EventList::pulse_applications() const {
  int n = 0;
  for (const auto& e : events) n += static_cast<int>(e.pulses.size());
  return n;
}

std::vector<double> udd_times(int n, double t_start, double t_end) {
  check_interval(n, t_start, t_end);
  std::vector<double> t(static_cast<size_t>(n));
  const double span = t_end - t_start;
  for (int j = 1; j <= n; ++j) {
    const double s = std::sin(j * std::numbers::pi / (2.0 * n + 2.0));
    t[static_cast<size_t>(j - 1)] = t_start + span * s * s;
  }
  return t;
}

std::vector<double> periodic_times(int n, double t_start, double t_end) {
  check_interval(n, t_start, t_end);
  std::vector<double> t(static_cast<size_t>(n));
  const double span = t_end - t_start;
  for (int k = 1; k <= n; ++k) t[static_cast<size_t>(k - 1)] = t_start + span * k / (n + 1.0);
  return t;
}

std::vector<double> layer_times(TimingRule rule, int n, double t_start, double t_end) {
  return rule == TimingRule::Udd ? udd_times(n, t_start, t_end) : periodic_times(n, t_start, t_end);
}

std::vector<std::vector<double>> nested_times(const std::vector<LayerSpec>& layers, double total_time) {
  if (layers.empty()) throw std::invalid_argument("nested_times: need at least one layer");
  std::vector<std::vector<double>> out;
  std::vector<double> parent_pts = {0.0, total_time};
  for (const auto& layer : layers) {
    std::vector<double> times;
    std::vector<double> pts;
    for (size_t j = 0; j + 1 < parent_pts.size(); ++j) {
      const auto t = layer_times(layer.rule, layer.n_pulses, parent_pts[j], parent_pts[j + 1]);
      times.insert(times.end(), t.begin(), t.end());
      pts.push_back(parent_pts[j]);
      pts.insert(pts.end(), t.begin(), t.end());
    }
    pts.push_back(total_time);
    out.push_back(std::move(times));
    parent_pts = std::move(pts);
  }
  return out;
}

EventList flatten(const LayeredSchedule& schedule, const FlattenOptions& options) {
  if (schedule.layers.empty()) throw std::invalid_argument("flatten: schedule has no layers");
  if (!std::isfinite(schedule.total_time) || schedule.total_time < 0.0) {
    throw std::invalid_argument("flatten: total time must be finite and non-negative");
  }
  for (const auto& l : schedule.layers) {
    if (l.n_pulses < 1) throw std::invalid_argument("flatten: every layer needs n >= 1");
  }
  if (schedule.total_time == 0.0) return free_evolution(0.0);

  std::vector<Atom> atoms;
  emit(schedule.layers, 0, 0.0, schedule.total_time, atoms);

  EventList list;
  list.total_time = schedule.total_time;
  for (const auto& atom : atoms) {
    if (atom.is_drift) {
      list.events.push_back({atom.b - atom.a, atom.b, {}});
    } else {
      list.events.back().pulses.push_back(atom.control);
    }
  }
  if (!options.inner_first) {
    for (auto& e : list.events) std::reverse(e.pulses.begin(), e.pulses.end());
  }
  return list;
}

EventList free_evolution(double total_time) {
  if (!std::isfinite(total_time) || total_time < 0.0) {
    throw std::invalid_argument("free_evolution: total time must be finite and non-negative");
  }
  return EventList{{Event{total_time, total_time, {}}}, total_time};
}

CMat compose_coincident(const std::vector<CMat>& in_application_order) {
  if (in_application_order.empty()) throw std::invalid_argument("compose_coincident: no pulses");
  CMat u = in_application_order.front();
  for (size_t k = 1; k < in_application_order.size(); ++k) u = in_application_order[k] * u;
  return u;
}

std::string pulse_label(const std::vector<Control>& pulses) {
  if (pulses.empty()) return "none";
  std::string s;
  for (size_t k = 0; k < pulses.size(); ++k) {
    if (k) s += '+';
    s += control_name(pulses[k]);
  }
  return s;
}

}  // namespace nudd
