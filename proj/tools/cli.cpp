#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "nudd/algebra.hpp"
#include "nudd/experiment.hpp"
#include "nudd/linalg.hpp"
#include "nudd/model.hpp"
#include "nudd/rng.hpp"
#include "nudd/schedule.hpp"

namespace nudd::cli {

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    const size_t pos = text.find(sep, start);
    parts.push_back(trim(text.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

int to_int(const std::string& s) {
  size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw UsageError("not an integer: '" + s + "'");
  return v;
}

double to_real(const std::string& s) {
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw UsageError("not a number: '" + s + "'");
  return v;
}

// Every option a subcommand understands, flags and config keys alike.
struct Options {
  std::string config;
  std::string out;
  std::string layers;
  std::vector<std::string> ordering;
  std::string n;
  std::string t;
  std::string rule;
  std::optional<int> models;
  std::optional<int> states;
  std::optional<std::uint64_t> seed;
  std::string basis;
  std::string preset;
  int jobs = 0;
  std::string state;
  std::string bath;
  std::string family = "Y";
  std::string model_path;
  std::string dump_model;
};

// Turns the JSON config into flag tokens. Keys also given on the command
// line are skipped so the command line wins.
std::vector<std::string> config_tokens(const std::string& path, const CLI::App& sub,
                                       const std::vector<std::string>& given) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config file '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw UsageError("config file must hold a JSON object");

  auto scalar = [](const nlohmann::json& v, const std::string& key) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) return fmt(v.get<double>());
    throw UsageError("config key '" + key + "' has an unsupported value");
  };

  std::vector<std::string> tokens;
  for (const auto& [key, value] : j.items()) {
    const std::string flag = "--" + key;
    if (key == "config" || sub.get_option_no_throw(flag) == nullptr) {
      throw UsageError("unknown config key '" + key + "' for '" + sub.get_name() + "'");
    }
    if (std::find(given.begin(), given.end(), flag) != given.end()) continue;
    if (value.is_array()) {
      if (key == "ordering") {
        // ["Xphi", "X1", "X0"] is one ordering; ["Xphi-X1-X0", ...] or
        // [["Xphi", "X1", "X0"], ...] lists several.
        const bool flat = std::all_of(value.begin(), value.end(), [](const nlohmann::json& item) {
          return item.is_string() && item.get<std::string>().find_first_of(",-") == std::string::npos;
        });
        if (flat && !value.empty()) {
          std::string label;
          for (const auto& c : value) label += (label.empty() ? "" : "-") + c.get<std::string>();
          tokens.push_back(flag);
          tokens.push_back(label);
          continue;
        }
        for (const auto& item : value) {
          std::string label;
          if (item.is_array()) {
            for (const auto& c : item) label += (label.empty() ? "" : "-") + scalar(c, key);
          } else {
            label = scalar(item, key);
          }
          tokens.push_back(flag);
          tokens.push_back(label);
        }
      } else {
        std::string joined;
        for (const auto& item : value) joined += (joined.empty() ? "" : ",") + scalar(item, key);
        tokens.push_back(flag);
        tokens.push_back(joined);
      }
    } else {
      tokens.push_back(flag);
      tokens.push_back(scalar(value, key));
    }
  }
  return tokens;
}

std::vector<Control> parse_layers(const std::string& text) {
  std::vector<Control> layers;
  for (const auto& part : split(text, ',')) layers.push_back(parse_control(part));
  return layers;
}

int single_n(const std::string& text, int fallback) {
  if (text.empty()) return fallback;
  const auto values = parse_int_list(text);
  if (values.size() != 1) throw UsageError("--n must be a single value here");
  return values.front();
}

double single_t(const std::string& text, double fallback) {
  if (text.empty()) return fallback;
  const auto values = parse_real_list(text);
  if (values.size() != 1) throw UsageError("--T must be a single value here");
  return values.front();
}

void cmd_timing(const Options& o, std::ostream& out) {
  if (o.layers.empty()) throw UsageError("timing: --layers is required");
  const auto layers = parse_layers(o.layers);
  const auto schedule = LayeredSchedule::uniform(layers, single_n(o.n, 1), single_t(o.t, 1.0),
                                                 parse_rule(o.rule.empty() ? "udd" : o.rule));
  const EventList events = flatten(schedule);
  out << "event_index,time,duration,pulse_name\n";
  int index = 0;
  for (const Event& e : events.events) {
    if (e.pulses.empty()) continue;
    out << index++ << ',' << fmt(e.time) << ',' << fmt(e.duration) << ',' << pulse_label(e.pulses)
        << '\n';
  }
}

void cmd_algebra(const Options& o, std::ostream& out) {
  if (o.ordering.empty()) throw UsageError("algebra: --ordering is required");
  Family family;
  if (o.family == "Y") {
    family = Family::Y;
  } else if (o.family == "Yt") {
    family = Family::YTilde;
  } else {
    throw UsageError("--family must be Y or Yt");
  }
  const AlgebraAnalyzer analyzer(basis_by_name(o.basis.empty() ? "default" : o.basis));
  bool first = true;
  for (const auto& text : o.ordering) {
    const Ordering ordering = parse_ordering(text);
    if (!first) out << '\n';
    first = false;
    out << "ordering " << ordering_label(ordering) << '\n';
    out << analyzer.render(analyzer.predict_chain(ordering), family);
  }
}

SweepConfig base_config(const Options& o) {
  SweepConfig c = o.preset.empty() ? SweepConfig{} : preset(o.preset);
  if (!o.ordering.empty()) {
    c.orderings.clear();
    for (const auto& text : o.ordering) c.orderings.push_back(parse_ordering(text));
  }
  if (!o.n.empty()) c.n_values = parse_int_list(o.n);
  if (!o.t.empty()) c.total_time = single_t(o.t, c.total_time);
  if (!o.rule.empty()) c.rule = parse_rule(o.rule);
  if (o.models) c.n_models = *o.models;
  if (o.states) c.n_states = *o.states;
  if (o.seed) c.master_seed = *o.seed;
  if (!o.basis.empty()) c.basis = o.basis;
  if (!o.state.empty()) c.states = parse_state_class(o.state);
  if (!o.bath.empty()) c.bath = parse_bath_state(o.bath);
  c.jobs = o.jobs;
  return c;
}

void cmd_run(const Options& o, std::ostream& out) {
  if (o.ordering.size() > 1) throw UsageError("run: give one --ordering");
  const SweepConfig c = base_config(o);
  const Ordering ordering = o.ordering.empty() ? Ordering{} : parse_ordering(o.ordering.front());
  const int n = single_n(o.n, 1);

  std::optional<SpinBathModel> replay;
  if (!o.model_path.empty()) {
    std::ifstream in(o.model_path);
    if (!in) throw UsageError("cannot read model file '" + o.model_path + "'");
    std::stringstream text;
    text << in.rdbuf();
    replay = model_from_json(text.str());
  }
  if (!o.dump_model.empty()) {
    const SpinBathModel m =
        replay ? *replay : build_model(c.n_spins, derive_seed(c.master_seed, "model", 0));
    std::ofstream dump(o.dump_model);
    if (!dump) throw UsageError("cannot write model file '" + o.dump_model + "'");
    dump << model_to_json(m) << '\n';
  }

  const RunResult r = sweep_run(c, ordering, n, 0, 0, replay ? &*replay : nullptr);
  out << "ordering,N,rule,T,d_value,model_seed,state_seed,bath_seed,pulse_count,norm_error\n";
  out << ordering_label(r.ordering) << ',' << r.n << ',' << rule_name(r.rule) << ','
      << fmt(r.total_time) << ',' << fmt(r.d_value) << ',' << r.model_seed << ',' << r.state_seed
      << ',' << r.bath_seed << ',' << r.pulse_count << ',' << fmt(r.norm_error) << '\n';
}

void cmd_sweep(const Options& o, std::ostream& out) {
  const SweepConfig c = base_config(o);
  if (c.orderings.empty()) throw UsageError("sweep: give --ordering or --preset");
  out << to_csv(sweep(c));
}

void cmd_fit(const Options& o, std::ostream& out) {
  if (o.ordering.size() > 1) throw UsageError("fit: give one --ordering");
  FitConfig f;
  f.ordering = o.ordering.empty() ? Ordering{} : parse_ordering(o.ordering.front());
  f.n = single_n(o.n, 1);
  f.t_values = o.t.empty() ? log_grid(0.01, 0.1, 8) : parse_real_list(o.t);
  if (o.models) f.n_models = *o.models;
  if (o.states) f.n_states = *o.states;
  if (o.seed) f.master_seed = *o.seed;
  if (!o.basis.empty()) f.basis = o.basis;
  if (!o.state.empty()) f.states = parse_state_class(o.state);
  if (!o.rule.empty()) f.rule = parse_rule(o.rule);
  if (!o.bath.empty()) f.bath = parse_bath_state(o.bath);
  f.jobs = o.jobs;
  const FitResult r = fit_order(f);
  out << "T,mean_d\n";
  for (size_t k = 0; k < r.t_values.size(); ++k) out << fmt(r.t_values[k]) << ',' << fmt(r.mean_d[k]) << '\n';
  if (r.below_noise_floor) {
    out << "# below noise floor\n";
  } else {
    out << "# slope " << fmt(r.slope) << '\n';
  }
}

}  // namespace

std::vector<int> parse_int_list(std::string_view text) {
  const std::string s = trim(text);
  if (s.empty()) throw UsageError("empty integer list");
  for (std::string_view sep : {"..", ":"}) {
    const auto pos = s.find(sep);
    if (pos != std::string::npos) {
      const int lo = to_int(trim(s.substr(0, pos)));
      const int hi = to_int(trim(s.substr(pos + sep.size())));
      if (hi < lo) throw UsageError("empty range '" + s + "'");
      std::vector<int> v;
      for (int k = lo; k <= hi; ++k) v.push_back(k);
      return v;
    }
  }
  std::vector<int> v;
  for (const auto& part : split(s, ',')) v.push_back(to_int(part));
  return v;
}

std::vector<double> parse_real_list(std::string_view text) {
  const std::string s = trim(text);
  if (s.empty()) throw UsageError("empty number list");
  std::vector<double> v;
  for (const auto& part : split(s, ',')) v.push_back(to_real(part));
  return v;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nested UDD simulator and operator-algebra analyzer", "nudd"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "JSON file whose keys match the flag names");
    sub->add_option("--out", o.out, "Write results here instead of standard output");
  };
  auto add_schedule = [&](CLI::App* sub) {
    sub->add_option("--n", o.n, "Pulses per layer: 5, 1,2,5 or 1..10");
    sub->add_option("--T", o.t, "Total time");
    sub->add_option("--rule", o.rule, "udd or periodic");
  };
  auto add_ensemble = [&](CLI::App* sub) {
    sub->add_option("--ordering", o.ordering, "Layers outer to inner, e.g. Xphi,X1,X0 (repeatable)");
    sub->add_option("--models", o.models, "Random models");
    sub->add_option("--states", o.states, "Initial states per model");
    sub->add_option("--seed", o.seed, "Master seed");
    sub->add_option("--basis", o.basis, "default, local or default-swapped");
    sub->add_option("--state", o.state, "zero, pair or full");
    sub->add_option("--bath", o.bath, "Initial bath: haar or mixed");
    sub->add_option("--jobs", o.jobs, "Worker threads (0 = all cores)");
  };

  auto* timing = app.add_subcommand("timing", "Print the flattened pulse schedule as CSV");
  add_common(timing);
  add_schedule(timing);
  timing->add_option("--layers", o.layers, "Layers outer to inner, e.g. X0,X1");

  auto* algebra = app.add_subcommand("algebra", "Predict the reduction chain of an ordering");
  add_common(algebra);
  algebra->add_option("--ordering", o.ordering, "Layers outer to inner (repeatable)");
  algebra->add_option("--basis", o.basis, "default, local or default-swapped");
  algebra->add_option("--family", o.family, "Label family: Y or Yt");

  auto* run_cmd = app.add_subcommand("run", "Single run: one model, one state");
  add_common(run_cmd);
  add_schedule(run_cmd);
  add_ensemble(run_cmd);
  run_cmd->add_option("--model", o.model_path, "Replay model coefficients from JSON");
  run_cmd->add_option("--dump-model", o.dump_model, "Write the model used as JSON");

  auto* sweep_cmd = app.add_subcommand("sweep", "Averaged trace distance per (ordering, N)");
  add_common(sweep_cmd);
  add_schedule(sweep_cmd);
  add_ensemble(sweep_cmd);
  sweep_cmd->add_option("--preset", o.preset, "fig1, fig2, fig3 or fourlayer");

  auto* fit = app.add_subcommand("fit", "Slope of log mean_d against log T");
  add_common(fit);
  add_schedule(fit);
  add_ensemble(fit);

  try {
    std::vector<std::string> argv = args;
    CLI::App* sub = argv.empty() ? nullptr : app.get_subcommand_no_throw(argv.front());
    if (sub != nullptr) {
      std::vector<std::string> given;
      std::string config_path;
      for (size_t k = 1; k < argv.size(); ++k) {
        const std::string& a = argv[k];
        if (a.rfind("--", 0) != 0) continue;
        const auto eq = a.find('=');
        given.push_back(a.substr(0, eq));
        if (given.back() == "--config") {
          if (eq != std::string::npos) {
            config_path = a.substr(eq + 1);
          } else if (k + 1 < argv.size()) {
            config_path = argv[k + 1];
          }
        }
      }
      if (!config_path.empty()) {
        const auto extra = config_tokens(config_path, *sub, given);
        argv.insert(argv.begin() + 1, extra.begin(), extra.end());
      }
    }
    std::reverse(argv.begin(), argv.end());
    app.parse(argv);

    std::ofstream file;
    std::ostream* sink = &out;
    if (!o.out.empty()) {
      file.open(o.out);
      if (!file) throw UsageError("cannot write '" + o.out + "'");
      sink = &file;
    }

    if (timing->parsed()) cmd_timing(o, *sink);
    if (algebra->parsed()) cmd_algebra(o, *sink);
    if (run_cmd->parsed()) cmd_run(o, *sink);
    if (sweep_cmd->parsed()) cmd_sweep(o, *sink);
    if (fit->parsed()) cmd_fit(o, *sink);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const NumericalFault& e) {
    err << "numerical fault: " << e.what() << '\n';
    return kExitNumericalFault;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumericalFault;
  }
}

}  // namespace nudd::cli
