#include "lockeval/harness/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "lockeval/error.hpp"
#include "lockeval/harness/sweeps.hpp"
#include "lockeval/util/text.hpp"

namespace lockeval {

namespace {

constexpr std::pair<TaskType, std::string_view> kTaskNames[] = {
    {TaskType::KeyCor, "keycor"},
    {TaskType::Cor, "cor"},
    {TaskType::Pmc, "pmc"},
    {TaskType::Saturation, "saturation"},
    {TaskType::Bias, "bias"},
    {TaskType::Incremental, "incremental"},
    {TaskType::Pareto, "pareto"},
};

std::vector<std::string> list(std::string_view value) {
  std::vector<std::string> out;
  for (const auto& item : text::split(value, ',')) {
    const auto t = text::trim(item);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

template <class T>
T number(std::string_view value, std::size_t line) {
  const auto v = text::parse_number<T>(value);
  if (!v) throw ParseError("bad number '" + std::string(value) + "'", line);
  return *v;
}

template <class T>
std::vector<T> numbers(std::string_view value, std::size_t line) {
  std::vector<T> out;
  for (const auto& item : list(value)) out.push_back(number<T>(item, line));
  return out;
}

using Setter = std::function<void(TaskConfig&, std::string_view, std::size_t)>;

const std::map<std::string, Setter, std::less<>>& task_keys() {
  static const std::map<std::string, Setter, std::less<>> keys = {
      {"name", [](TaskConfig& t, std::string_view v, std::size_t) { t.name = std::string(v); }},
      {"type",
       [](TaskConfig& t, std::string_view v, std::size_t line) {
         const auto type = task_type_from_string(v);
         if (!type) throw ParseError("unknown task type '" + std::string(v) + "'", line);
         t.type = *type;
       }},
      {"circuit",
       [](TaskConfig& t, std::string_view v, std::size_t) {
         for (const auto& p : list(v)) t.circuits.emplace_back(p);
       }},
      {"lock",
       [](TaskConfig& t, std::string_view v, std::size_t line) {
         for (const auto& name : list(v)) {
           const auto kind = lock_kind_from_string(name);
           if (!kind) throw ParseError("unknown lock kind '" + name + "'", line);
           t.locks.push_back(*kind);
         }
       }},
      {"width", [](TaskConfig& t, std::string_view v, std::size_t line) { t.widths = numbers<std::size_t>(v, line); }},
      {"seed", [](TaskConfig& t, std::string_view v, std::size_t line) { t.seeds = numbers<std::uint64_t>(v, line); }},
      {"lut_arity",
       [](TaskConfig& t, std::string_view v, std::size_t line) { t.lut_arity = number<std::size_t>(v, line); }},
      {"epsilon", [](TaskConfig& t, std::string_view v, std::size_t line) { t.epsilons = numbers<double>(v, line); }},
      {"key_samples",
       [](TaskConfig& t, std::string_view v, std::size_t line) { t.key_samples = number<std::size_t>(v, line); }},
      {"step", [](TaskConfig& t, std::string_view v, std::size_t line) { t.step = number<std::size_t>(v, line); }},
      {"bias_p", [](TaskConfig& t, std::string_view v, std::size_t line) { t.bias_p = numbers<double>(v, line); }},
      {"keys", [](TaskConfig& t, std::string_view v, std::size_t line) { t.keys = number<std::size_t>(v, line); }},
      {"threshold",
       [](TaskConfig& t, std::string_view v, std::size_t line) { t.threshold = number<std::size_t>(v, line); }},
      {"mode",
       [](TaskConfig& t, std::string_view v, std::size_t line) {
         const auto mode = estimator_mode_from_string(v);
         if (!mode) throw ParseError("unknown estimator mode '" + std::string(v) + "'", line);
         t.mode = *mode;
       }},
      {"input_samples",
       [](TaskConfig& t, std::string_view v, std::size_t line) { t.estimator.samples = number<std::size_t>(v, line); }},
      {"epsilon_a",
       [](TaskConfig& t, std::string_view v, std::size_t line) { t.estimator.epsilon_a = number<double>(v, line); }},
      {"delta", [](TaskConfig& t, std::string_view v, std::size_t line) { t.estimator.delta = number<double>(v, line); }},
      {"estimator_seed",
       [](TaskConfig& t, std::string_view v, std::size_t line) { t.estimator.seed = number<std::uint64_t>(v, line); }},
      {"count_timeout",
       [](TaskConfig& t, std::string_view v, std::size_t line) { t.estimator.timeout_s = number<double>(v, line); }},
      {"exact_limit",
       [](TaskConfig& t, std::string_view v, std::size_t line) {
         t.estimator.exact_limit = number<std::size_t>(v, line);
       }},
      {"timeout", [](TaskConfig& t, std::string_view v, std::size_t line) { t.timeout_s = number<double>(v, line); }},
      {"max_iterations",
       [](TaskConfig& t, std::string_view v, std::size_t line) { t.max_iterations = number<std::size_t>(v, line); }},
      {"window", [](TaskConfig& t, std::string_view v, std::size_t line) { t.window_s = number<double>(v, line); }},
      {"security",
       [](TaskConfig& t, std::string_view v, std::size_t line) {
         if (v == "pmc") {
           t.security = SecurityMetric::Pmc;
         } else if (v == "attack_keycor") {
           t.security = SecurityMetric::AttackKeyCor;
         } else {
           throw ParseError("security must be pmc or attack_keycor", line);
         }
       }},
  };
  return keys;
}

bool valid_name(std::string_view name) {
  return !name.empty() && std::ranges::all_of(name, [](unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '-' || c == '.';
  }) && name.front() != '.';
}

void validate(TaskConfig& t) {
  const std::string where = "task '" + t.name + "': ";
  if (!valid_name(t.name)) throw ConfigError("task name '" + t.name + "' must be [A-Za-z0-9_.-]+");
  if (t.circuits.empty()) throw ConfigError(where + "no circuit");
  for (const auto& p : t.circuits) {
    if (!std::filesystem::is_regular_file(p)) throw ConfigError(where + "circuit file not found: " + p.string());
  }
  if (t.locks.empty()) throw ConfigError(where + "no lock kind");
  if (t.widths.empty() || t.seeds.empty()) throw ConfigError(where + "width and seed lists must be non-empty");
  if (std::ranges::find(t.widths, 0U) != t.widths.end()) throw ConfigError(where + "widths must be positive");
  const bool needs_epsilon = t.type == TaskType::Pmc || t.type == TaskType::Saturation || t.type == TaskType::Bias ||
                             (t.type == TaskType::Pareto && t.security == SecurityMetric::Pmc);
  if (needs_epsilon && t.epsilons.empty()) throw ConfigError(where + "epsilon is required");
  if ((t.type == TaskType::Saturation || t.type == TaskType::Pareto) && t.epsilons.size() > 1) {
    throw ConfigError(where + "takes a single epsilon");
  }
  for (double e : t.epsilons) {
    if (!(e >= 0 && e <= 1)) throw ConfigError(where + "epsilon must lie in [0, 1]");
  }
  if (t.type == TaskType::Bias && t.bias_p.empty()) t.bias_p = kDefaultBiasAxis;
  for (double p : t.bias_p) {
    if (!(p >= 0 && p <= 1)) throw ConfigError(where + "bias_p must lie in [0, 1]");
  }
  if (t.key_samples == 0 || t.step == 0 || t.keys == 0 || t.threshold == 0) {
    throw ConfigError(where + "key_samples, step, keys and threshold must be positive");
  }
  if (t.lut_arity == 0) throw ConfigError(where + "lut_arity must be positive");
  if (!(t.window_s > 0)) throw ConfigError(where + "window must be positive");
}

}  // namespace

std::string_view to_string(TaskType type) {
  for (const auto& [t, name] : kTaskNames) {
    if (t == type) return name;
  }
  return "?";
}

std::optional<TaskType> task_type_from_string(std::string_view name) {
  for (const auto& [t, n] : kTaskNames) {
    if (n == name) return t;
  }
  return std::nullopt;
}

ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  ExperimentConfig cfg;
  TaskConfig* task = nullptr;
  std::set<std::string> seen;
  const auto lines = text::lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line = i + 1;
    std::string_view s = lines[i];
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = text::trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s != "[task]") throw ParseError("unknown section '" + std::string(s) + "'", line);
      cfg.tasks.emplace_back();
      task = &cfg.tasks.back();
      seen.clear();
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key = value", line);
    const std::string key(text::trim(s.substr(0, eq)));
    const std::string_view value = text::trim(s.substr(eq + 1));
    if (!seen.insert(key).second) throw ParseError("duplicate key '" + key + "'", line);
    if (!task) {
      if (key == "output") {
        cfg.output_dir = std::string(value);
      } else if (key == "threads") {
        cfg.threads = number<std::size_t>(value, line);
      } else {
        throw ParseError("unknown global key '" + key + "'", line);
      }
      continue;
    }
    const auto& keys = task_keys();
    const auto it = keys.find(key);
    if (it == keys.end()) throw ParseError("unknown task key '" + key + "'", line);
    it->second(*task, value, line);
    task->raw.emplace_back(key, std::string(value));
  }

  if (cfg.output_dir.is_relative()) cfg.output_dir = base_dir / cfg.output_dir;
  std::set<std::string> names;
  for (auto& t : cfg.tasks) {
    for (auto& p : t.circuits) {
      if (p.is_relative()) p = base_dir / p;
    }
    validate(t);
    if (!names.insert(t.name).second) throw ConfigError("duplicate task name '" + t.name + "'");
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  ExperimentConfig cfg = parse_config(ss.str(), path.parent_path().empty() ? "." : path.parent_path());
  cfg.source = path;
  return cfg;
}

}  // namespace lockeval
