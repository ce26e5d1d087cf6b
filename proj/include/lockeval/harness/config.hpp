#ifndef LOCKEVAL_HARNESS_CONFIG_HPP
#define LOCKEVAL_HARNESS_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lockeval/locks/locked_circuit.hpp"
#include "lockeval/metrics/corruption.hpp"

namespace lockeval {

enum class TaskType { KeyCor, Cor, Pmc, Saturation, Bias, Incremental, Pareto };

std::string_view to_string(TaskType type);
std::optional<TaskType> task_type_from_string(std::string_view name);

/// What a pareto task uses as the security axis.
enum class SecurityMetric { Pmc, AttackKeyCor };

struct TaskConfig {
  std::string name;
  TaskType type = TaskType::KeyCor;
  std::vector<std::filesystem::path> circuits;
  std::vector<LockKind> locks;
  std::vector<std::size_t> widths = {8};
  std::vector<std::uint64_t> seeds = {1};
  std::size_t lut_arity = 2;

  std::vector<double> epsilons;
  std::size_t key_samples = 1000;
  std::size_t step = 100;
  std::vector<double> bias_p;
  std::size_t keys = 10;
  std::size_t threshold = 1;

  /// Unset: EXACT for n <= exact_limit, MONTE_CARLO otherwise.
  std::optional<EstimatorMode> mode;
  EstimatorParams estimator;

  double timeout_s = 60;
  std::size_t max_iterations = 0;
  double window_s = 100;
  SecurityMetric security = SecurityMetric::Pmc;

  /// key = value lines as written, for the manifest.
  std::vector<std::pair<std::string, std::string>> raw;
};

struct ExperimentConfig {
  std::filesystem::path source;
  std::filesystem::path output_dir = "results";
  /// Worker threads; 0 = hardware concurrency.
  std::size_t threads = 0;
  std::vector<TaskConfig> tasks;
};

/// Parses the line-oriented format:
///
///   # comment
///   output = results          (global keys come before the first section)
///   threads = 4
///   [task]
///   name = bias_c432
///   type = bias
///   circuit = ../tests/data/c432.bench
///   lock = XOR
///   width = 16, 32, 64
///   epsilon = 0.1
///
/// List values are comma separated. Relative paths resolve against
/// `base_dir`. Throws ParseError for syntax and ConfigError for invalid
/// values (missing circuit file, empty axis, missing epsilon...).
ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = ".");
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace lockeval

#endif
