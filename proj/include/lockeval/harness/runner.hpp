#ifndef LOCKEVAL_HARNESS_RUNNER_HPP
#define LOCKEVAL_HARNESS_RUNNER_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "lockeval/harness/config.hpp"

namespace lockeval {

struct TaskResult {
  std::string name;
  TaskType type = TaskType::KeyCor;
  std::filesystem::path file;
  std::size_t rows = 0;
  /// One message per failed (circuit, lock, width, seed) cell.
  std::vector<std::string> cell_errors;
  /// Set when the whole task failed (e.g. unreadable circuit).
  std::string error;
  std::size_t attack_cells = 0;
  std::size_t attack_timeouts = 0;
};

struct RunSummary {
  std::filesystem::path output_dir;
  std::vector<TaskResult> tasks;

  /// More than half of the attacks that ran hit their timeout.
  bool timeout_dominated() const;
  bool all_ok() const;
};

/// Output of one task: CSV text plus bookkeeping. Cells run on `threads`
/// workers and their rows are emitted in cell order, so the text is the same
/// for any thread count (incremental tasks carry wall-clock times).
struct TaskOutput {
  std::string csv;
  TaskResult result;
};

TaskOutput run_task(const TaskConfig& task, std::size_t threads = 0);

/// Runs every task, writing <output>/<task>.csv and <output>/manifest.txt.
/// A failing task is recorded in the manifest and the run continues.
RunSummary run(const ExperimentConfig& config);

}  // namespace lockeval

#endif
