#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "grsaa/problems.hpp"
#include "grsaa/schedule.hpp"
#include "grsaa/tracer.hpp"

namespace grsaa {

/// Process exit codes shared by every subcommand.
enum ExitCode : int { exit_ok = 0, exit_solver_failure = 2, exit_config_error = 3 };

/// A group count written as an integer ("5500"), as a fraction of N ("0.55N",
/// "N") or as "auto". Fractions resolve to ceil(f * N), at least 1. "auto" is
/// resolved by RunConfig::groups.
struct GroupSpec {
  std::string text = "auto";

  std::size_t resolve(std::size_t n_samples) const;
  static GroupSpec parse(const std::string& text);
};

/// Flat key=value experiment description. Every field has a text form;
/// to_text() followed by parse() gives back an equal config.
struct RunConfig {
  std::string problem = "market";
  int n = 3;
  std::size_t N = 10'000;
  GroupSpec L;
  /// "uniform" or "linear:<tau1>"; linear needs tau1 * L == N.
  std::string partition = "uniform";
  ScheduleKind schedule = ScheduleKind::uniform;
  double tau0 = 7000.0;
  /// Seed for random node draws; unset means the sample seed of the repetition.
  std::optional<std::uint64_t> schedule_seed;
  std::uint64_t seed = 1;
  int kappa0 = 2;
  std::vector<double> alpha;  // empty: zero
  SviForm svi_form = SviForm::stationary;
  TraceConfig tracer;
  std::string out = "out";
  std::size_t repetitions = 1;
  std::vector<GroupSpec> sweep_L;
  std::size_t coercivity_grid = 5;

  /// Applies one key=value pair. Throws ConfigError for unknown keys or bad values.
  void set(const std::string& key, const std::string& value);
  /// Reads "key = value" lines; '#' starts a comment.
  static RunConfig parse(const std::string& text);
  static RunConfig load(const std::filesystem::path& file);
  std::string to_text() const;
  static const std::vector<std::string>& keys();

  /// L for a group count: "auto" means N / tau1 for a linear partition, else ceil(0.55 N).
  std::size_t groups(const GroupSpec& g) const;

  /// Checks everything that can be checked without running a trace.
  void validate() const;

  bool operator==(const RunConfig& other) const { return to_text() == other.to_text(); }
};

/// Result of one trace with the inputs that produced it.
struct SolveOutcome {
  std::uint64_t seed = 0;
  std::size_t L = 0;
  TraceResult trace;
  Eigen::VectorXd x;  // state part of the terminal point
  double wall_seconds = 0.0;
  std::size_t clipped_samples = 0;
};

/// Builds the instance, samples, partition and schedule of repetition `rep`
/// (sample seed cfg.seed + rep) with L groups, and traces it.
SolveOutcome solve_once(const RunConfig& cfg, std::size_t L, std::size_t rep = 0);

struct SweepRow {
  std::size_t L = 0;
  double mean_evals = 0.0;
  std::size_t min_evals = 0;
  std::size_t max_evals = 0;
  double mean_seconds = 0.0;
  std::size_t converged = 0;
  std::size_t runs = 0;
  bool is_min = false;
};

struct CompareRow {
  std::uint64_t seed = 0;
  SolveOutcome grsaa;
  SolveOutcome standard;
  double eval_ratio = 0.0;  // grsaa / standard
  double time_ratio = 0.0;
  double x_distance = 0.0;  // |x_grsaa - x_standard|_inf
};

struct CoercivityOutcome {
  CoercivityReport report;
  std::size_t samples = 0;
};

std::vector<SweepRow> sweep_L(const RunConfig& cfg);
std::vector<CompareRow> compare(const RunConfig& cfg);
CoercivityOutcome diagnose_coercivity(const RunConfig& cfg);

/// Subcommands. Each validates first (no files on a config error), writes the
/// resolved config and its artifacts under cfg.out, and returns an ExitCode.
int cmd_solve(const RunConfig& cfg, std::ostream& log);
int cmd_sweep_L(const RunConfig& cfg, std::ostream& log);
int cmd_compare(const RunConfig& cfg, std::ostream& log);
int cmd_diagnose_coercivity(const RunConfig& cfg, std::ostream& log);

}  // namespace grsaa
