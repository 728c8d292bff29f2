#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "latdiv/analysis.hpp"
#include "latdiv/lattice.hpp"

namespace latdiv {

// Bad user input; the CLI maps this to exit code 2 (numeric failures are 3).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class DecoderKind { iterative, coset };

struct CodeGenParams {
  int p = 2, N = 0, k = 0, col_weight = 3;
  uint64_t seed = 1;
  bool set() const { return N > 0; }
  std::string to_string() const;
};

struct ExperimentConfig {
  std::string field_spec = "quadratic(2)";
  std::string code_path;     // takes precedence over code_gen when non-empty
  std::string code_format = "dense";  // "dense" or "alist"
  CodeGenParams code_gen;
  int prime = 2;
  int prime_ideal_index = 0;
  DecoderKind decoder = DecoderKind::coset;
  double snr_db_start = 10, snr_db_stop = 20, snr_db_step = 2;
  long long max_frames = 200000;
  long long min_frame_errors = 100;
  uint64_t seed = 1;
  int workers = 1;  // 0 = all hardware threads
  int bp_max_iter = 50;
  int coord_box = 4;  // transmit ideal coordinates drawn uniformly in [-box, box]
  std::optional<double> sigma_override;
  // outage subcommand only:
  int outage_blocks = 1;
  long long outage_trials = 1000000;

  std::string out_path;  // CSV destination; empty = no file output

  std::vector<double> snr_grid() const;
  void validate() const;
};

// Flat key=value config text; unknown keys are an error. CLI flags override.
void apply_config_file(ExperimentConfig& cfg, const std::string& path);

struct CompareCurvePoint {
  double gamma_db = 0;
  long long frames = 0;
  long long errors_iterative = 0;
  long long errors_coset = 0;
};
struct CompareCurve {
  std::vector<CompareCurvePoint> points;
};

ConstructionALattice lattice_from_config(const ExperimentConfig& cfg);

// Frame-error-rate sweep over the SNR grid with early stopping at
// min_frame_errors. Frames are simulated on per-frame random streams and
// reduced in frame order, so the result is byte-identical for any worker
// count. Writes CSV + manifest when out_path is set.
FerCurve run_fer_sweep(const ExperimentConfig& cfg);

// Poltyrev outage limit over the grid; CSV columns gamma_db,p_out,ci.
FerCurve run_outage(const ExperimentConfig& cfg);

// Both decoders against common channel realizations (same message, fading
// and normalized noise per frame).
CompareCurve compare_decoders(const ExperimentConfig& cfg);

std::string fer_csv(const FerCurve& curve);
std::string outage_csv(const FerCurve& curve);
std::string compare_csv(const CompareCurve& curve);

// Key=value run manifest, written atomically next to the results.
void write_manifest(const std::string& path,
                    const std::vector<std::pair<std::string, std::string>>& entries);

inline constexpr const char* kVersion = "0.1.0";

}  // namespace latdiv
