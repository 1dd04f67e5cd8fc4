#ifndef GSIM_MANIFEST_HPP
#define GSIM_MANIFEST_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gsim/distortion.hpp"
#include "gsim/network.hpp"
#include "gsim/scheme.hpp"

namespace gsim {

/// Manifest parse or validation failure; the message names the offending
/// field (and the line for syntax errors).
class ManifestError : public std::runtime_error {
 public:
  explicit ManifestError(const std::string& what) : std::runtime_error(what) {}
};

/// A fully validated experiment: everything needed to run a sweep, plus the
/// exact manifest bytes for echoing into results.
struct Experiment {
  std::string name;
  NetworkModel model;
  SchemePtr scheme;  // wrappers already applied
  SourceSpec source;
  SweepRequest sweep;
  std::string csv_path;   // relative to the output directory
  std::string json_path;  // relative to the output directory
  std::string manifest_text;
};

/// Parses and validates manifest text. Unknown fields are errors. `origin`
/// names the source (file path) in diagnostics.
Experiment parse_experiment(const std::string& text, const std::string& origin);

/// Reads, parses, and validates the manifest file at `path`.
Experiment load_experiment(const std::string& path);

struct RunOverrides {
  std::optional<std::string> out_dir;  // default "."
  std::optional<long long> trials;
  std::optional<uint64_t> seed;
  int verbosity = 0;
};

struct RunOutputs {
  std::string csv_path;
  std::string json_path;
  std::vector<SweepRow> rows;
};

/// Runs the experiment and writes the CSV sweep table and the JSON result
/// bundle (manifest echo, rows, diagnostics, RNG provenance, wall clock).
RunOutputs run_experiment(const Experiment& experiment, const RunOverrides& overrides = {});

/// load_experiment + run_experiment.
RunOutputs run_manifest(const std::string& path, const RunOverrides& overrides = {});

/// The CSV sweep table: one row per (b, destination), deterministic bytes
/// for a given experiment, seed, and trial count.
std::string render_csv(const std::string& experiment_name, const std::vector<SweepRow>& rows,
                       uint64_t seed);

/// Sorted inventory of built-in schemes, marginal families, network forms,
/// converters, and wrappers.
std::string list_components();

}  // namespace gsim

#endif
