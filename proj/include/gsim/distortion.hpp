#ifndef GSIM_DISTORTION_HPP
#define GSIM_DISTORTION_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "gsim/convert.hpp"
#include "gsim/network.hpp"
#include "gsim/rng.hpp"
#include "gsim/scheme.hpp"

namespace gsim {

/// Source model: k sequences, i.i.d. across time, each slot's k-vector has
/// the given covariance and standardized marginals.
struct SourceSpec {
  CovarianceSpec covariance;
  MarginalFamily family;
};

/// Roles carve the stream-id space so that source draws, channel noise,
/// dither, and diagnostics never share a stream: id = (role << 40) | index.
enum class StreamRole : uint64_t {
  kSource = 1,
  kNoise = 2,
  kDither = 3,
  kDiagnostics = 4,
};

uint64_t stream_id(StreamRole role, uint64_t index);

/// Monte-Carlo distortion estimate for one communicating pair.
struct DestinationDistortion {
  long long trials = 0;
  double mse = 0.0;
  double stderr_of_mean = 0.0;
  double ci95 = 0.0;  // 1.96 * stderr_of_mean
};

struct DistortionReport {
  int block_length = 0;
  long long trials = 0;
  uint64_t seed = 0;
  std::vector<DestinationDistortion> per_destination;
};

/// Called once per (trial, pair) with the source block and reconstruction,
/// for auxiliary statistics such as sign-error counting.
using TrialObserver = std::function<void(long long trial, int m, VecView x, VecView xhat)>;

/// Runs `trials` independent blocks and reports per-pair mean squared error
/// per symbol with normal-approximation confidence intervals. Per-trial
/// streams are derived from (seed, role, trial), so a rerun at the same seed
/// is bit-identical and runs of different schemes at the same seed share
/// their source and noise randomness (common random numbers).
DistortionReport estimate_distortion(const NetworkModel& model, const CodingScheme& scheme,
                                     const SourceSpec& source, long long trials, uint64_t seed,
                                     const TrialObserver& observer = nullptr);

enum class ConverterKind { kNone, kSource, kNoise };

/// Normality summary of the coordinate most relevant to a sweep row: a
/// transform coordinate of the converted data for b > 0, or the raw marginal
/// (coordinate = -1) for unconverted rows.
struct GaussianityDiagnostics {
  long long samples = 0;
  int coordinate = -1;
  double ks = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
};

struct SweepRow {
  int b = 0;  // 0 = the inner scheme itself (the Gaussian design point)
  DistortionReport report;
  GaussianityDiagnostics diagnostics;
  std::optional<TransformProbe> effective_noise;  // channel-side sweeps only
};

struct SweepRequest {
  ConverterKind converter = ConverterKind::kNone;
  std::vector<int> b_list;  // even, ascending; unused when converter is kNone
  long long trials = 0;
  uint64_t seed = 0;
  long long diagnostic_samples = 100000;
  bool probe_effective_noise = true;  // attach per-b noise probes for kNoise
};

/// Runs the selected converter at each b with common random numbers and
/// returns one row per b, preceded by the b = 0 design-point row: the inner
/// scheme with the converted quantity (source or noise) replaced by a
/// Gaussian of the same covariance. With no converter the single row is the
/// scheme exactly as configured.
std::vector<SweepRow> convergence_sweep(const NetworkModel& model, SchemePtr inner,
                                        const SourceSpec& source, const SweepRequest& request);

}  // namespace gsim

#endif
