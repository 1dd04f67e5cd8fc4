#include "gsim/distortion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gsim/stats.hpp"

namespace gsim {

uint64_t stream_id(StreamRole role, uint64_t index) {
  return (static_cast<uint64_t>(role) << 40) | index;
}

DistortionReport estimate_distortion(const NetworkModel& model, const CodingScheme& scheme,
                                     const SourceSpec& source, long long trials, uint64_t seed,
                                     const TrialObserver& observer) {
  const int n = scheme.block_length();
  const int k = model.topology().pair_count();
  if (source.covariance.dim() != k) {
    throw InvalidInput("source covariance has dimension " +
                       std::to_string(source.covariance.dim()) + " but the network has " +
                       std::to_string(k) + " pairs");
  }
  if (trials < 1) throw InvalidInput("trial count must be positive");

  ColoredSampler sampler(source.covariance, source.family);
  std::vector<std::vector<double>> x(static_cast<size_t>(k), std::vector<double>(n));
  std::vector<double> row(static_cast<size_t>(k));
  std::vector<double> sum(static_cast<size_t>(k), 0.0), sumsq(static_cast<size_t>(k), 0.0);

  for (long long trial = 0; trial < trials; ++trial) {
    RngStream source_stream(seed, stream_id(StreamRole::kSource, static_cast<uint64_t>(trial)));
    RngStream noise_stream(seed, stream_id(StreamRole::kNoise, static_cast<uint64_t>(trial)));
    RngStream dither_stream(seed, stream_id(StreamRole::kDither, static_cast<uint64_t>(trial)));
    for (int t = 0; t < n; ++t) {
      sampler.sample_row(source_stream, row);
      for (int m = 0; m < k; ++m) x[static_cast<size_t>(m)][static_cast<size_t>(t)] = row[m];
    }
    RunContext ctx;
    ctx.dither_stream = &dither_stream;
    const auto xhat = run_scheme(model, scheme, x, noise_stream, ctx);
    for (int m = 0; m < k; ++m) {
      double d = 0.0;
      for (int t = 0; t < n; ++t) {
        const double e = x[static_cast<size_t>(m)][static_cast<size_t>(t)] -
                         xhat[static_cast<size_t>(m)][static_cast<size_t>(t)];
        d += e * e;
      }
      d /= static_cast<double>(n);
      sum[static_cast<size_t>(m)] += d;
      sumsq[static_cast<size_t>(m)] += d * d;
      if (observer) observer(trial, m, x[static_cast<size_t>(m)], xhat[static_cast<size_t>(m)]);
    }
  }

  DistortionReport report;
  report.block_length = n;
  report.trials = trials;
  report.seed = seed;
  report.per_destination.resize(static_cast<size_t>(k));
  const double t = static_cast<double>(trials);
  for (int m = 0; m < k; ++m) {
    DestinationDistortion& dest = report.per_destination[static_cast<size_t>(m)];
    dest.trials = trials;
    dest.mse = sum[static_cast<size_t>(m)] / t;
    const double var =
        trials > 1
            ? std::max(0.0, (sumsq[static_cast<size_t>(m)] - t * dest.mse * dest.mse) / (t - 1.0))
            : 0.0;
    dest.stderr_of_mean = std::sqrt(var / t);
    dest.ci95 = 1.96 * dest.stderr_of_mean;
  }
  return report;
}

namespace {

GaussianityDiagnostics raw_marginal_diagnostics(const CovarianceSpec& cov,
                                                const MarginalFamily& family, long long samples,
                                                RngStream& stream) {
  ColoredSampler sampler(cov, family);
  std::vector<double> row(static_cast<size_t>(cov.dim()));
  std::vector<double> values;
  values.reserve(static_cast<size_t>(samples));
  for (long long s = 0; s < samples; ++s) {
    sampler.sample_row(stream, row);
    values.push_back(row[0]);
  }
  const MomentSummary ms = moment_summary(values);
  GaussianityDiagnostics diag;
  diag.samples = samples;
  diag.coordinate = -1;
  const double sigma = std::sqrt(cov.k(0, 0));
  diag.ks = sigma > 0.0 ? ks_statistic(values, sigma) : 0.0;
  diag.skewness = ms.skewness;
  diag.excess_kurtosis = ms.excess_kurtosis;
  return diag;
}

// Diagnostics coordinate: the first non-constant transform row, so the probe
// reflects the central-limit mixing rather than the all-ones average row.
constexpr int kDiagCoordinate = 1;

GaussianityDiagnostics transform_diagnostics(const CovarianceSpec& cov,
                                             const MarginalFamily& family, int b,
                                             long long samples, RngStream& stream) {
  const TransformProbe probe = transform_probe(cov, family, b, samples, {kDiagCoordinate}, stream);
  const TransformProbeRow& row = probe.rows.front();
  GaussianityDiagnostics diag;
  diag.samples = samples;
  diag.coordinate = kDiagCoordinate;
  diag.ks = row.ks.front();
  diag.skewness = row.skewness.front();
  diag.excess_kurtosis = row.excess_kurtosis.front();
  return diag;
}

std::vector<int> default_noise_probe_coordinates(int b) { return {0, b / 2, b - 1}; }

}  // namespace

std::vector<SweepRow> convergence_sweep(const NetworkModel& model, SchemePtr inner,
                                        const SourceSpec& source, const SweepRequest& request) {
  if (!inner) throw InvalidInput("sweep needs an inner scheme");
  if (request.trials < 1) throw InvalidInput("trial count must be positive");
  if (request.diagnostic_samples < 2) throw InvalidInput("diagnostics need at least two samples");
  if (request.converter != ConverterKind::kNone) {
    if (request.b_list.empty()) throw InvalidInput("converter sweeps need a nonempty b list");
    int prev = 0;
    for (int b : request.b_list) {
      if (b < 2 || b % 2 != 0) {
        throw InvalidInput("sweep block size " + std::to_string(b) +
                           " is invalid: every b must be even and at least 2");
      }
      if (b <= prev) throw InvalidInput("sweep block sizes must be strictly ascending");
      prev = b;
    }
  }
  if (request.converter == ConverterKind::kNoise && !model.is_additive()) {
    throw InvalidInput("the channel-side converter is only valid on additive-noise networks");
  }

  std::vector<SweepRow> rows;

  if (request.converter == ConverterKind::kNone) {
    SweepRow row;
    row.b = 0;
    row.report = estimate_distortion(model, *inner, source, request.trials, request.seed);
    RngStream diag_stream(request.seed, stream_id(StreamRole::kDiagnostics, 0));
    row.diagnostics = raw_marginal_diagnostics(source.covariance, source.family,
                                               request.diagnostic_samples, diag_stream);
    rows.push_back(std::move(row));
    return rows;
  }

  // Design-point row: the inner scheme with the converted quantity Gaussian.
  {
    SweepRow row;
    row.b = 0;
    RngStream diag_stream(request.seed, stream_id(StreamRole::kDiagnostics, 0));
    if (request.converter == ConverterKind::kSource) {
      SourceSpec design{source.covariance, MarginalFamily::gaussian()};
      row.report = estimate_distortion(model, *inner, design, request.trials, request.seed);
      row.diagnostics = raw_marginal_diagnostics(design.covariance, design.family,
                                                 request.diagnostic_samples, diag_stream);
    } else {
      const NetworkModel design = model.with_noise_family(MarginalFamily::gaussian());
      row.report = estimate_distortion(design, *inner, source, request.trials, request.seed);
      row.diagnostics = raw_marginal_diagnostics(design.noise_cov(), design.noise_family(),
                                                 request.diagnostic_samples, diag_stream);
    }
    rows.push_back(std::move(row));
  }

  for (int b : request.b_list) {
    SweepRow row;
    row.b = b;
    const SchemePtr converted = request.converter == ConverterKind::kSource
                                    ? convert_for_source(inner, b)
                                    : convert_for_noise(inner, b);
    row.report = estimate_distortion(model, *converted, source, request.trials, request.seed);
    RngStream diag_stream(request.seed,
                          stream_id(StreamRole::kDiagnostics, static_cast<uint64_t>(b)));
    if (request.converter == ConverterKind::kSource) {
      row.diagnostics = transform_diagnostics(source.covariance, source.family, b,
                                              request.diagnostic_samples, diag_stream);
    } else {
      row.diagnostics = transform_diagnostics(model.noise_cov(), model.noise_family(), b,
                                              request.diagnostic_samples, diag_stream);
      if (request.probe_effective_noise) {
        RngStream probe_stream(request.seed,
                               stream_id(StreamRole::kDiagnostics, 1000000u + static_cast<uint64_t>(b)));
        row.effective_noise = effective_noise_probe(
            model, b, request.diagnostic_samples, default_noise_probe_coordinates(b), probe_stream);
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace gsim
