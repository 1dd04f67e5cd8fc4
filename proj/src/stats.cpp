#include "gsim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace gsim {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_tail(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double ks_statistic(VecView samples, double sigma) {
  if (samples.empty()) throw InvalidInput("KS statistic needs at least one sample");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw InvalidInput("KS reference deviation must be positive and finite");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (size_t i = 0; i < sorted.size(); ++i) {
    const double f = normal_cdf(sorted[i] / sigma);
    d = std::max(d, f - static_cast<double>(i) / n);
    d = std::max(d, static_cast<double>(i + 1) / n - f);
  }
  return d;
}

MomentSummary moment_summary(VecView samples) {
  MomentSummary s;
  const size_t n = samples.size();
  if (n == 0) return s;
  double sum = 0.0;
  for (double v : samples) sum += v;
  s.mean = sum / static_cast<double>(n);
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : samples) {
    const double d = v - s.mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= static_cast<double>(n);
  m3 /= static_cast<double>(n);
  m4 /= static_cast<double>(n);
  s.variance = n > 1 ? m2 * static_cast<double>(n) / static_cast<double>(n - 1) : 0.0;
  if (m2 > 0.0) {
    s.skewness = m3 / std::pow(m2, 1.5);
    s.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  }
  return s;
}

double lag1_autocorrelation(VecView samples) {
  const size_t n = samples.size();
  if (n < 2) return 0.0;
  double sum = 0.0;
  for (double v : samples) sum += v;
  const double mean = sum / static_cast<double>(n);
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double d = samples[i] - mean;
    den += d * d;
    if (i + 1 < n) num += d * (samples[i + 1] - mean);
  }
  return den > 0.0 ? num / den : 0.0;
}

}  // namespace gsim
