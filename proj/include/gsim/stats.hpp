#ifndef GSIM_STATS_HPP
#define GSIM_STATS_HPP

#include "gsim/common.hpp"

namespace gsim {

/// Standard normal CDF via erfc; absolute error well below 1e-12.
double normal_cdf(double x);

/// Upper tail of the standard normal, Q(x) = 1 - Phi(x).
double normal_tail(double x);

/// Kolmogorov-Smirnov sup-distance between the empirical CDF of the samples
/// and the N(0, sigma^2) CDF, by the sorted-sample formula. Well-defined for
/// degenerate (all-equal) samples.
double ks_statistic(VecView samples, double sigma);

struct MomentSummary {
  double mean = 0.0;
  double variance = 0.0;  // unbiased sample variance
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
};

MomentSummary moment_summary(VecView samples);

/// Sample lag-1 autocorrelation; 0 for fewer than two samples or a constant
/// sequence.
double lag1_autocorrelation(VecView samples);

}  // namespace gsim

#endif
