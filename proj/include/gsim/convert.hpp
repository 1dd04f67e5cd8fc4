#ifndef GSIM_CONVERT_HPP
#define GSIM_CONVERT_HPP

#include <vector>

#include "gsim/linalg.hpp"
#include "gsim/network.hpp"
#include "gsim/rng.hpp"
#include "gsim/scheme.hpp"
#include "gsim/transform.hpp"

namespace gsim {

/// Lifts an n-slot scheme to an n*b-slot scheme for non-Gaussian sources:
/// each source block is split into n blocks of length b, transformed, and
/// interleaved into b sub-blocks whose samples are approximately Gaussian;
/// the inner scheme runs independently on each sub-block, and the decoder
/// inverts the interleaving and the transform. Works on any network.
SchemePtr convert_for_source(SchemePtr inner, int b);

/// Lifts an n-slot scheme to an n*b-slot scheme for non-Gaussian additive
/// noise: the scheme operates on b effective networks in the transform
/// domain. Effective channel inputs pass through the inverse transform
/// before transmission and received blocks through the forward transform, so
/// each effective network sees the transformed noise, which is approximately
/// Gaussian with the physical noise covariance. Only valid on networks of
/// the form Y = H*U + Z.
SchemePtr convert_for_noise(SchemePtr inner, int b);

/// Empirical law of one transform coordinate of i.i.d. vector draws.
struct TransformProbeRow {
  int l = 0;                          // transform coordinate probed
  Mat covariance;                     // empirical covariance across the k vector coordinates
  Mat covariance_stderr;              // standard error of each covariance entry
  std::vector<double> ks;             // per vector coordinate, vs N(0, K_ii)
  std::vector<double> skewness;       // per vector coordinate
  std::vector<double> excess_kurtosis;
  std::vector<double> lag1_autocorr;  // across draws, per vector coordinate
};

struct TransformProbe {
  int b = 0;
  long long samples = 0;
  std::vector<TransformProbeRow> rows;  // one per requested coordinate
};

/// Draws `samples` blocks of b i.i.d. k-dimensional vectors with the given
/// covariance and marginals, applies the b-point transform along the block
/// axis, and reports the empirical law of the requested coordinates. Each
/// probed coordinate approaches N(0, K) as b grows; the covariance equals K
/// exactly in expectation for every b.
TransformProbe transform_probe(const CovarianceSpec& spec, const MarginalFamily& family, int b,
                               long long samples, const std::vector<int>& probe_l,
                               RngStream& stream);

/// transform_probe applied to the noise of an additive network: the law of
/// the effective noise seen by the converted scheme's inner runs.
TransformProbe effective_noise_probe(const NetworkModel& model, int b, long long samples,
                                     const std::vector<int>& probe_l, RngStream& stream);

}  // namespace gsim

#endif
