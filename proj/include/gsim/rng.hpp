#ifndef GSIM_RNG_HPP
#define GSIM_RNG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gsim/linalg.hpp"

namespace gsim {

/// Deterministic 64-bit stream based on splitmix64 (Vigna 2015). Streams are
/// identified by (seed, stream id); the pair is avalanche-mixed into the
/// starting state, so distinct ids give unrelated sequences. Identical
/// (seed, id) pairs reproduce the sequence bit-exactly.
class RngStream {
 public:
  RngStream(uint64_t seed, uint64_t stream_id);

  uint64_t next_u64();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();

  /// Uniform on (lo, hi), endpoints excluded.
  double uniform_open(double lo, double hi);

  /// Standard normal via Box-Muller (two uniforms per draw, no cached spare).
  double normal();

  uint64_t seed() const { return seed_; }
  uint64_t stream_id() const { return stream_id_; }

 private:
  uint64_t state_;
  uint64_t seed_;
  uint64_t stream_id_;
};

enum class FamilyTag {
  kGaussian,
  kUniform,
  kRademacher,
  kLaplace,
  kTwoPointAsymmetric,
  kMixtureOfGaussians,
};

/// One mixture component: value drawn N(mean, sigma^2) with probability weight.
struct MixtureComponent {
  double weight;
  double mean;
  double sigma;
};

/// A zero-mean, unit-variance marginal in its standard form. Samples are
/// colored afterwards to impose a covariance matrix.
class MarginalFamily {
 public:
  static MarginalFamily gaussian();
  static MarginalFamily uniform();     // on [-sqrt(3), sqrt(3)]
  static MarginalFamily rademacher();  // +/-1
  static MarginalFamily laplace();     // scale 1/sqrt(2)
  /// Two-point law: value a with probability p, value b with probability 1-p.
  /// If a and b are NaN they are derived from p; otherwise mean 0 / variance 1
  /// is validated to 1e-9.
  static MarginalFamily two_point_asymmetric(double p,
                                             double a = std::nan(""),
                                             double b = std::nan(""));
  /// Gaussian mixture; weights must sum to 1 and the mixture must have
  /// mean 0, variance 1 (validated to 1e-9).
  static MarginalFamily mixture_of_gaussians(std::vector<MixtureComponent> components);
  static MarginalFamily parse(const std::string& tag);  // default parameters

  double sample(RngStream& stream) const;
  FamilyTag tag() const { return tag_; }
  std::string name() const;

  static std::vector<std::string> known_tags();  // sorted

 private:
  MarginalFamily() = default;
  FamilyTag tag_ = FamilyTag::kGaussian;
  // two-point parameters
  double p_ = 0.5, a_ = 1.0, b_ = -1.0;
  std::vector<MixtureComponent> components_;
};

/// Symmetric PSD covariance matrix for a k-dimensional i.i.d. vector process.
struct CovarianceSpec {
  Mat k;  // k x k

  explicit CovarianceSpec(Mat m);
  int dim() const { return k.rows; }
};

/// Draws i.i.d. rows with mean zero and covariance spec.k, obtained by
/// coloring i.i.d. standardized marginals with a pivoted Cholesky factor.
class ColoredSampler {
 public:
  ColoredSampler(const CovarianceSpec& spec, const MarginalFamily& family);

  int dim() const { return factor_.rows; }
  void sample_row(RngStream& stream, std::span<double> out);

 private:
  Mat factor_;  // A with A A^T = K
  MarginalFamily family_;
  std::vector<double> scratch_;
};

/// count x k matrix of i.i.d. colored rows, row-major.
std::vector<double> sample_iid_vectors(const CovarianceSpec& spec,
                                       const MarginalFamily& family,
                                       long count, RngStream& stream);

/// Floor x to rho fractional bits, then add an independent uniform on
/// (-2^-(rho+1), 2^-(rho+1)). Always within 2^(1-rho) of x.
double dither(double x, int rho, RngStream& stream);

}  // namespace gsim

#endif
