#include "gsim/rng.hpp"

#include <algorithm>
#include <cmath>

namespace gsim {

namespace {

constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

uint64_t mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

RngStream::RngStream(uint64_t seed, uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  state_ = mix64(mix64(seed + kGolden) ^ mix64(stream_id + 0x6A09E667F3BCC909ULL));
}

uint64_t RngStream::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double RngStream::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_open(double lo, double hi) {
  double u;
  do {
    u = uniform01();
  } while (u == 0.0);
  return lo + u * (hi - lo);
}

double RngStream::normal() {
  double u1;
  do {
    u1 = uniform01();
  } while (u1 == 0.0);
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

MarginalFamily MarginalFamily::gaussian() {
  MarginalFamily f;
  f.tag_ = FamilyTag::kGaussian;
  return f;
}

MarginalFamily MarginalFamily::uniform() {
  MarginalFamily f;
  f.tag_ = FamilyTag::kUniform;
  return f;
}

MarginalFamily MarginalFamily::rademacher() {
  MarginalFamily f;
  f.tag_ = FamilyTag::kRademacher;
  return f;
}

MarginalFamily MarginalFamily::laplace() {
  MarginalFamily f;
  f.tag_ = FamilyTag::kLaplace;
  return f;
}

MarginalFamily MarginalFamily::two_point_asymmetric(double p, double a, double b) {
  if (!(p > 0.0 && p < 1.0))
    throw InvalidInput("two-point-asymmetric: p must lie in (0, 1)");
  if (std::isnan(a) != std::isnan(b))
    throw InvalidInput("two-point-asymmetric: give both a and b or neither");
  if (std::isnan(a)) {
    a = std::sqrt((1.0 - p) / p);
    b = -std::sqrt(p / (1.0 - p));
  } else {
    const double mean = p * a + (1.0 - p) * b;
    const double var = p * a * a + (1.0 - p) * b * b - mean * mean;
    if (std::abs(mean) > 1e-9 || std::abs(var - 1.0) > 1e-9)
      throw InvalidInput("two-point-asymmetric: (p, a, b) must have mean 0 and variance 1");
  }
  MarginalFamily f;
  f.tag_ = FamilyTag::kTwoPointAsymmetric;
  f.p_ = p;
  f.a_ = a;
  f.b_ = b;
  return f;
}

MarginalFamily MarginalFamily::mixture_of_gaussians(std::vector<MixtureComponent> components) {
  if (components.empty()) throw InvalidInput("mixture-of-gaussians: no components");
  double wsum = 0.0, mean = 0.0, second = 0.0;
  for (const auto& c : components) {
    if (!(c.weight > 0.0) || c.sigma < 0.0)
      throw InvalidInput("mixture-of-gaussians: weights must be positive and sigmas nonnegative");
    wsum += c.weight;
    mean += c.weight * c.mean;
    second += c.weight * (c.mean * c.mean + c.sigma * c.sigma);
  }
  if (std::abs(wsum - 1.0) > 1e-9)
    throw InvalidInput("mixture-of-gaussians: weights must sum to 1");
  if (std::abs(mean) > 1e-9 || std::abs(second - 1.0) > 1e-9)
    throw InvalidInput("mixture-of-gaussians: mixture must have mean 0 and variance 1");
  MarginalFamily f;
  f.tag_ = FamilyTag::kMixtureOfGaussians;
  f.components_ = std::move(components);
  return f;
}

MarginalFamily MarginalFamily::parse(const std::string& tag) {
  if (tag == "gaussian") return gaussian();
  if (tag == "uniform") return uniform();
  if (tag == "rademacher") return rademacher();
  if (tag == "laplace") return laplace();
  if (tag == "two-point-asymmetric") return two_point_asymmetric(0.2);
  if (tag == "mixture-of-gaussians")
    return mixture_of_gaussians({{0.5, 0.8, 0.6}, {0.5, -0.8, 0.6}});
  throw InvalidInput("unknown marginal family tag: " + tag);
}

std::string MarginalFamily::name() const {
  switch (tag_) {
    case FamilyTag::kGaussian: return "gaussian";
    case FamilyTag::kUniform: return "uniform";
    case FamilyTag::kRademacher: return "rademacher";
    case FamilyTag::kLaplace: return "laplace";
    case FamilyTag::kTwoPointAsymmetric: return "two-point-asymmetric";
    case FamilyTag::kMixtureOfGaussians: return "mixture-of-gaussians";
  }
  return "?";
}

std::vector<std::string> MarginalFamily::known_tags() {
  return {"gaussian", "laplace", "mixture-of-gaussians", "rademacher",
          "two-point-asymmetric", "uniform"};
}

double MarginalFamily::sample(RngStream& stream) const {
  switch (tag_) {
    case FamilyTag::kGaussian:
      return stream.normal();
    case FamilyTag::kUniform: {
      constexpr double kSqrt3 = 1.7320508075688772;
      return kSqrt3 * (2.0 * stream.uniform01() - 1.0);
    }
    case FamilyTag::kRademacher:
      return (stream.next_u64() >> 63) ? 1.0 : -1.0;
    case FamilyTag::kLaplace: {
      // Inverse CDF, scale 1/sqrt(2) so the variance is 1.
      constexpr double kScale = 0.7071067811865476;
      const double v = stream.uniform_open(-0.5, 0.5);
      return -kScale * std::copysign(std::log1p(-2.0 * std::abs(v)), v);
    }
    case FamilyTag::kTwoPointAsymmetric:
      return stream.uniform01() < p_ ? a_ : b_;
    case FamilyTag::kMixtureOfGaussians: {
      double u = stream.uniform01();
      for (const auto& c : components_) {
        if (u < c.weight) return c.mean + c.sigma * stream.normal();
        u -= c.weight;
      }
      const auto& last = components_.back();
      return last.mean + last.sigma * stream.normal();
    }
  }
  throw SchemeError("unreachable family tag");
}

CovarianceSpec::CovarianceSpec(Mat m) : k(std::move(m)) {
  if (k.rows != k.cols || k.rows < 1)
    throw InvalidInput("covariance matrix must be square and nonempty");
  for (double v : k.a)
    if (!std::isfinite(v)) throw InvalidInput("covariance matrix has non-finite entries");
  if (!is_symmetric(k, 1e-12))
    throw InvalidInput("covariance matrix is not symmetric (tolerance 1e-12)");
  cholesky_psd(k);  // rejects non-PSD input
}

ColoredSampler::ColoredSampler(const CovarianceSpec& spec, const MarginalFamily& family)
    : factor_(cholesky_psd(spec.k)), family_(family), scratch_(spec.dim()) {}

void ColoredSampler::sample_row(RngStream& stream, std::span<double> out) {
  const int k = factor_.rows;
  if (static_cast<int>(out.size()) != k) throw InvalidInput("sample_row: bad output size");
  for (int j = 0; j < k; ++j) scratch_[j] = family_.sample(stream);
  matvec(factor_, scratch_, out);
}

std::vector<double> sample_iid_vectors(const CovarianceSpec& spec,
                                       const MarginalFamily& family,
                                       long count, RngStream& stream) {
  if (count < 1) throw InvalidInput("sample_iid_vectors: count must be >= 1");
  ColoredSampler sampler(spec, family);
  const int k = spec.dim();
  std::vector<double> rows(static_cast<size_t>(count) * k);
  for (long i = 0; i < count; ++i)
    sampler.sample_row(stream, {rows.data() + static_cast<size_t>(i) * k, static_cast<size_t>(k)});
  return rows;
}

double dither(double x, int rho, RngStream& stream) {
  if (rho < 1) throw InvalidInput("dither: rho must be >= 1");
  const double half_cell = std::ldexp(1.0, -rho - 1);
  return floor_to_precision(x, rho) + stream.uniform_open(-half_cell, half_cell);
}

}  // namespace gsim
