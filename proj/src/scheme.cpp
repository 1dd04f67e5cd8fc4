#include "gsim/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <utility>

namespace gsim {

double SchemeRun::relay_input(int, int, const History&) { return 0.0; }
double SchemeRun::destination_input(int, int, const History&) { return 0.0; }

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InvalidInput(std::string(name) + " must be positive and finite");
  }
}

void require_nonnegative(double v, const char* name) {
  if (v < 0.0 || !std::isfinite(v)) {
    throw InvalidInput(std::string(name) + " must be nonnegative and finite");
  }
}

class MemorylessRun : public SchemeRun {
 public:
  MemorylessRun(const std::function<double(double)>* enc, const std::function<double(double)>* dec)
      : enc_(enc), dec_(dec) {}

  double source_input(int, int t, VecView x, const History&) override {
    return (*enc_)(x[static_cast<size_t>(t)]);
  }

  std::vector<double> decode(int, VecView y) override {
    std::vector<double> out(y.size());
    for (size_t t = 0; t < y.size(); ++t) out[t] = (*dec_)(y[t]);
    return out;
  }

 private:
  const std::function<double(double)>* enc_;
  const std::function<double(double)>* dec_;
};

}  // namespace

MemorylessScheme::MemorylessScheme(int block_length, std::function<double(double)> encode,
                                   std::function<double(double)> decode)
    : n_(block_length), encode_(std::move(encode)), decode_(std::move(decode)) {
  if (n_ < 1) throw InvalidInput("block length must be positive");
  if (!encode_ || !decode_) throw InvalidInput("memoryless scheme needs encoder and decoder maps");
}

std::unique_ptr<SchemeRun> MemorylessScheme::start(const RunContext&) const {
  return std::make_unique<MemorylessRun>(&encode_, &decode_);
}

std::vector<double> floor_precision(VecView x, int rho) {
  if (rho < 1) throw InvalidInput("precision must be a positive bit count");
  std::vector<double> out(x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = floor_to_precision(x[i], rho);
  return out;
}

SchemePtr baseline_uncoded_lmmse(double power, double source_var, double noise_var) {
  require_positive(power, "power");
  require_positive(source_var, "source variance");
  require_nonnegative(noise_var, "noise variance");
  const double gain = std::sqrt(power / source_var);
  const double dec_gain = std::sqrt(power * source_var) / (power + noise_var);
  return std::make_shared<MemorylessScheme>(
      1, [gain](double x) { return gain * x; }, [dec_gain](double y) { return dec_gain * y; });
}

SchemePtr baseline_sign_bpsk(double power, double noise_var, double source_var) {
  require_positive(power, "power");
  require_positive(source_var, "source variance");
  require_nonnegative(noise_var, "noise variance");
  const double amp = std::sqrt(power);
  const double level = std::sqrt(source_var * 2.0 / std::numbers::pi);
  return std::make_shared<MemorylessScheme>(
      1, [amp](double x) { return x >= 0.0 ? amp : -amp; },
      [level](double y) { return y >= 0.0 ? level : -level; });
}

SchemePtr baseline_scalar_quantizer(int rate_bits, double design_var, double loading) {
  if (rate_bits < 1 || rate_bits > 16) {
    throw InvalidInput("quantizer rate must be between 1 and 16 bits");
  }
  require_positive(design_var, "design variance");
  require_positive(loading, "loading factor");
  const double range = loading * std::sqrt(design_var);
  auto snap = [range, rate_bits](double v) { return midrise_quantize(v, range, rate_bits); };
  return std::make_shared<MemorylessScheme>(1, snap, snap);
}

SchemePtr baseline_pass_through() {
  auto id = [](double v) { return v; };
  return std::make_shared<MemorylessScheme>(1, id, id);
}

namespace {

// Forwards everything to an inner run; wrappers override what they change.
class ForwardingRun : public SchemeRun {
 public:
  explicit ForwardingRun(std::unique_ptr<SchemeRun> inner) : inner_(std::move(inner)) {}

  double source_input(int m, int t, VecView x, const History& y) override {
    return inner_->source_input(m, t, x, y);
  }
  double relay_input(int p, int t, const History& y) override {
    return inner_->relay_input(p, t, y);
  }
  double destination_input(int m, int t, const History& y) override {
    return inner_->destination_input(m, t, y);
  }
  std::vector<double> decode(int m, VecView y) override { return inner_->decode(m, y); }

 protected:
  std::unique_ptr<SchemeRun> inner_;
};

class ClipRun : public ForwardingRun {
 public:
  ClipRun(std::unique_ptr<SchemeRun> inner, double bound)
      : ForwardingRun(std::move(inner)), bound_(bound) {}

  std::vector<double> decode(int m, VecView y) override {
    std::vector<double> out = inner_->decode(m, y);
    for (double& v : out) v = std::clamp(v, -bound_, bound_);
    return out;
  }

 private:
  double bound_;
};

class ClipScheme : public CodingScheme {
 public:
  ClipScheme(SchemePtr inner, double bound) : inner_(std::move(inner)), bound_(bound) {
    if (!inner_) throw InvalidInput("clip wrapper needs an inner scheme");
    if (!(bound_ > 0.0) || !std::isfinite(bound_)) {
      throw InvalidInput("clip bound must be positive and finite");
    }
  }

  int block_length() const override { return inner_->block_length(); }
  bool requires_additive_network() const override { return inner_->requires_additive_network(); }
  std::unique_ptr<SchemeRun> start(const RunContext& ctx) const override {
    return std::make_unique<ClipRun>(inner_->start(ctx), bound_);
  }

 private:
  SchemePtr inner_;
  double bound_;
};

class EncodingPrecisionRun : public ForwardingRun {
 public:
  EncodingPrecisionRun(std::unique_ptr<SchemeRun> inner, int rho)
      : ForwardingRun(std::move(inner)), rho_(rho) {}

  double source_input(int m, int t, VecView x, const History& y) override {
    auto it = floored_.find(m);
    if (it == floored_.end()) it = floored_.emplace(m, floor_precision(x, rho_)).first;
    return inner_->source_input(m, t, it->second, y);
  }

 private:
  int rho_;
  std::map<int, std::vector<double>> floored_;  // source block is constant per run
};

class EncodingPrecisionScheme : public CodingScheme {
 public:
  EncodingPrecisionScheme(SchemePtr inner, int rho) : inner_(std::move(inner)), rho_(rho) {
    if (!inner_) throw InvalidInput("encoding-precision wrapper needs an inner scheme");
    if (rho_ < 1) throw InvalidInput("precision must be a positive bit count");
  }

  int block_length() const override { return inner_->block_length(); }
  bool requires_additive_network() const override { return inner_->requires_additive_network(); }
  std::unique_ptr<SchemeRun> start(const RunContext& ctx) const override {
    return std::make_unique<EncodingPrecisionRun>(inner_->start(ctx), rho_);
  }

 private:
  SchemePtr inner_;
  int rho_;
};

class ReadingPrecisionRun : public SchemeRun {
 public:
  ReadingPrecisionRun(std::unique_ptr<SchemeRun> inner, int rho, bool dithered, RngStream* stream)
      : inner_(std::move(inner)), rho_(rho), dithered_(dithered), stream_(stream) {}

  double source_input(int m, int t, VecView x, const History& y) override {
    std::vector<double>& cache = source_cache_[m];
    extend(cache, t, [&](int j) { return y[j]; });
    return inner_->source_input(m, t, x, History(VecView(cache.data(), t), -1, t));
  }

  double relay_input(int p, int t, const History& y) override {
    std::vector<double>& cache = relay_cache_[p];
    extend(cache, t, [&](int j) { return y[j]; });
    return inner_->relay_input(p, t, History(VecView(cache.data(), t), -1, t));
  }

  double destination_input(int m, int t, const History& y) override {
    std::vector<double>& cache = dest_cache_[m];
    extend(cache, t, [&](int j) { return y[j]; });
    return inner_->destination_input(m, t, History(VecView(cache.data(), t), -1, t));
  }

  std::vector<double> decode(int m, VecView y) override {
    // Shares the destination's cache so the decoder sees the same dither
    // realization as the destination's per-slot encoder.
    std::vector<double>& cache = dest_cache_[m];
    extend(cache, static_cast<int>(y.size()), [&](int j) { return y[static_cast<size_t>(j)]; });
    return inner_->decode(m, cache);
  }

 private:
  template <typename Fetch>
  void extend(std::vector<double>& cache, int upto, Fetch fetch) {
    while (static_cast<int>(cache.size()) < upto) {
      const int j = static_cast<int>(cache.size());
      const double raw = fetch(j);
      cache.push_back(dithered_ ? dither(raw, rho_, *stream_) : floor_to_precision(raw, rho_));
    }
  }

  std::unique_ptr<SchemeRun> inner_;
  int rho_;
  bool dithered_;
  RngStream* stream_;
  std::map<int, std::vector<double>> source_cache_;
  std::map<int, std::vector<double>> relay_cache_;
  std::map<int, std::vector<double>> dest_cache_;
};

class ReadingPrecisionScheme : public CodingScheme {
 public:
  ReadingPrecisionScheme(SchemePtr inner, int rho, bool dithered)
      : inner_(std::move(inner)), rho_(rho), dithered_(dithered) {
    if (!inner_) throw InvalidInput("reading-precision wrapper needs an inner scheme");
    if (rho_ < 1) throw InvalidInput("precision must be a positive bit count");
  }

  int block_length() const override { return inner_->block_length(); }
  bool requires_additive_network() const override { return inner_->requires_additive_network(); }
  std::unique_ptr<SchemeRun> start(const RunContext& ctx) const override {
    if (dithered_ && ctx.dither_stream == nullptr) {
      throw InvalidInput("dithered reading precision needs a dither stream in the run context");
    }
    return std::make_unique<ReadingPrecisionRun>(inner_->start(ctx), rho_, dithered_,
                                                 ctx.dither_stream);
  }

 private:
  SchemePtr inner_;
  int rho_;
  bool dithered_;
};

}  // namespace

SchemePtr clip_outputs(SchemePtr inner, double bound) {
  return std::make_shared<ClipScheme>(std::move(inner), bound);
}

SchemePtr limit_encoding_precision(SchemePtr inner, int rho) {
  return std::make_shared<EncodingPrecisionScheme>(std::move(inner), rho);
}

SchemePtr limit_reading_precision(SchemePtr inner, int rho, bool dithered) {
  return std::make_shared<ReadingPrecisionScheme>(std::move(inner), rho, dithered);
}

}  // namespace gsim
