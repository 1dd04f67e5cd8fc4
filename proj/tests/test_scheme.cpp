#include <cmath>
#include <memory>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"

#include "gsim/distortion.hpp"
#include "gsim/network.hpp"
#include "gsim/scheme.hpp"

using namespace gsim;

namespace {

NetworkModel wire_network(double noise_var, MarginalFamily family = MarginalFamily::gaussian()) {
  Mat h(2, 2);
  h(1, 0) = 1.0;
  Mat k(2, 2);
  k(1, 1) = noise_var;
  return NetworkModel::additive(Topology(2, {0}, {1}), h, CovarianceSpec(k), std::move(family));
}

SourceSpec gaussian_source() {
  Mat k(1, 1);
  k(0, 0) = 1.0;
  return SourceSpec{CovarianceSpec(k), MarginalFamily::gaussian()};
}

/// Fixed-output decoder used to watch the clip wrapper act on raw values.
class FixedDecoder : public CodingScheme {
  class Run : public SchemeRun {
   public:
    double source_input(int, int, VecView, const History&) override { return 0.0; }
    std::vector<double> decode(int, VecView) override { return {5.0, -7.0, 0.1}; }
  };

 public:
  int block_length() const override { return 3; }
  std::unique_ptr<SchemeRun> start(const RunContext&) const override {
    return std::make_unique<Run>();
  }
};

double encode_once(const CodingScheme& scheme, double x, const RunContext& ctx = {}) {
  const auto run = scheme.start(ctx);
  const std::vector<double> block{x};
  return run->source_input(0, 0, block, History());
}

}  // namespace

TEST_SUITE_BEGIN("scheme");

TEST_CASE("floor_precision examples") {
  CHECK(floor_precision(std::vector<double>{0.7}, 1)[0] == 0.5);
  CHECK(floor_precision(std::vector<double>{-0.3}, 2)[0] == -0.5);
  // grid points are fixed points
  const std::vector<double> grid{0.25, -1.75, 3.0};
  CHECK(floor_precision(grid, 2) == grid);
  // componentwise bound 0 <= x - floor(x) < 2^-rho
  RngStream stream(41, 1);
  for (int i = 0; i < 1000; ++i) {
    const double x = stream.normal() * 5.0;
    const double f = floor_precision(std::vector<double>{x}, 3)[0];
    CHECK(x - f >= 0.0);
    CHECK(x - f < std::ldexp(1.0, -3));
  }
}

TEST_CASE("clip wrapper clamps decoder outputs and leaves encoders alone") {
  const SchemePtr inner = std::make_shared<FixedDecoder>();
  const SchemePtr clipped = clip_outputs(inner, 2.0);
  RunContext ctx;
  const auto run = clipped->start(ctx);
  const std::vector<double> y{0.0, 0.0, 0.0};
  CHECK(run->decode(0, y) == std::vector<double>{2.0, -2.0, 0.1});

  // huge bound: inactive
  const SchemePtr loose = clip_outputs(inner, 1e9);
  CHECK(loose->start(ctx)->decode(0, y) == std::vector<double>{5.0, -7.0, 0.1});

  CHECK_THROWS_AS(clip_outputs(inner, 0.0), InvalidInput);
  CHECK_THROWS_AS(clip_outputs(inner, -1.0), InvalidInput);
  CHECK_THROWS_AS(clip_outputs(nullptr, 1.0), InvalidInput);
}

TEST_CASE("encoding precision wrapper is invariant on flooring") {
  const SchemePtr wrapped = limit_encoding_precision(baseline_scalar_quantizer(3, 1.0, 4.0), 4);
  RngStream stream(42, 1);
  for (int i = 0; i < 200; ++i) {
    const double x = stream.normal();
    const double fx = floor_to_precision(x, 4);
    CHECK(encode_once(*wrapped, x) == encode_once(*wrapped, fx));
  }
  // pass-through at rho = 1 transmits the floored value
  const SchemePtr pt = limit_encoding_precision(baseline_pass_through(), 1);
  CHECK(encode_once(*pt, 0.7) == 0.5);
}

TEST_CASE("fine encoding precision changes lmmse distortion negligibly") {
  const NetworkModel model = wire_network(1.0);
  const SchemePtr plain = baseline_uncoded_lmmse(1.0, 1.0, 1.0);
  const SchemePtr wrapped = limit_encoding_precision(plain, 30);
  const long long trials = 20000;
  const auto a = estimate_distortion(model, *plain, gaussian_source(), trials, 4242);
  const auto b = estimate_distortion(model, *wrapped, gaussian_source(), trials, 4242);
  CHECK(std::fabs(a.per_destination[0].mse - b.per_destination[0].mse) <= 1e-6);
}

TEST_CASE("reading precision wrapper floors observations and decoder inputs") {
  // Probe scheme: encoder echoes its previous observation; decode echoes y.
  class Echo : public CodingScheme {
    class Run : public SchemeRun {
     public:
      double source_input(int, int t, VecView, const History& y) override {
        return t == 0 ? 0.7 : y[t - 1];
      }
      std::vector<double> decode(int, VecView y) override {
        return std::vector<double>(y.begin(), y.end());
      }
    };

   public:
    int block_length() const override { return 2; }
    std::unique_ptr<SchemeRun> start(const RunContext&) const override {
      return std::make_unique<Run>();
    }
  };

  const SchemePtr wrapped = limit_reading_precision(std::make_shared<Echo>(), 1);
  const NetworkModel model = wire_network(0.0);
  RngStream noise(43, 1);
  RunContext ctx;
  // Slot 0 transmits 0.7; the wire delivers it to the destination, and the
  // source hears nothing (no link back), so slot 1 re-reads a floored 0.
  const auto out = run_scheme(model, *wrapped, {{0.0, 0.0}}, noise, ctx);
  // Decoder sees y = (0.7, 0) floored at rho=1 -> (0.5, 0)
  CHECK(out[0] == std::vector<double>{0.5, 0.0});
}

TEST_CASE("fine reading precision changes lmmse distortion by under 0.1%") {
  const NetworkModel model = wire_network(1.0);
  const SchemePtr plain = baseline_uncoded_lmmse(1.0, 1.0, 1.0);
  const SchemePtr wrapped = limit_reading_precision(plain, 30);
  const long long trials = 20000;
  const auto a = estimate_distortion(model, *plain, gaussian_source(), trials, 4243);
  const auto b = estimate_distortion(model, *wrapped, gaussian_source(), trials, 4243);
  CHECK(std::fabs(a.per_destination[0].mse - b.per_destination[0].mse) <=
        0.001 * a.per_destination[0].mse);
}

TEST_CASE("dithered reading stays within 2^(1-rho) of the true value") {
  // The wrapper's effective observation is floor(y) + V; verify through the
  // dither primitive it uses, then through a wrapped decode.
  RngStream stream(44, 1);
  for (int i = 0; i < 2000; ++i) {
    const double y = stream.normal() * 3.0;
    CHECK(std::fabs(dither(y, 5, stream) - y) <= std::ldexp(1.0, -4));
  }

  const SchemePtr wrapped = limit_reading_precision(baseline_pass_through(), 5, true);
  RngStream dither_stream(44, 2);
  RunContext ctx;
  ctx.dither_stream = &dither_stream;
  const auto run = wrapped->start(ctx);
  const std::vector<double> y{1.234};
  const double out = run->decode(0, y)[0];
  CHECK(std::fabs(out - 1.234) <= std::ldexp(1.0, -4));

  RunContext bare;
  CHECK_THROWS_AS(wrapped->start(bare), InvalidInput);
}

TEST_CASE("wrappers compose in either order") {
  const SchemePtr base = baseline_scalar_quantizer(3, 1.0, 4.0);
  const SchemePtr a = clip_outputs(limit_encoding_precision(base, 6), 2.0);
  const SchemePtr b = limit_encoding_precision(clip_outputs(base, 2.0), 6);
  RngStream stream(45, 1);
  RunContext ctx;
  for (int i = 0; i < 200; ++i) {
    const double x = stream.normal();
    const double fx = floor_to_precision(x, 6);
    // both orders: encoder invariant under flooring
    CHECK(encode_once(*a, x) == encode_once(*a, fx));
    CHECK(encode_once(*b, x) == encode_once(*b, fx));
    // both orders: decoder output bounded
    const double y = stream.normal() * 10.0;
    const std::vector<double> ya{y};
    CHECK(std::fabs(a->start(ctx)->decode(0, ya)[0]) <= 2.0);
    CHECK(std::fabs(b->start(ctx)->decode(0, ya)[0]) <= 2.0);
  }
}

TEST_CASE("lmmse baseline closed forms") {
  CHECK_THROWS_AS(baseline_uncoded_lmmse(0.0, 1.0, 1.0), InvalidInput);
  CHECK_THROWS_AS(baseline_uncoded_lmmse(1.0, -1.0, 1.0), InvalidInput);

  // noiseless: exact reconstruction
  const auto zero_noise = estimate_distortion(wire_network(0.0), *baseline_uncoded_lmmse(1.0, 1.0, 0.0),
                                              gaussian_source(), 2000, 4244);
  CHECK(zero_noise.per_destination[0].mse <= 1e-20);

  // large power: distortion tends to zero
  const auto strong = estimate_distortion(wire_network(1.0), *baseline_uncoded_lmmse(1e6, 1.0, 1.0),
                                          gaussian_source(), 2000, 4245);
  CHECK(strong.per_destination[0].mse <= 1e-4);
}

TEST_CASE("sign scheme distortion and error rates match the oracles") {
  // noiseless: MSE -> 1 - 2/pi
  const auto clean = estimate_distortion(wire_network(0.0), *baseline_sign_bpsk(1.0, 1.0, 1.0),
                                         gaussian_source(), 100000, 4246);
  CHECK(std::fabs(clean.per_destination[0].mse - oracle::kOneMinusTwoOverPi) <=
        3.0 * clean.per_destination[0].stderr_of_mean);

  // gaussian noise: sign-error rate -> Q(1)
  long long errors = 0, total = 0;
  const auto observer = [&](long long, int, VecView x, VecView xhat) {
    for (size_t i = 0; i < x.size(); ++i) {
      const bool sx = x[i] >= 0.0, sr = xhat[i] >= 0.0;
      errors += sx != sr;
      ++total;
    }
  };
  estimate_distortion(wire_network(1.0), *baseline_sign_bpsk(1.0, 1.0, 1.0), gaussian_source(),
                      100000, 4247, observer);
  CHECK(std::fabs(static_cast<double>(errors) / total - oracle::kQOne) <= 0.01);

  // rademacher noise of magnitude 2 overkills sqrt(P) = 1: half the signs flip
  errors = 0;
  total = 0;
  Mat k4(2, 2);
  k4(1, 1) = 4.0;
  Mat h(2, 2);
  h(1, 0) = 1.0;
  const NetworkModel loud = NetworkModel::additive(Topology(2, {0}, {1}), h, CovarianceSpec(k4),
                                                   MarginalFamily::rademacher());
  estimate_distortion(loud, *baseline_sign_bpsk(1.0, 1.0, 1.0), gaussian_source(), 40000, 4248,
                      observer);
  CHECK(oracle::bpsk_rademacher_error_rate(1.0, 2.0) == 0.5);
  CHECK(std::fabs(static_cast<double>(errors) / total - 0.5) <= 3.0 * 0.5 / std::sqrt(40000.0));

  CHECK_THROWS_AS(baseline_sign_bpsk(-1.0, 1.0, 1.0), InvalidInput);
}

TEST_CASE("scalar quantizer midpoints, saturation, and gaussian distortion") {
  const SchemePtr q1 = baseline_scalar_quantizer(1, 1.0, 1.0);
  CHECK(encode_once(*q1, 0.3) == 0.5);
  CHECK(encode_once(*q1, -0.3) == -0.5);

  const SchemePtr q3 = baseline_scalar_quantizer(3, 1.0, 4.0);
  CHECK(encode_once(*q3, 100.0) == 3.5);    // saturates
  CHECK(encode_once(*q3, -100.0) == -3.5);  // saturates
  CHECK(encode_once(*q3, 0.3) == 0.5);      // 8 cells of width 1; [0, 1) has midpoint 0.5

  CHECK_THROWS_AS(baseline_scalar_quantizer(0, 1.0, 4.0), InvalidInput);
  CHECK_THROWS_AS(baseline_scalar_quantizer(17, 1.0, 4.0), InvalidInput);
  CHECK_THROWS_AS(baseline_scalar_quantizer(3, 1.0, 0.0), InvalidInput);

  const NetworkModel pipe = NetworkModel::bit_pipe(Topology(2, {0}, {1}), {{0, 1}}, 3, 4.0);
  const auto rep = estimate_distortion(pipe, *baseline_scalar_quantizer(3, 1.0, 4.0),
                                       gaussian_source(), 100000, 4249);
  CHECK(std::fabs(rep.per_destination[0].mse - oracle::quantizer_mse(3, 4.0)) <=
        3.0 * rep.per_destination[0].stderr_of_mean);
  CHECK(oracle::quantizer_mse(3, 4.0) == doctest::Approx(oracle::kQuantizerMseR3A4).epsilon(1e-12));
  CHECK(oracle::quantizer_mse(1, 1.0) == doctest::Approx(oracle::kQuantizerMseR1A1).epsilon(1e-12));
}

TEST_SUITE_END();
