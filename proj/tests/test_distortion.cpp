#include <cmath>
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

SourceSpec unit_source(MarginalFamily family) {
  Mat k(1, 1);
  k(0, 0) = 1.0;
  return SourceSpec{CovarianceSpec(k), std::move(family)};
}

}  // namespace

TEST_SUITE_BEGIN("distortion");

TEST_CASE("stream ids separate roles and indices") {
  CHECK(stream_id(StreamRole::kSource, 0) != stream_id(StreamRole::kNoise, 0));
  CHECK(stream_id(StreamRole::kSource, 1) != stream_id(StreamRole::kSource, 2));
  CHECK(stream_id(StreamRole::kDither, 7) == ((3ull << 40) | 7));
}

TEST_CASE("pass-through over a clean wire has exactly zero distortion") {
  const auto report = estimate_distortion(wire_network(0.0), *baseline_pass_through(),
                                          unit_source(MarginalFamily::laplace()), 500, 71);
  CHECK(report.per_destination[0].mse == 0.0);
  CHECK(report.per_destination[0].ci95 == 0.0);
  CHECK(report.trials == 500);
}

TEST_CASE("lmmse distortion covers the closed form") {
  const auto report = estimate_distortion(wire_network(1.0), *baseline_uncoded_lmmse(1.0, 1.0, 1.0),
                                          unit_source(MarginalFamily::gaussian()), 100000, 72);
  const auto& d = report.per_destination[0];
  CHECK(std::fabs(d.mse - 0.5) <= 3.0 * d.stderr_of_mean);
  CHECK(d.ci95 == doctest::Approx(1.96 * d.stderr_of_mean).epsilon(1e-12));
}

TEST_CASE("confidence width scales like one over sqrt trials") {
  const NetworkModel model = wire_network(1.0);
  const SchemePtr scheme = baseline_uncoded_lmmse(1.0, 1.0, 1.0);
  const auto small = estimate_distortion(model, *scheme, unit_source(MarginalFamily::gaussian()),
                                         20000, 73);
  const auto big = estimate_distortion(model, *scheme, unit_source(MarginalFamily::gaussian()),
                                       40000, 73);
  const double shrink = big.per_destination[0].ci95 / small.per_destination[0].ci95;
  CHECK(shrink > 0.8 / std::sqrt(2.0));
  CHECK(shrink < 1.2 / std::sqrt(2.0));
}

TEST_CASE("estimate_distortion is reproducible bit-exactly") {
  const NetworkModel model = wire_network(1.0, MarginalFamily::uniform());
  const SchemePtr scheme = baseline_sign_bpsk(1.0, 1.0, 1.0);
  const auto a =
      estimate_distortion(model, *scheme, unit_source(MarginalFamily::laplace()), 3000, 74);
  const auto b =
      estimate_distortion(model, *scheme, unit_source(MarginalFamily::laplace()), 3000, 74);
  CHECK(a.per_destination[0].mse == b.per_destination[0].mse);
  CHECK(a.per_destination[0].stderr_of_mean == b.per_destination[0].stderr_of_mean);
}

TEST_CASE("confidence intervals are calibrated") {
  // 200 independent seeded estimates of a known distortion: the 95% CI must
  // cover the truth in at least 90% of them.
  const NetworkModel model = wire_network(1.0);
  const SchemePtr scheme = baseline_uncoded_lmmse(1.0, 1.0, 1.0);
  const double truth = oracle::lmmse_mse(1.0, 1.0, 1.0);
  int covered = 0;
  for (uint64_t seed = 1000; seed < 1200; ++seed) {
    const auto rep = estimate_distortion(model, *scheme, unit_source(MarginalFamily::gaussian()),
                                         2000, seed);
    const auto& d = rep.per_destination[0];
    if (std::fabs(d.mse - truth) <= d.ci95) ++covered;
  }
  CHECK(covered >= 180);
}

TEST_CASE("estimate_distortion validates the configuration") {
  const NetworkModel model = wire_network(1.0);
  Mat k2 = Mat::identity(2);
  const SourceSpec two_sources{CovarianceSpec(k2), MarginalFamily::gaussian()};
  CHECK_THROWS_AS(estimate_distortion(model, *baseline_pass_through(), two_sources, 100, 75),
                  InvalidInput);
  CHECK_THROWS_AS(estimate_distortion(model, *baseline_pass_through(),
                                      unit_source(MarginalFamily::gaussian()), 0, 75),
                  InvalidInput);
}

TEST_CASE("sweep without a converter yields one row as configured") {
  const NetworkModel model = wire_network(1.0, MarginalFamily::rademacher());
  SweepRequest request;
  request.converter = ConverterKind::kNone;
  request.trials = 2000;
  request.seed = 76;
  request.diagnostic_samples = 5000;
  const auto rows = convergence_sweep(model, baseline_sign_bpsk(1.0, 1.0, 1.0),
                                      unit_source(MarginalFamily::gaussian()), request);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].b == 0);
  CHECK(rows[0].diagnostics.coordinate == -1);
  CHECK(!rows[0].effective_noise.has_value());
  // raw gaussian source marginal: near-zero KS
  CHECK(rows[0].diagnostics.ks < 0.03);
}

TEST_CASE("source sweep prepends the design row and tracks the b list") {
  const NetworkModel pipe = NetworkModel::bit_pipe(Topology(2, {0}, {1}), {{0, 1}}, 3, 4.0);
  SweepRequest request;
  request.converter = ConverterKind::kSource;
  request.b_list = {4};
  request.trials = 3000;
  request.seed = 77;
  request.diagnostic_samples = 20000;
  const auto rows = convergence_sweep(pipe, baseline_scalar_quantizer(3, 1.0, 4.0),
                                      unit_source(MarginalFamily::uniform()), request);
  REQUIRE(rows.size() == 2);  // design point + the single swept b
  CHECK(rows[0].b == 0);
  CHECK(rows[1].b == 4);
  CHECK(rows[1].diagnostics.coordinate == 1);
  // uniform source at b=4 already looks fairly gaussian on coordinate 1, but
  // the design row is exactly gaussian; both KS values are small and finite
  CHECK(rows[0].diagnostics.ks < 0.03);
  CHECK(rows[1].diagnostics.ks < 0.2);
  CHECK(!rows[1].effective_noise.has_value());
}

TEST_CASE("noise sweep attaches effective-noise probes and uses gaussian design noise") {
  const NetworkModel model = wire_network(1.0, MarginalFamily::rademacher());
  SweepRequest request;
  request.converter = ConverterKind::kNoise;
  request.b_list = {4, 8};
  request.trials = 2000;
  request.seed = 78;
  request.diagnostic_samples = 20000;
  const auto rows = convergence_sweep(model, baseline_sign_bpsk(1.0, 1.0, 1.0),
                                      unit_source(MarginalFamily::gaussian()), request);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].b == 0);
  REQUIRE(rows[1].effective_noise.has_value());
  REQUIRE(rows[2].effective_noise.has_value());
  CHECK(rows[1].effective_noise->b == 4);
  CHECK(rows[1].effective_noise->rows.size() == 3);  // l = 0, b/2, b-1

  // design row uses gaussian noise of the same covariance: its distortion
  // approaches the closed form for gaussian-noise sign transmission
  const auto& d0 = rows[0].report.per_destination[0];
  CHECK(std::fabs(d0.mse - oracle::bpsk_gaussian_mse(1.0, 1.0, 1.0)) <= 4.0 * d0.stderr_of_mean);
}

TEST_CASE("sweep validation") {
  const NetworkModel model = wire_network(1.0);
  const NetworkModel pipe = NetworkModel::bit_pipe(Topology(2, {0}, {1}), {{0, 1}}, 3, 4.0);
  const SourceSpec source = unit_source(MarginalFamily::gaussian());
  const SchemePtr inner = baseline_sign_bpsk(1.0, 1.0, 1.0);

  SweepRequest odd;
  odd.converter = ConverterKind::kSource;
  odd.b_list = {4, 7};
  odd.trials = 100;
  CHECK_THROWS_WITH_AS(convergence_sweep(model, inner, source, odd), doctest::Contains("even"),
                       InvalidInput);

  SweepRequest unsorted;
  unsorted.converter = ConverterKind::kSource;
  unsorted.b_list = {8, 4};
  unsorted.trials = 100;
  CHECK_THROWS_AS(convergence_sweep(model, inner, source, unsorted), InvalidInput);

  SweepRequest pipe_noise;
  pipe_noise.converter = ConverterKind::kNoise;
  pipe_noise.b_list = {4};
  pipe_noise.trials = 100;
  CHECK_THROWS_AS(convergence_sweep(pipe, inner, source, pipe_noise), InvalidInput);
}

TEST_SUITE_END();
