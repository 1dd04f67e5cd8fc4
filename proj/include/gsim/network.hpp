#ifndef GSIM_NETWORK_HPP
#define GSIM_NETWORK_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gsim/linalg.hpp"
#include "gsim/rng.hpp"
#include "gsim/scheme.hpp"

namespace gsim {

/// Node roles of a k-pair network. Nodes are numbered 0..N-1 internally;
/// source m and destination m form communicating pair m. Sources and
/// destinations are disjoint; every remaining node is a relay.
class Topology {
 public:
  Topology(int node_count, std::vector<int> sources, std::vector<int> destinations);

  int node_count() const { return node_count_; }
  int pair_count() const { return static_cast<int>(sources_.size()); }
  const std::vector<int>& sources() const { return sources_; }
  const std::vector<int>& destinations() const { return destinations_; }
  const std::vector<int>& relays() const { return relays_; }

 private:
  int node_count_;
  std::vector<int> sources_;
  std::vector<int> destinations_;
  std::vector<int> relays_;
};

/// Memoryless network: each slot maps the N channel inputs and a fresh noise
/// draw to N channel outputs. Two forms are built in: additive Y = H*U + Z,
/// and a functional form Y = h(U, Z) used for the noiseless bit-pipe network.
class NetworkModel {
 public:
  using StepFn = std::function<void(VecView u, VecView z, std::span<double> y)>;

  static NetworkModel additive(Topology topo, Mat h, CovarianceSpec noise_cov,
                               MarginalFamily noise_family);

  /// Noiseless network of point-to-point links; each node with an inbound
  /// link receives its sender's input snapped to the midpoint grid of a
  /// rate_bits-bit mid-rise quantizer over [-range, range] (a bit pipe of
  /// rate_bits per slot). Nodes without an inbound link receive 0. At most
  /// one inbound link per node.
  static NetworkModel bit_pipe(Topology topo, const std::vector<std::pair<int, int>>& links,
                               int rate_bits, double range);

  /// General functional form with exogenous noise of the given dimension.
  static NetworkModel functional(Topology topo, StepFn step, int noise_dim,
                                 std::optional<CovarianceSpec> noise_cov,
                                 std::optional<MarginalFamily> noise_family);

  const Topology& topology() const { return topo_; }
  bool is_additive() const { return additive_; }
  int noise_dim() const { return noise_dim_; }

  /// One channel use; writes the N outputs. Rejects non-finite inputs.
  void step(VecView u, VecView z, std::span<double> y) const;

  /// Fresh per-run sampler for the exogenous noise (empty for noiseless).
  std::optional<ColoredSampler> make_noise_sampler() const;

  const Mat& h_matrix() const;              // additive form only
  const CovarianceSpec& noise_cov() const;  // requires declared noise
  const MarginalFamily& noise_family() const;

  /// Same network with the noise marginals replaced (used to evaluate a
  /// scheme at its Gaussian design point); requires declared noise.
  NetworkModel with_noise_family(MarginalFamily family) const;

 private:
  NetworkModel(Topology topo, bool additive, int noise_dim);

  Topology topo_;
  bool additive_;
  int noise_dim_;
  std::optional<Mat> h_;
  std::optional<CovarianceSpec> noise_cov_;
  std::optional<MarginalFamily> noise_family_;
  StepFn step_;
};

/// Per-slot record of a run: channel inputs, outputs, and noise draws,
/// each stored slots x width row-major.
struct Transcript {
  int node_count = 0;
  int noise_dim = 0;
  int slots = 0;
  std::vector<double> u;  // slots x node_count
  std::vector<double> y;  // slots x node_count
  std::vector<double> z;  // slots x noise_dim
};

struct RunOptions {
  Transcript* transcript = nullptr;
  AccessLog* access_log = nullptr;
};

/// Executes one block of the scheme on the network: slot by slot, draws the
/// noise, queries every node's encoder against its own causal history, steps
/// the channel, and finally decodes. Returns the k reconstructions.
std::vector<std::vector<double>> run_scheme(const NetworkModel& model, const CodingScheme& scheme,
                                            const std::vector<std::vector<double>>& sources,
                                            RngStream& noise_stream, const RunContext& ctx,
                                            const RunOptions& opts = {});

}  // namespace gsim

#endif
