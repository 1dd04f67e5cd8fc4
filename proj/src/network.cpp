#include "gsim/network.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gsim {
namespace {

void check_node_id(int id, int node_count, const char* what) {
  if (id < 0 || id >= node_count) {
    throw InvalidInput(std::string(what) + " node id " + std::to_string(id) +
                       " is out of range for " + std::to_string(node_count) + " nodes");
  }
}

}  // namespace

Topology::Topology(int node_count, std::vector<int> sources, std::vector<int> destinations)
    : node_count_(node_count), sources_(std::move(sources)), destinations_(std::move(destinations)) {
  if (node_count_ < 1) throw InvalidInput("topology needs at least one node");
  if (sources_.empty()) throw InvalidInput("topology needs at least one source/destination pair");
  if (sources_.size() != destinations_.size()) {
    throw InvalidInput("topology needs as many destinations as sources");
  }
  std::vector<bool> role(node_count_, false);
  for (int s : sources_) {
    check_node_id(s, node_count_, "source");
    if (role[s]) throw InvalidInput("node " + std::to_string(s) + " has more than one role");
    role[s] = true;
  }
  for (int d : destinations_) {
    check_node_id(d, node_count_, "destination");
    if (role[d]) throw InvalidInput("node " + std::to_string(d) + " has more than one role");
    role[d] = true;
  }
  for (int i = 0; i < node_count_; ++i) {
    if (!role[i]) relays_.push_back(i);
  }
}

NetworkModel::NetworkModel(Topology topo, bool additive, int noise_dim)
    : topo_(std::move(topo)), additive_(additive), noise_dim_(noise_dim) {}

NetworkModel NetworkModel::additive(Topology topo, Mat h, CovarianceSpec noise_cov,
                                    MarginalFamily noise_family) {
  const int n = topo.node_count();
  if (h.rows != n || h.cols != n) {
    throw InvalidInput("channel matrix must be " + std::to_string(n) + " x " + std::to_string(n));
  }
  if (!all_finite(h.a)) throw InvalidInput("channel matrix entries must be finite");
  if (noise_cov.dim() != n) {
    throw InvalidInput("noise covariance must have one coordinate per node");
  }
  NetworkModel model(std::move(topo), true, n);
  model.h_ = std::move(h);
  model.noise_cov_ = std::move(noise_cov);
  model.noise_family_ = std::move(noise_family);
  return model;
}

NetworkModel NetworkModel::bit_pipe(Topology topo, const std::vector<std::pair<int, int>>& links,
                                    int rate_bits, double range) {
  const int n = topo.node_count();
  if (rate_bits < 1 || rate_bits > 16) {
    throw InvalidInput("bit-pipe rate must be between 1 and 16 bits");
  }
  if (!(range > 0.0) || !std::isfinite(range)) {
    throw InvalidInput("bit-pipe range must be positive and finite");
  }
  std::vector<int> inbound(n, -1);
  for (const auto& [from, to] : links) {
    check_node_id(from, n, "link sender");
    check_node_id(to, n, "link receiver");
    if (from == to) throw InvalidInput("bit-pipe links must join distinct nodes");
    if (inbound[to] != -1) {
      throw InvalidInput("node " + std::to_string(to) + " has more than one inbound bit pipe");
    }
    inbound[to] = from;
  }
  NetworkModel model(std::move(topo), false, 0);
  model.step_ = [inbound, rate_bits, range](VecView u, VecView, std::span<double> y) {
    for (size_t i = 0; i < y.size(); ++i) {
      y[i] = inbound[i] >= 0 ? midrise_quantize(u[static_cast<size_t>(inbound[i])], range, rate_bits)
                             : 0.0;
    }
  };
  return model;
}

NetworkModel NetworkModel::functional(Topology topo, StepFn step, int noise_dim,
                                      std::optional<CovarianceSpec> noise_cov,
                                      std::optional<MarginalFamily> noise_family) {
  if (!step) throw InvalidInput("functional network needs a step map");
  if (noise_dim < 0) throw InvalidInput("noise dimension must be nonnegative");
  if (noise_dim > 0 && (!noise_cov || !noise_family)) {
    throw InvalidInput("noisy functional network needs a noise covariance and family");
  }
  if (noise_cov && noise_cov->dim() != noise_dim) {
    throw InvalidInput("noise covariance dimension must match the declared noise dimension");
  }
  NetworkModel model(std::move(topo), false, noise_dim);
  model.step_ = std::move(step);
  model.noise_cov_ = std::move(noise_cov);
  model.noise_family_ = std::move(noise_family);
  return model;
}

void NetworkModel::step(VecView u, VecView z, std::span<double> y) const {
  const int n = topo_.node_count();
  if (static_cast<int>(u.size()) != n || static_cast<int>(y.size()) != n) {
    throw InvalidInput("channel inputs and outputs must have one entry per node");
  }
  if (static_cast<int>(z.size()) != noise_dim_) {
    throw InvalidInput("noise draw has the wrong dimension");
  }
  if (!all_finite(u)) throw InvalidInput("channel inputs must be finite");
  if (additive_) {
    matvec(*h_, u, y);
    for (int i = 0; i < n; ++i) y[i] += z[i];
  } else {
    step_(u, z, y);
  }
}

std::optional<ColoredSampler> NetworkModel::make_noise_sampler() const {
  if (noise_dim_ == 0) return std::nullopt;
  return ColoredSampler(*noise_cov_, *noise_family_);
}

const Mat& NetworkModel::h_matrix() const {
  if (!h_) throw InvalidInput("network has no channel matrix (not additive)");
  return *h_;
}

const CovarianceSpec& NetworkModel::noise_cov() const {
  if (!noise_cov_) throw InvalidInput("network has no declared noise");
  return *noise_cov_;
}

const MarginalFamily& NetworkModel::noise_family() const {
  if (!noise_family_) throw InvalidInput("network has no declared noise");
  return *noise_family_;
}

NetworkModel NetworkModel::with_noise_family(MarginalFamily family) const {
  if (!noise_family_) throw InvalidInput("network has no declared noise");
  NetworkModel model = *this;
  model.noise_family_ = std::move(family);
  return model;
}

std::vector<std::vector<double>> run_scheme(const NetworkModel& model, const CodingScheme& scheme,
                                            const std::vector<std::vector<double>>& sources,
                                            RngStream& noise_stream, const RunContext& ctx,
                                            const RunOptions& opts) {
  const Topology& topo = model.topology();
  const int n = scheme.block_length();
  const int node_count = topo.node_count();
  const int k = topo.pair_count();
  if (static_cast<int>(sources.size()) != k) {
    throw InvalidInput("expected " + std::to_string(k) + " source blocks, got " +
                       std::to_string(sources.size()));
  }
  for (const auto& x : sources) {
    if (static_cast<int>(x.size()) != n) {
      throw InvalidInput("source block length " + std::to_string(x.size()) +
                         " does not match scheme block length " + std::to_string(n));
    }
    if (!all_finite(x)) throw InvalidInput("source blocks must be finite");
  }
  if (scheme.requires_additive_network() && !model.is_additive()) {
    throw InvalidInput("this scheme is only valid on additive-noise networks");
  }

  auto run = scheme.start(ctx);
  auto sampler = model.make_noise_sampler();
  std::vector<std::vector<double>> received(node_count);
  for (auto& h : received) h.reserve(n);
  std::vector<double> u(node_count), z(model.noise_dim()), y(node_count);

  Transcript* tr = opts.transcript;
  if (tr) {
    tr->node_count = node_count;
    tr->noise_dim = model.noise_dim();
    tr->slots = n;
    tr->u.clear();
    tr->y.clear();
    tr->z.clear();
    tr->u.reserve(static_cast<size_t>(n) * node_count);
    tr->y.reserve(static_cast<size_t>(n) * node_count);
    tr->z.reserve(static_cast<size_t>(n) * model.noise_dim());
  }

  for (int t = 0; t < n; ++t) {
    // Noise is drawn before any encoder runs, so it cannot depend on inputs.
    if (sampler) sampler->sample_row(noise_stream, z);
    for (int m = 0; m < k; ++m) {
      const int node = topo.sources()[m];
      History hist(VecView(received[node].data(), t), node, t, opts.access_log);
      u[node] = run->source_input(m, t, sources[m], hist);
    }
    for (size_t p = 0; p < topo.relays().size(); ++p) {
      const int node = topo.relays()[p];
      History hist(VecView(received[node].data(), t), node, t, opts.access_log);
      u[node] = run->relay_input(static_cast<int>(p), t, hist);
    }
    for (int m = 0; m < k; ++m) {
      const int node = topo.destinations()[m];
      History hist(VecView(received[node].data(), t), node, t, opts.access_log);
      u[node] = run->destination_input(m, t, hist);
    }
    for (int i = 0; i < node_count; ++i) {
      if (!std::isfinite(u[i])) {
        throw SchemeError("scheme produced a non-finite channel input at node " +
                          std::to_string(i) + ", slot " + std::to_string(t));
      }
    }
    model.step(u, z, y);
    for (int i = 0; i < node_count; ++i) {
      if (!std::isfinite(y[i])) {
        throw SchemeError("network produced a non-finite output at node " + std::to_string(i) +
                          ", slot " + std::to_string(t));
      }
      received[i].push_back(y[i]);
    }
    if (tr) {
      tr->u.insert(tr->u.end(), u.begin(), u.end());
      tr->y.insert(tr->y.end(), y.begin(), y.end());
      tr->z.insert(tr->z.end(), z.begin(), z.end());
    }
  }

  std::vector<std::vector<double>> reconstructions(k);
  for (int m = 0; m < k; ++m) {
    reconstructions[m] = run->decode(m, received[topo.destinations()[m]]);
    if (static_cast<int>(reconstructions[m].size()) != n) {
      throw SchemeError("decoder for pair " + std::to_string(m) + " returned " +
                        std::to_string(reconstructions[m].size()) + " samples, expected " +
                        std::to_string(n));
    }
    if (!all_finite(reconstructions[m])) {
      throw SchemeError("decoder for pair " + std::to_string(m) + " produced non-finite values");
    }
  }
  return reconstructions;
}

}  // namespace gsim
