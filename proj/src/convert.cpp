#include "gsim/convert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>

#include "gsim/stats.hpp"

namespace gsim {
namespace {

int checked_total(int n, int b) {
  if (n > std::numeric_limits<int>::max() / b) {
    throw InvalidInput("converted block length n*b overflows");
  }
  return n * b;
}

class SourceConvertedRun : public SchemeRun {
 public:
  SourceConvertedRun(const CodingScheme& inner, const RunContext& ctx, int n, int b)
      : geom_(n, b), n_(n), b_(b) {
    runs_.reserve(b);
    for (int l = 0; l < b; ++l) runs_.push_back(inner.start(ctx));
  }

  double source_input(int m, int t, VecView x, const History& y) override {
    const int l = t / n_, tau = t % n_;
    const InterleavedBlocks& xt = effective_source(m, x);
    return runs_[l]->source_input(m, tau, xt.sub_block(l), window(y, l, tau));
  }

  double relay_input(int p, int t, const History& y) override {
    const int l = t / n_, tau = t % n_;
    return runs_[l]->relay_input(p, tau, window(y, l, tau));
  }

  double destination_input(int m, int t, const History& y) override {
    const int l = t / n_, tau = t % n_;
    return runs_[l]->destination_input(m, tau, window(y, l, tau));
  }

  std::vector<double> decode(int m, VecView y) override {
    InterleavedBlocks recon(b_, n_);
    for (int l = 0; l < b_; ++l) {
      std::vector<double> part = runs_[l]->decode(m, y.subspan(static_cast<size_t>(l) * n_, n_));
      if (static_cast<int>(part.size()) != n_) {
        throw SchemeError("inner decoder returned " + std::to_string(part.size()) +
                          " samples, expected " + std::to_string(n_));
      }
      for (int tau = 0; tau < n_; ++tau) recon.at(l, tau) = part[tau];
    }
    return degaussianize(recon, geom_);
  }

 private:
  const InterleavedBlocks& effective_source(int m, VecView x) {
    auto it = xtilde_.find(m);
    if (it == xtilde_.end()) it = xtilde_.emplace(m, gaussianize(x, geom_)).first;
    return it->second;
  }

  // Inner run l at inner slot tau sees the observations of its own window of
  // outer slots [l*n, l*n + tau).
  History window(const History& y, int l, int tau) {
    scratch_.resize(static_cast<size_t>(tau));
    const int base = l * n_;
    for (int j = 0; j < tau; ++j) scratch_[static_cast<size_t>(j)] = y[base + j];
    return History(VecView(scratch_.data(), static_cast<size_t>(tau)), -1, tau);
  }

  BlockGeometry geom_;
  int n_, b_;
  std::vector<std::unique_ptr<SchemeRun>> runs_;
  std::map<int, InterleavedBlocks> xtilde_;  // per source, constant over the run
  std::vector<double> scratch_;
};

class SourceConvertedScheme : public CodingScheme {
 public:
  SourceConvertedScheme(SchemePtr inner, int b) : inner_(std::move(inner)), b_(b), n_(0) {
    if (!inner_) throw InvalidInput("source conversion needs an inner scheme");
    n_ = inner_->block_length();
    (void)BlockGeometry(n_, b_);  // rejects odd or nonpositive b
    checked_total(n_, b_);
  }

  int block_length() const override { return n_ * b_; }
  bool requires_additive_network() const override { return inner_->requires_additive_network(); }
  std::unique_ptr<SchemeRun> start(const RunContext& ctx) const override {
    return std::make_unique<SourceConvertedRun>(*inner_, ctx, n_, b_);
  }

 private:
  SchemePtr inner_;
  int b_, n_;
};

class NoiseConvertedRun : public SchemeRun {
 public:
  NoiseConvertedRun(const CodingScheme& inner, const RunContext& ctx, int n, int b)
      : geom_(n, b),
        n_(n),
        b_(b),
        q_(&TransformQ::cached(b)),
        block_(static_cast<size_t>(b)),
        trans_(static_cast<size_t>(b)),
        utilde_(static_cast<size_t>(b)) {
    runs_.reserve(b);
    for (int l = 0; l < b; ++l) runs_.push_back(inner.start(ctx));
  }

  double source_input(int m, int t, VecView x, const History& y) override {
    NodeState& st = state(source_state_, m);
    const int teff = t / b_, phase = t % b_;
    if (st.ready_slot != teff) {
      prepare(st, teff, y, [&](int l, const History& hist) {
        return runs_[l]->source_input(m, teff, x.subspan(static_cast<size_t>(l) * n_, n_), hist);
      });
    }
    return st.u_block[static_cast<size_t>(phase)];
  }

  double relay_input(int p, int t, const History& y) override {
    NodeState& st = state(relay_state_, p);
    const int teff = t / b_, phase = t % b_;
    if (st.ready_slot != teff) {
      prepare(st, teff, y,
              [&](int l, const History& hist) { return runs_[l]->relay_input(p, teff, hist); });
    }
    return st.u_block[static_cast<size_t>(phase)];
  }

  double destination_input(int m, int t, const History& y) override {
    NodeState& st = state(dest_state_, m);
    const int teff = t / b_, phase = t % b_;
    if (st.ready_slot != teff) {
      prepare(st, teff, y, [&](int l, const History& hist) {
        return runs_[l]->destination_input(m, teff, hist);
      });
    }
    return st.u_block[static_cast<size_t>(phase)];
  }

  std::vector<double> decode(int m, VecView y) override {
    InterleavedBlocks eff = gaussianize(y, geom_);  // forward transform per physical block
    std::vector<double> out(static_cast<size_t>(geom_.total()));
    for (int l = 0; l < b_; ++l) {
      std::vector<double> part = runs_[l]->decode(m, eff.sub_block(l));
      if (static_cast<int>(part.size()) != n_) {
        throw SchemeError("inner decoder returned " + std::to_string(part.size()) +
                          " samples, expected " + std::to_string(n_));
      }
      std::copy(part.begin(), part.end(), out.begin() + static_cast<size_t>(l) * n_);
    }
    return out;
  }

 private:
  struct NodeState {
    NodeState(int b, int n) : eff_y(b, n), u_block(static_cast<size_t>(b)) {}
    InterleavedBlocks eff_y;      // effective received signals, filled to eff_filled
    int eff_filled = 0;           // effective slots materialized so far
    std::vector<double> u_block;  // physical inputs for slots [ready_slot*b, +b)
    int ready_slot = -1;
  };

  NodeState& state(std::map<int, NodeState>& m, int id) {
    auto it = m.find(id);
    if (it == m.end()) it = m.emplace(id, NodeState(b_, n_)).first;
    return it->second;
  }

  // At the first query of effective slot teff (physical slot teff*b), folds
  // the newly completed physical blocks into the node's effective history,
  // collects the b effective inputs from the inner runs, and maps them to
  // the b physical transmit signals via the inverse transform.
  template <typename EffectiveInput>
  void prepare(NodeState& st, int teff, const History& y, EffectiveInput effective_input) {
    for (int tp = st.eff_filled; tp < teff; ++tp) {
      for (int j = 0; j < b_; ++j) block_[static_cast<size_t>(j)] = y[tp * b_ + j];
      q_->apply(block_, trans_);
      for (int l = 0; l < b_; ++l) st.eff_y.at(l, tp) = trans_[static_cast<size_t>(l)];
    }
    st.eff_filled = std::max(st.eff_filled, teff);
    for (int l = 0; l < b_; ++l) {
      History hist(VecView(st.eff_y.sub_block(l).data(), static_cast<size_t>(teff)), -1, teff);
      utilde_[static_cast<size_t>(l)] = effective_input(l, hist);
    }
    q_->apply_inverse(utilde_, st.u_block);
    st.ready_slot = teff;
  }

  BlockGeometry geom_;
  int n_, b_;
  const TransformQ* q_;
  std::vector<std::unique_ptr<SchemeRun>> runs_;
  std::map<int, NodeState> source_state_, relay_state_, dest_state_;
  std::vector<double> block_, trans_, utilde_;
};

class NoiseConvertedScheme : public CodingScheme {
 public:
  NoiseConvertedScheme(SchemePtr inner, int b) : inner_(std::move(inner)), b_(b), n_(0) {
    if (!inner_) throw InvalidInput("noise conversion needs an inner scheme");
    n_ = inner_->block_length();
    (void)BlockGeometry(n_, b_);  // rejects odd or nonpositive b
    checked_total(n_, b_);
  }

  int block_length() const override { return n_ * b_; }
  bool requires_additive_network() const override { return true; }
  std::unique_ptr<SchemeRun> start(const RunContext& ctx) const override {
    return std::make_unique<NoiseConvertedRun>(*inner_, ctx, n_, b_);
  }

 private:
  SchemePtr inner_;
  int b_, n_;
};

}  // namespace

SchemePtr convert_for_source(SchemePtr inner, int b) {
  return std::make_shared<SourceConvertedScheme>(std::move(inner), b);
}

SchemePtr convert_for_noise(SchemePtr inner, int b) {
  return std::make_shared<NoiseConvertedScheme>(std::move(inner), b);
}

TransformProbe transform_probe(const CovarianceSpec& spec, const MarginalFamily& family, int b,
                               long long samples, const std::vector<int>& probe_l,
                               RngStream& stream) {
  const TransformQ& q = TransformQ::cached(b);
  if (samples < 2) throw InvalidInput("transform probe needs at least two samples");
  if (probe_l.empty()) throw InvalidInput("transform probe needs at least one coordinate");
  for (int l : probe_l) {
    if (l < 0 || l >= b) {
      throw InvalidInput("probe coordinate " + std::to_string(l) + " is out of range for b = " +
                         std::to_string(b));
    }
  }
  const int k = spec.dim();
  ColoredSampler sampler(spec, family);

  // values[p][c] holds the samples of coordinate c of probed row p.
  std::vector<std::vector<std::vector<double>>> values(
      probe_l.size(), std::vector<std::vector<double>>(static_cast<size_t>(k)));
  for (auto& per_coord : values) {
    for (auto& v : per_coord) v.reserve(static_cast<size_t>(samples));
  }

  std::vector<double> block(static_cast<size_t>(b) * k);  // b rows of k noise coordinates
  for (long long s = 0; s < samples; ++s) {
    for (int j = 0; j < b; ++j) {
      sampler.sample_row(stream, std::span<double>(block).subspan(static_cast<size_t>(j) * k, k));
    }
    for (size_t p = 0; p < probe_l.size(); ++p) {
      const int l = probe_l[p];
      for (int c = 0; c < k; ++c) {
        double acc = 0.0;
        for (int j = 0; j < b; ++j) acc += q.coeff(l, j) * block[static_cast<size_t>(j) * k + c];
        values[p][static_cast<size_t>(c)].push_back(acc);
      }
    }
  }

  TransformProbe probe;
  probe.b = b;
  probe.samples = samples;
  probe.rows.reserve(probe_l.size());
  const double t = static_cast<double>(samples);
  for (size_t p = 0; p < probe_l.size(); ++p) {
    TransformProbeRow row;
    row.l = probe_l[p];
    row.covariance = Mat(k, k);
    row.covariance_stderr = Mat(k, k);
    for (int c = 0; c < k; ++c) {
      for (int d = c; d < k; ++d) {
        double sum = 0.0, sumsq = 0.0;
        const auto& vc = values[p][static_cast<size_t>(c)];
        const auto& vd = values[p][static_cast<size_t>(d)];
        for (long long s = 0; s < samples; ++s) {
          const double prod = vc[static_cast<size_t>(s)] * vd[static_cast<size_t>(s)];
          sum += prod;
          sumsq += prod * prod;
        }
        const double mean = sum / t;
        const double var = std::max(0.0, (sumsq - t * mean * mean) / (t - 1.0));
        row.covariance(c, d) = row.covariance(d, c) = mean;
        row.covariance_stderr(c, d) = row.covariance_stderr(d, c) = std::sqrt(var / t);
      }
      const auto& vc = values[p][static_cast<size_t>(c)];
      const MomentSummary ms = moment_summary(vc);
      const double sigma = std::sqrt(spec.k(c, c));
      row.ks.push_back(sigma > 0.0 ? ks_statistic(vc, sigma) : 0.0);
      row.skewness.push_back(ms.skewness);
      row.excess_kurtosis.push_back(ms.excess_kurtosis);
      row.lag1_autocorr.push_back(lag1_autocorrelation(vc));
    }
    probe.rows.push_back(std::move(row));
  }
  return probe;
}

TransformProbe effective_noise_probe(const NetworkModel& model, int b, long long samples,
                                     const std::vector<int>& probe_l, RngStream& stream) {
  if (!model.is_additive()) {
    throw InvalidInput("the effective-noise probe is only defined for additive-noise networks");
  }
  return transform_probe(model.noise_cov(), model.noise_family(), b, samples, probe_l, stream);
}

}  // namespace gsim
