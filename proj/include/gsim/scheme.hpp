#ifndef GSIM_SCHEME_HPP
#define GSIM_SCHEME_HPP

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "gsim/common.hpp"
#include "gsim/rng.hpp"

namespace gsim {

/// Record of every received-signal read an encoder performed, kept by the
/// engine when instrumentation is requested.
struct AccessLog {
  struct Read {
    int node;   // reader's node id
    int slot;   // slot during which the read happened
    int index;  // observation index that was read
  };
  std::vector<Read> reads;
};

/// Read-only window onto one node's received signals y[0..size-1], handed to
/// encoders at slot t with size == t. Indexing past the window throws, so an
/// encoder can never observe the present or the future.
class History {
 public:
  History() = default;
  History(VecView visible, int node, int slot, AccessLog* log = nullptr)
      : visible_(visible), node_(node), slot_(slot), log_(log) {}

  int size() const { return static_cast<int>(visible_.size()); }

  double operator[](int t) const {
    if (t < 0 || t >= size()) throw CausalityError(node_, slot_, t);
    if (log_) log_->reads.push_back({node_, slot_, t});
    return visible_[static_cast<size_t>(t)];
  }

 private:
  VecView visible_{};
  int node_ = -1;
  int slot_ = -1;
  AccessLog* log_ = nullptr;
};

/// Shared services a run may use; schemes that need none ignore it.
struct RunContext {
  RngStream* dither_stream = nullptr;  // consumed by the dithered reading-precision wrapper
};

/// One execution of a scheme over a single block. Holds whatever per-run
/// state the scheme needs (sub-scheme runs, cached transforms, buffers); the
/// engine drives it slot by slot and calls decode once at the end.
class SchemeRun {
 public:
  virtual ~SchemeRun() = default;

  /// Channel input of source m at slot t, given its full source block x and
  /// its own received history.
  virtual double source_input(int m, int t, VecView x, const History& y) = 0;

  /// Channel input of relay p at slot t. Relays transmit nothing by default.
  virtual double relay_input(int p, int t, const History& y);

  /// Channel input of destination m at slot t; silent by default.
  virtual double destination_input(int m, int t, const History& y);

  /// Reconstruction of source m from destination m's full received block.
  virtual std::vector<double> decode(int m, VecView y) = 0;
};

/// A block coding scheme: per-slot encoders for every node role plus an
/// end-of-block decoder per destination. Immutable once built; start() makes
/// an independent run, so one scheme object can serve many trials.
class CodingScheme {
 public:
  virtual ~CodingScheme() = default;

  virtual int block_length() const = 0;
  virtual std::unique_ptr<SchemeRun> start(const RunContext& ctx) const = 0;

  /// True when the scheme's construction is only valid on networks of the
  /// form Y = H*U + Z (the channel-side conversion needs linearity).
  virtual bool requires_additive_network() const { return false; }
};

using SchemePtr = std::shared_ptr<const CodingScheme>;

/// Stateless per-slot scheme: encoder maps x[t] to the channel input and the
/// decoder maps y[t] to the reconstruction, slot by slot.
class MemorylessScheme : public CodingScheme {
 public:
  MemorylessScheme(int block_length, std::function<double(double)> encode,
                   std::function<double(double)> decode);

  int block_length() const override { return n_; }
  std::unique_ptr<SchemeRun> start(const RunContext& ctx) const override;

 private:
  int n_;
  std::function<double(double)> encode_;
  std::function<double(double)> decode_;
};

/// Componentwise floor of a sequence to rho fractional bits.
std::vector<double> floor_precision(VecView x, int rho);

/// Single-slot scheme transmitting U = sqrt(P/var) * X with the linear
/// minimum-mean-square-error decoder designed for a Gaussian source of the
/// given variance and Gaussian noise of variance noise_var.
SchemePtr baseline_uncoded_lmmse(double power, double source_var, double noise_var);

/// Single-slot scheme transmitting +-sqrt(P) by the sign of X; the decoder
/// declares the sign of Y and reconstructs the Gaussian conditional mean
/// +-sigma*sqrt(2/pi). sign(0) counts as +.
SchemePtr baseline_sign_bpsk(double power, double noise_var, double source_var);

/// Single-slot mid-rise quantizer designed for a Gaussian of variance
/// sigma^2: 2^rate_bits cells over [-loading*sigma, loading*sigma]. The
/// encoder transmits the cell midpoint (the index in a channel-proof
/// representation); the decoder snaps its observation back to the nearest
/// design midpoint.
SchemePtr baseline_scalar_quantizer(int rate_bits, double design_var, double loading);

/// Single-slot identity scheme: U = X, X-hat = Y.
SchemePtr baseline_pass_through();

/// Replaces every decoder output by its clamp to [-bound, bound]; encoders
/// are untouched.
SchemePtr clip_outputs(SchemePtr inner, double bound);

/// Source encoders observe floor_precision(x, rho) instead of x, making the
/// scheme invariant to source perturbations below 2^-rho.
SchemePtr limit_encoding_precision(SchemePtr inner, int rho);

/// Every encoder and decoder observes received signals floored to rho
/// fractional bits. With dithered = true an independent uniform on
/// (-2^-(rho+1), 2^-(rho+1)) is added after flooring, keeping the effective
/// observation within 2^(1-rho) of the true value; this variant needs a
/// dither stream in the run context.
SchemePtr limit_reading_precision(SchemePtr inner, int rho, bool dithered = false);

}  // namespace gsim

#endif
