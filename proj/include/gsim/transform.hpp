#ifndef GSIM_TRANSFORM_HPP
#define GSIM_TRANSFORM_HPP

#include <span>
#include <vector>

#include "gsim/common.hpp"
#include "gsim/linalg.hpp"

namespace gsim {

/// Real orthogonal b x b matrix that maps an i.i.d. block to approximately
/// Gaussian coordinates. Row 0 is the constant 1/sqrt(b), rows 1..b/2-1 are
/// scaled cosines, row b/2 alternates +-1/sqrt(b), and rows b/2+1..b-1 are
/// scaled sines. Only even b >= 2 is supported; the inverse is the transpose.
class TransformQ {
 public:
  explicit TransformQ(int block_size);

  int block_size() const { return b_; }
  double coeff(int i, int j) const { return entries_(i, j); }
  const Mat& entries() const { return entries_; }

  // out = Q * block; out must not alias block.
  void apply(VecView block, std::span<double> out) const;
  // out = Q^T * block, the exact inverse; out must not alias block.
  void apply_inverse(VecView block, std::span<double> out) const;

  std::vector<double> apply(VecView block) const;
  std::vector<double> apply_inverse(VecView block) const;

  // Shared per-size instance; built on first use, safe for concurrent readers.
  static const TransformQ& cached(int block_size);

 private:
  int b_;
  Mat entries_;
};

/// Shape of a length n*b sequence viewed as n physical blocks of length b
/// or, after interleaving, as b sub-blocks of length n.
struct BlockGeometry {
  int n;  // inner block length / sub-block length
  int b;  // transform size / physical block length

  BlockGeometry(int inner_length, int block_size);
  long long total() const { return static_cast<long long>(n) * b; }
};

/// b sub-blocks of length n cut from one n*b sequence. Entry (l, t) is
/// transform coordinate l of original block t, stored at data[l * n + t].
class InterleavedBlocks {
 public:
  InterleavedBlocks(int block_size, int inner_length);

  int b() const { return b_; }
  int n() const { return n_; }

  double& at(int l, int t) { return data_[static_cast<size_t>(l) * n_ + t]; }
  double at(int l, int t) const { return data_[static_cast<size_t>(l) * n_ + t]; }

  std::span<double> sub_block(int l);
  std::span<const double> sub_block(int l) const;

  const std::vector<double>& data() const { return data_; }

 private:
  int b_;
  int n_;
  std::vector<double> data_;
};

/// Pure index permutation: sub-block l gets x[t*b + l] at position t.
InterleavedBlocks interleave(VecView x, const BlockGeometry& geom);

/// Exact inverse of interleave.
std::vector<double> deinterleave(const InterleavedBlocks& blocks, const BlockGeometry& geom);

/// Splits x into n blocks of length b, applies Q to each, and interleaves
/// the results into b sub-blocks of length n. Norm-preserving per block.
InterleavedBlocks gaussianize(VecView x, const BlockGeometry& geom);

/// Exact inverse of gaussianize (transpose transform, then deinterleave).
std::vector<double> degaussianize(const InterleavedBlocks& blocks, const BlockGeometry& geom);

/// Applies gaussianize to each of k equal-length sequences.
std::vector<InterleavedBlocks> gaussianize_family(const std::vector<std::vector<double>>& xs,
                                                  const BlockGeometry& geom);

}  // namespace gsim

#endif
