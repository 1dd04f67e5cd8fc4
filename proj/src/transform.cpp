#include "gsim/transform.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

namespace gsim {
namespace {

void check_block_size(int b) {
  if (b < 2 || b % 2 != 0) {
    throw InvalidInput("transform block size must be a positive even integer, got " +
                       std::to_string(b));
  }
}

}  // namespace

TransformQ::TransformQ(int block_size) : b_(block_size), entries_(0, 0) {
  check_block_size(block_size);
  const int b = b_;
  entries_ = Mat(b, b);
  const double inv_sqrt_b = 1.0 / std::sqrt(static_cast<double>(b));
  const double amp = std::sqrt(2.0 / b);
  const int half = b / 2;
  for (int j = 0; j < b; ++j) {
    entries_(0, j) = inv_sqrt_b;
    entries_(half, j) = (j % 2 == 0) ? inv_sqrt_b : -inv_sqrt_b;
  }
  for (int i = 1; i < half; ++i) {
    for (int j = 0; j < b; ++j) {
      // cos(2*pi*i*j/b) has period b in i*j; reduce exactly before calling cos.
      const long long m = (static_cast<long long>(i) * j) % b;
      entries_(i, j) = amp * std::cos(2.0 * std::numbers::pi * m / b);
    }
  }
  for (int i = half + 1; i < b; ++i) {
    for (int j = 0; j < b; ++j) {
      const long long m = (static_cast<long long>(i - half) * j) % b;
      entries_(i, j) = amp * std::sin(2.0 * std::numbers::pi * m / b);
    }
  }
}

void TransformQ::apply(VecView block, std::span<double> out) const {
  if (static_cast<int>(block.size()) != b_ || static_cast<int>(out.size()) != b_) {
    throw InvalidInput("transform expects blocks of length " + std::to_string(b_));
  }
  matvec(entries_, block, out);
}

void TransformQ::apply_inverse(VecView block, std::span<double> out) const {
  if (static_cast<int>(block.size()) != b_ || static_cast<int>(out.size()) != b_) {
    throw InvalidInput("transform expects blocks of length " + std::to_string(b_));
  }
  matvec_transposed(entries_, block, out);
}

std::vector<double> TransformQ::apply(VecView block) const {
  std::vector<double> out(b_);
  apply(block, out);
  return out;
}

std::vector<double> TransformQ::apply_inverse(VecView block) const {
  std::vector<double> out(b_);
  apply_inverse(block, out);
  return out;
}

const TransformQ& TransformQ::cached(int block_size) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<TransformQ>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[block_size];
  if (!slot) slot = std::make_unique<TransformQ>(block_size);
  return *slot;
}

BlockGeometry::BlockGeometry(int inner_length, int block_size) : n(inner_length), b(block_size) {
  if (n < 1) throw InvalidInput("block geometry needs a positive inner length");
  check_block_size(b);
}

InterleavedBlocks::InterleavedBlocks(int block_size, int inner_length)
    : b_(block_size), n_(inner_length) {
  check_block_size(b_);
  if (n_ < 1) throw InvalidInput("interleaved blocks need a positive sub-block length");
  data_.assign(static_cast<size_t>(b_) * n_, 0.0);
}

std::span<double> InterleavedBlocks::sub_block(int l) {
  return std::span<double>(data_).subspan(static_cast<size_t>(l) * n_, n_);
}

std::span<const double> InterleavedBlocks::sub_block(int l) const {
  return std::span<const double>(data_).subspan(static_cast<size_t>(l) * n_, n_);
}

namespace {

void check_geometry(size_t length, const BlockGeometry& geom) {
  if (static_cast<long long>(length) != geom.total()) {
    throw InvalidInput("sequence length " + std::to_string(length) + " does not match geometry " +
                       std::to_string(geom.n) + " x " + std::to_string(geom.b));
  }
}

void check_blocks(const InterleavedBlocks& blocks, const BlockGeometry& geom) {
  if (blocks.b() != geom.b || blocks.n() != geom.n) {
    throw InvalidInput("interleaved blocks shape does not match geometry");
  }
}

}  // namespace

InterleavedBlocks interleave(VecView x, const BlockGeometry& geom) {
  check_geometry(x.size(), geom);
  InterleavedBlocks out(geom.b, geom.n);
  for (int t = 0; t < geom.n; ++t) {
    for (int l = 0; l < geom.b; ++l) {
      out.at(l, t) = x[static_cast<size_t>(t) * geom.b + l];
    }
  }
  return out;
}

std::vector<double> deinterleave(const InterleavedBlocks& blocks, const BlockGeometry& geom) {
  check_blocks(blocks, geom);
  std::vector<double> x(static_cast<size_t>(geom.total()));
  for (int t = 0; t < geom.n; ++t) {
    for (int l = 0; l < geom.b; ++l) {
      x[static_cast<size_t>(t) * geom.b + l] = blocks.at(l, t);
    }
  }
  return x;
}

InterleavedBlocks gaussianize(VecView x, const BlockGeometry& geom) {
  check_geometry(x.size(), geom);
  const TransformQ& q = TransformQ::cached(geom.b);
  InterleavedBlocks out(geom.b, geom.n);
  std::vector<double> transformed(geom.b);
  for (int t = 0; t < geom.n; ++t) {
    q.apply(x.subspan(static_cast<size_t>(t) * geom.b, geom.b), transformed);
    for (int l = 0; l < geom.b; ++l) out.at(l, t) = transformed[l];
  }
  return out;
}

std::vector<double> degaussianize(const InterleavedBlocks& blocks, const BlockGeometry& geom) {
  check_blocks(blocks, geom);
  const TransformQ& q = TransformQ::cached(geom.b);
  std::vector<double> x(static_cast<size_t>(geom.total()));
  std::vector<double> column(geom.b);
  for (int t = 0; t < geom.n; ++t) {
    for (int l = 0; l < geom.b; ++l) column[l] = blocks.at(l, t);
    q.apply_inverse(column, std::span<double>(x).subspan(static_cast<size_t>(t) * geom.b, geom.b));
  }
  return x;
}

std::vector<InterleavedBlocks> gaussianize_family(const std::vector<std::vector<double>>& xs,
                                                  const BlockGeometry& geom) {
  std::vector<InterleavedBlocks> out;
  out.reserve(xs.size());
  for (const auto& x : xs) {
    if (static_cast<long long>(x.size()) != geom.total()) {
      throw InvalidInput("all sequences must have length n*b to be gaussianized together");
    }
    out.push_back(gaussianize(x, geom));
  }
  return out;
}

}  // namespace gsim
