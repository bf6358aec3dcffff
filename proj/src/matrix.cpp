#include "dgcn/matrix.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace dgcn {

BoolMatrix::BoolMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(rows * words_, 0) {}

BoolMatrix BoolMatrix::identity(std::size_t n) {
  BoolMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

void BoolMatrix::set(std::size_t r, std::size_t c, bool value) {
  auto& word = bits_[r * words_ + c / 64];
  const std::uint64_t mask = std::uint64_t{1} << (c % 64);
  word = value ? (word | mask) : (word & ~mask);
}

std::size_t BoolMatrix::count() const {
  std::size_t n = 0;
  for (auto w : bits_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

BoolMatrix BoolMatrix::operator*(const BoolMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("BoolMatrix: dimension mismatch in product");
  BoolMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    auto dst = out.row(i);
    for (std::size_t k = 0; k < cols_; ++k) {
      if (!get(i, k)) continue;
      auto src = rhs.row(k);
      for (std::size_t w = 0; w < dst.size(); ++w) dst[w] |= src[w];
    }
  }
  return out;
}

BoolMatrix BoolMatrix::operator|(const BoolMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("BoolMatrix: shape mismatch");
  BoolMatrix out = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] |= rhs.bits_[i];
  return out;
}

BoolMatrix BoolMatrix::operator&(const BoolMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("BoolMatrix: shape mismatch");
  BoolMatrix out = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] &= rhs.bits_[i];
  return out;
}

BoolMatrix BoolMatrix::transposed() const {
  BoolMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (get(i, j)) out.set(j, i);
  return out;
}

IntMatrix::IntMatrix(const BoolMatrix& m) : IntMatrix(m.rows(), m.cols()) {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) data_[i * cols_ + j] = m.get(i, j) ? 1 : 0;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("IntMatrix: dimension mismatch in product");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const auto a = data_[i * cols_ + k];
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out.data_[i * rhs.cols_ + j] += a * rhs.data_[k * rhs.cols_ + j];
    }
  }
  return out;
}

std::int64_t IntMatrix::trace() const {
  std::int64_t t = 0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += data_[i * cols_ + i];
  return t;
}

std::int64_t IntMatrix::sum() const {
  std::int64_t s = 0;
  for (auto v : data_) s += v;
  return s;
}

}  // namespace dgcn
