#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bsfe/rng.hpp"

namespace bsfe {

// Packed bit string. Bit i lives in word i/64 at position i%64 (index 0 is the
// least significant bit of word 0). Bits past size() are always zero.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t n) : size_(n), words_(word_count(n), 0) {}

  // "1011" -> bits {1,0,1,1}; index 0 is the first character.
  static BitVector from_string(std::string_view s);
  static BitVector from_word(std::uint64_t w, std::size_t n);
  static BitVector from_words(std::span<const std::uint64_t> words, std::size_t n);
  static BitVector random(std::size_t n, Rng& rng);
  static BitVector ones(std::size_t n);

  static constexpr std::size_t word_count(std::size_t n) { return (n + 63) / 64; }

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  bool operator[](std::size_t i) const { return get(i); }
  void set(std::size_t i, bool v) {
    const std::uint64_t m = std::uint64_t{1} << (i & 63);
    if (v)
      words_[i >> 6] |= m;
    else
      words_[i >> 6] &= ~m;
  }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  void push_back(bool v);
  void append(const BitVector& other);
  void resize(std::size_t n);

  BitVector& operator^=(const BitVector& o);
  BitVector& operator&=(const BitVector& o);
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }
  BitVector operator~() const;

  bool operator==(const BitVector& o) const = default;

  std::size_t popcount() const;
  bool parity() const;
  bool is_zero() const;
  // Inner product over GF(2).
  bool dot(const BitVector& o) const;

  BitVector slice(std::size_t begin, std::size_t len) const;
  // x|_I: the bits of *this at positions where mask is set, in order.
  BitVector compress(const BitVector& mask) const;

  // First min(64, size) bits as an integer.
  std::uint64_t to_u64() const { return words_.empty() ? 0 : words_[0]; }
  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> mutable_words() { return words_; }

  std::string to_string() const;
  // Little-endian hex: byte k holds bits 8k..8k+7, printed as two digits.
  std::string to_hex() const;
  static BitVector from_hex(std::string_view hex, std::size_t n);

 private:
  void trim();

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

// Row-major GF(2) matrix.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  static BitMatrix identity(std::size_t n);
  static BitMatrix random(std::size_t rows, std::size_t cols, Rng& rng);
  static BitMatrix from_rows(std::vector<BitVector> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const { return data_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool v) { data_[r].set(c, v); }
  const BitVector& row(std::size_t r) const { return data_[r]; }
  void set_row(std::size_t r, BitVector v);

  BitMatrix transpose() const;
  bool operator==(const BitMatrix& o) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BitVector> data_;
};

// M * v (column vector): result[j] = XOR_k M[j,k] v[k].
BitVector mat_vec_mul(const BitMatrix& m, const BitVector& v);
// y * M (row vector): XOR of the rows of M selected by y.
BitVector vec_mat_mul(const BitVector& y, const BitMatrix& m);
BitMatrix mat_mul(const BitMatrix& a, const BitMatrix& b);

}  // namespace bsfe
