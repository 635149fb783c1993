#include "bsfe/bits.hpp"

#include <bit>

#include "bsfe/error.hpp"

namespace bsfe {

namespace {

constexpr std::uint64_t tail_mask(std::size_t n) {
  return (n & 63) == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << (n & 63)) - 1;
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

void BitVector::trim() {
  if (!words_.empty()) words_.back() &= tail_mask(size_);
}

BitVector BitVector::from_string(std::string_view s) {
  BitVector v(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1')
      v.set(i, true);
    else if (s[i] != '0')
      fail(Errc::syntax, "bit string may only contain 0 and 1");
  }
  return v;
}

BitVector BitVector::from_word(std::uint64_t w, std::size_t n) {
  require(n <= 64, Errc::shape, "from_word takes at most 64 bits");
  BitVector v(n);
  if (n > 0) {
    v.words_[0] = w;
    v.trim();
  }
  return v;
}

BitVector BitVector::from_words(std::span<const std::uint64_t> words, std::size_t n) {
  require(words.size() >= word_count(n), Errc::shape, "not enough words");
  BitVector v(n);
  for (std::size_t i = 0; i < v.words_.size(); ++i) v.words_[i] = words[i];
  v.trim();
  return v;
}

BitVector BitVector::random(std::size_t n, Rng& rng) {
  BitVector v(n);
  for (auto& w : v.words_) w = rng.next();
  v.trim();
  return v;
}

BitVector BitVector::ones(std::size_t n) {
  BitVector v(n);
  for (auto& w : v.words_) w = ~std::uint64_t{0};
  v.trim();
  return v;
}

void BitVector::push_back(bool v) {
  if ((size_ & 63) == 0) words_.push_back(0);
  ++size_;
  set(size_ - 1, v);
}

void BitVector::append(const BitVector& other) {
  if ((size_ & 63) == 0) {
    words_.insert(words_.end(), other.words_.begin(), other.words_.end());
    size_ += other.size_;
    return;
  }
  const std::size_t shift = size_ & 63;
  const std::size_t new_size = size_ + other.size_;
  words_.resize(word_count(new_size), 0);
  std::size_t base = size_ >> 6;
  for (std::size_t i = 0; i < other.words_.size(); ++i) {
    const std::uint64_t w = other.words_[i];
    words_[base + i] |= w << shift;
    if (base + i + 1 < words_.size()) words_[base + i + 1] |= w >> (64 - shift);
  }
  size_ = new_size;
  trim();
}

void BitVector::resize(std::size_t n) {
  words_.resize(word_count(n), 0);
  size_ = n;
  trim();
}

BitVector& BitVector::operator^=(const BitVector& o) {
  require(size_ == o.size_, Errc::shape, "xor of vectors with different lengths");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
  return *this;
}

BitVector& BitVector::operator&=(const BitVector& o) {
  require(size_ == o.size_, Errc::shape, "and of vectors with different lengths");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
  return *this;
}

BitVector BitVector::operator~() const {
  BitVector r(*this);
  for (auto& w : r.words_) w = ~w;
  r.trim();
  return r;
}

std::size_t BitVector::popcount() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool BitVector::parity() const {
  std::uint64_t acc = 0;
  for (auto w : words_) acc ^= w;
  return (std::popcount(acc) & 1) != 0;
}

bool BitVector::is_zero() const {
  for (auto w : words_)
    if (w != 0) return false;
  return true;
}

bool BitVector::dot(const BitVector& o) const {
  require(size_ == o.size_, Errc::shape, "dot product of vectors with different lengths");
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & o.words_[i];
  return (std::popcount(acc) & 1) != 0;
}

BitVector BitVector::slice(std::size_t begin, std::size_t len) const {
  require(begin + len <= size_, Errc::shape, "slice out of range");
  BitVector r(len);
  const std::size_t shift = begin & 63;
  const std::size_t base = begin >> 6;
  for (std::size_t i = 0; i < r.words_.size(); ++i) {
    std::uint64_t w = words_[base + i] >> shift;
    if (shift != 0 && base + i + 1 < words_.size()) w |= words_[base + i + 1] << (64 - shift);
    r.words_[i] = w;
  }
  r.trim();
  return r;
}

BitVector BitVector::compress(const BitVector& mask) const {
  require(size_ == mask.size_, Errc::shape, "compress mask length mismatch");
  BitVector r;
  r.words_.reserve(word_count(mask.popcount()));
  std::uint64_t acc = 0;
  unsigned fill = 0;
  std::size_t total = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t m = mask.words_[i];
    const std::uint64_t w = words_[i];
    while (m != 0) {
      const int pos = std::countr_zero(m);
      acc |= ((w >> pos) & 1U) << fill;
      ++total;
      if (++fill == 64) {
        r.words_.push_back(acc);
        acc = 0;
        fill = 0;
      }
      m &= m - 1;
    }
  }
  if (fill != 0) r.words_.push_back(acc);
  r.size_ = total;
  return r;
}

std::string BitVector::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

std::string BitVector::to_hex() const {
  static constexpr char digits[] = "0123456789abcdef";
  const std::size_t bytes = (size_ + 7) / 8;
  std::string s;
  s.reserve(bytes * 2);
  for (std::size_t k = 0; k < bytes; ++k) {
    const unsigned byte = static_cast<unsigned>((words_[k / 8] >> (8 * (k % 8))) & 0xff);
    s.push_back(digits[byte >> 4]);
    s.push_back(digits[byte & 15]);
  }
  return s;
}

BitVector BitVector::from_hex(std::string_view hex, std::size_t n) {
  require(hex.size() == 2 * ((n + 7) / 8), Errc::syntax, "hex length does not match bit count");
  BitVector v(n);
  for (std::size_t k = 0; k < hex.size() / 2; ++k) {
    const int hi = hex_value(hex[2 * k]);
    const int lo = hex_value(hex[2 * k + 1]);
    require(hi >= 0 && lo >= 0, Errc::syntax, "invalid hex digit");
    const std::uint64_t byte = static_cast<std::uint64_t>(hi * 16 + lo);
    v.words_[k / 8] |= byte << (8 * (k % 8));
  }
  require((v.words_.empty() || (v.words_.back() & ~tail_mask(n)) == 0), Errc::syntax,
          "hex has bits beyond the declared length");
  return v;
}

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows, BitVector(cols)) {}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

BitMatrix BitMatrix::random(std::size_t rows, std::size_t cols, Rng& rng) {
  BitMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.data_.reserve(rows);
  for (std::size_t r = 0; r < rows; ++r) m.data_.push_back(BitVector::random(cols, rng));
  return m;
}

BitMatrix BitMatrix::from_rows(std::vector<BitVector> rows) {
  BitMatrix m;
  m.rows_ = rows.size();
  m.cols_ = rows.empty() ? 0 : rows.front().size();
  for (const auto& r : rows) require(r.size() == m.cols_, Errc::shape, "ragged rows");
  m.data_ = std::move(rows);
  return m;
}

void BitMatrix::set_row(std::size_t r, BitVector v) {
  require(v.size() == cols_, Errc::shape, "row length mismatch");
  data_[r] = std::move(v);
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (get(r, c)) t.set(c, r, true);
  return t;
}

BitVector mat_vec_mul(const BitMatrix& m, const BitVector& v) {
  if (v.size() != m.cols())
    fail(Errc::shape,
         "matrix has " + std::to_string(m.cols()) + " columns, vector has " + std::to_string(v.size()));
  BitVector out(m.rows());
  for (std::size_t j = 0; j < m.rows(); ++j)
    if (m.row(j).dot(v)) out.set(j, true);
  return out;
}

BitVector vec_mat_mul(const BitVector& y, const BitMatrix& m) {
  require(y.size() == m.rows(), Errc::shape, "row vector length does not match matrix rows");
  BitVector out(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (y.get(i)) out ^= m.row(i);
  return out;
}

BitMatrix mat_mul(const BitMatrix& a, const BitMatrix& b) {
  require(a.cols() == b.rows(), Errc::shape, "inner dimensions differ");
  BitMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) out.set_row(r, vec_mat_mul(a.row(r), b));
  return out;
}

}  // namespace bsfe
