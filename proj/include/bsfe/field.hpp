#pragma once

#include <cstdint>
#include <vector>

#include "bsfe/bits.hpp"
#include "bsfe/rng.hpp"

namespace bsfe {

class F2kElement;

// GF(2^degree) = GF(2)[x] / (x^degree + reduction), 1 <= degree <= 64.
// `reduction` holds the modulus without its leading term.
class Field {
 public:
  // Built-in modulus: x^8+x^4+x^3+x+1 for degree 8, otherwise the
  // lowest-weight irreducible with the smallest integer value.
  static Field standard(unsigned degree);
  // Custom modulus; checked for irreducibility by trial division when
  // degree <= 16, otherwise it must match the built-in table.
  static Field with_modulus(unsigned degree, std::uint64_t reduction);

  unsigned degree() const { return degree_; }
  std::uint64_t reduction() const { return reduction_; }
  std::uint64_t mask() const {
    return degree_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << degree_) - 1;
  }

  F2kElement element(std::uint64_t value) const;
  F2kElement zero() const;
  F2kElement one() const;
  F2kElement random(Rng& rng) const;
  // Little-endian embedding of a bit string of length <= degree.
  F2kElement embed(const BitVector& bits) const;

  std::uint64_t mul_raw(std::uint64_t a, std::uint64_t b) const;

  bool operator==(const Field&) const = default;

 private:
  Field(unsigned degree, std::uint64_t reduction) : degree_(degree), reduction_(reduction) {}

  unsigned degree_ = 8;
  std::uint64_t reduction_ = 0x1b;
};

// Table lookup; exposed for tests.
std::uint64_t standard_reduction(unsigned degree);
// Exhaustive irreducibility check over all divisors of degree <= d/2.
bool is_irreducible(unsigned degree, std::uint64_t reduction);

class F2kElement {
 public:
  F2kElement(const Field& f, std::uint64_t v) : field_(f), value_(v) {}

  const Field& field() const { return field_; }
  std::uint64_t value() const { return value_; }
  bool is_zero() const { return value_ == 0; }
  BitVector bits() const { return BitVector::from_word(value_, field_.degree()); }

  F2kElement& operator+=(const F2kElement& o);
  friend F2kElement operator+(F2kElement a, const F2kElement& b) { return a += b; }
  friend F2kElement operator*(const F2kElement& a, const F2kElement& b);
  F2kElement pow(std::uint64_t e) const;
  // Multiplicative inverse; zero has none.
  F2kElement inverse() const;

  bool operator==(const F2kElement&) const = default;

 private:
  Field field_;
  std::uint64_t value_;
};

F2kElement f2k_add(const F2kElement& a, const F2kElement& b);
F2kElement f2k_mul(const F2kElement& a, const F2kElement& b);

// coeffs[j] multiplies x^j.
class Polynomial {
 public:
  Polynomial(Field field, std::vector<std::uint64_t> coeffs);
  explicit Polynomial(const std::vector<F2kElement>& coeffs);

  const Field& field() const { return field_; }
  std::size_t size() const { return coeffs_.size(); }
  std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  F2kElement coeff(std::size_t j) const { return F2kElement(field_, coeffs_[j]); }
  const std::vector<std::uint64_t>& raw() const { return coeffs_; }

 private:
  Field field_;
  std::vector<std::uint64_t> coeffs_;
};

// Horner evaluation.
F2kElement poly_eval(const Polynomial& p, const F2kElement& x);

// Dense matrix of field elements, row-major.
class FieldMatrix {
 public:
  FieldMatrix(Field field, std::size_t rows, std::size_t cols);
  static FieldMatrix random(Field field, std::size_t rows, std::size_t cols, Rng& rng);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  F2kElement at(std::size_t r, std::size_t c) const {
    return F2kElement(field_, data_[r * cols_ + c]);
  }
  std::uint64_t raw(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, const F2kElement& v);

  // M * v for a binary column vector: sum of the columns selected by v.
  std::vector<F2kElement> apply_binary(const BitVector& v) const;
  // Rows [begin, begin+count) as a new matrix.
  FieldMatrix row_block(std::size_t begin, std::size_t count) const;
  // Column c read top to bottom, as polynomial coefficients.
  Polynomial column_polynomial(std::size_t c) const;

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint64_t> data_;
};

}  // namespace bsfe
