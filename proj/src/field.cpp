#include "bsfe/field.hpp"

#include <array>
#include <bit>

#include "bsfe/error.hpp"

namespace bsfe {

namespace {

// Index = degree. Degree 8 is the AES modulus; every other entry is the
// lowest-weight irreducible x^d + r(x) with the smallest integer value.
constexpr std::array<std::uint64_t, 65> kReductions = {
    0,          0x1,  0x3,  0x3,  0x3,  0x5,        0x3,  0x3,  0x1b, 0x3,   0x9,  0x5,  0x9,
    0x1b,       0x21, 0x3,  0x2b, 0x9,  0x9,        0x27, 0x9,  0x5,  0x3,   0x21, 0x1b, 0x9,
    0x1b,       0x27, 0x3,  0x5,  0x3,  0x9,        0x8d, 0x401, 0x81, 0x5,  0x201, 0x53, 0x63,
    0x11,       0x39, 0x9,  0x81, 0x59, 0x21,       0x1b, 0x3,  0x21, 0x2d, 0x201, 0x1d, 0x4b,
    0x9,        0x47, 0x201, 0x81, 0x95, 0x11,      0x80001, 0x95, 0x3, 0x27, 0x20000001, 0x3,
    0x1b,
};

int poly_degree(unsigned __int128 p) {
  if (p == 0) return -1;
  const auto hi = static_cast<std::uint64_t>(p >> 64);
  if (hi != 0) return 127 - std::countl_zero(hi);
  return 63 - std::countl_zero(static_cast<std::uint64_t>(p));
}

unsigned __int128 poly_mod(unsigned __int128 a, unsigned __int128 m) {
  const int dm = poly_degree(m);
  for (int da = poly_degree(a); da >= dm; da = poly_degree(a)) a ^= m << (da - dm);
  return a;
}

}  // namespace

std::uint64_t standard_reduction(unsigned degree) {
  require(degree >= 1 && degree <= 64, Errc::field, "degree must be in [1, 64]");
  return kReductions[degree];
}

bool is_irreducible(unsigned degree, std::uint64_t reduction) {
  const unsigned __int128 f = (static_cast<unsigned __int128>(1) << degree) | reduction;
  // Any factorization has a factor of degree <= degree/2; try them all.
  for (unsigned d = 1; d <= degree / 2; ++d) {
    const std::uint64_t lo = std::uint64_t{1} << d;
    for (std::uint64_t g = lo; g < (lo << 1); ++g)
      if (poly_mod(f, g) == 0) return false;
  }
  return true;
}

Field Field::standard(unsigned degree) { return Field(degree, standard_reduction(degree)); }

Field Field::with_modulus(unsigned degree, std::uint64_t reduction) {
  require(degree >= 1 && degree <= 64, Errc::field, "degree must be in [1, 64]");
  require(degree == 64 || reduction < (std::uint64_t{1} << degree), Errc::field,
          "reduction polynomial exceeds degree");
  if (degree <= 16)
    require(is_irreducible(degree, reduction), Errc::field, "modulus is reducible");
  else
    require(reduction == kReductions[degree], Errc::field,
            "moduli above degree 16 must come from the built-in table");
  return Field(degree, reduction);
}

F2kElement Field::element(std::uint64_t value) const {
  require((value & ~mask()) == 0, Errc::field, "value wider than the field");
  return F2kElement(*this, value);
}

F2kElement Field::zero() const { return F2kElement(*this, 0); }
F2kElement Field::one() const { return F2kElement(*this, 1); }
F2kElement Field::random(Rng& rng) const { return F2kElement(*this, rng.next() & mask()); }

F2kElement Field::embed(const BitVector& bits) const {
  require(bits.size() <= degree_, Errc::field, "bit string wider than the field");
  return F2kElement(*this, bits.to_u64());
}

std::uint64_t Field::mul_raw(std::uint64_t a, std::uint64_t b) const {
  const std::uint64_t top = std::uint64_t{1} << (degree_ - 1);
  const std::uint64_t m = mask();
  std::uint64_t r = 0;
  while (b != 0) {
    if (b & 1U) r ^= a;
    b >>= 1;
    const bool carry = (a & top) != 0;
    a = (a << 1) & m;
    if (carry) a ^= reduction_;
  }
  return r;
}

F2kElement& F2kElement::operator+=(const F2kElement& o) {
  require(field_ == o.field_, Errc::field, "operands from different fields");
  value_ ^= o.value_;
  return *this;
}

F2kElement operator*(const F2kElement& a, const F2kElement& b) {
  require(a.field_ == b.field_, Errc::field, "operands from different fields");
  return F2kElement(a.field_, a.field_.mul_raw(a.value_, b.value_));
}

F2kElement F2kElement::pow(std::uint64_t e) const {
  F2kElement result = field_.one();
  F2kElement base = *this;
  while (e != 0) {
    if (e & 1U) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

F2kElement F2kElement::inverse() const {
  require(value_ != 0, Errc::field, "zero has no inverse");
  // a^(2^k - 2) = a^-1; the exponent is mask - 1.
  return pow(field_.mask() - 1);
}

F2kElement f2k_add(const F2kElement& a, const F2kElement& b) { return a + b; }
F2kElement f2k_mul(const F2kElement& a, const F2kElement& b) { return a * b; }

Polynomial::Polynomial(Field field, std::vector<std::uint64_t> coeffs)
    : field_(field), coeffs_(std::move(coeffs)) {
  for (auto c : coeffs_) require((c & ~field_.mask()) == 0, Errc::field, "coefficient too wide");
}

Polynomial::Polynomial(const std::vector<F2kElement>& coeffs)
    : field_(coeffs.empty() ? Field::standard(8) : coeffs.front().field()) {
  coeffs_.reserve(coeffs.size());
  for (const auto& c : coeffs) {
    require(c.field() == field_, Errc::field, "coefficients from different fields");
    coeffs_.push_back(c.value());
  }
}

F2kElement poly_eval(const Polynomial& p, const F2kElement& x) {
  require(p.field() == x.field(), Errc::field, "point not in the polynomial's field");
  const Field& f = p.field();
  std::uint64_t acc = 0;
  const auto& c = p.raw();
  for (std::size_t j = c.size(); j-- > 0;) acc = f.mul_raw(acc, x.value()) ^ c[j];
  return F2kElement(f, acc);
}

FieldMatrix::FieldMatrix(Field field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

FieldMatrix FieldMatrix::random(Field field, std::size_t rows, std::size_t cols, Rng& rng) {
  FieldMatrix m(field, rows, cols);
  for (auto& v : m.data_) v = rng.next() & field.mask();
  return m;
}

void FieldMatrix::set(std::size_t r, std::size_t c, const F2kElement& v) {
  require(v.field() == field_, Errc::field, "entry from a different field");
  data_[r * cols_ + c] = v.value();
}

std::vector<F2kElement> FieldMatrix::apply_binary(const BitVector& v) const {
  require(v.size() == cols_, Errc::shape, "vector length does not match matrix columns");
  std::vector<F2kElement> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < cols_; ++c)
      if (v.get(c)) acc ^= data_[r * cols_ + c];
    out.emplace_back(field_, acc);
  }
  return out;
}

FieldMatrix FieldMatrix::row_block(std::size_t begin, std::size_t count) const {
  require(begin + count <= rows_, Errc::shape, "row block out of range");
  FieldMatrix b(field_, count, cols_);
  for (std::size_t r = 0; r < count; ++r)
    for (std::size_t c = 0; c < cols_; ++c) b.data_[r * cols_ + c] = data_[(begin + r) * cols_ + c];
  return b;
}

Polynomial FieldMatrix::column_polynomial(std::size_t c) const {
  require(c < cols_, Errc::shape, "column out of range");
  std::vector<std::uint64_t> coeffs(rows_);
  for (std::size_t r = 0; r < rows_; ++r) coeffs[r] = data_[r * cols_ + c];
  return Polynomial(field_, std::move(coeffs));
}

}  // namespace bsfe
