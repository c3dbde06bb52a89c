#include "ekpdim/exactnum.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "ekpdim/error.hpp"

namespace ekpdim {

BigInt isqrt(const BigInt& n) {
  if (sgn(n) < 0) throw PreconditionError("isqrt of a negative integer");
  BigInt root;
  mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
  return root;
}

bool is_perfect_square(const BigInt& n) {
  return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

BigRat parse_rational(const std::string& text) {
  BigRat v;
  if (text.empty() || v.set_str(text, 10) != 0) throw FormatError("not a rational number: '" + text + "'");
  if (sgn(v.get_den()) == 0) throw FormatError("zero denominator: '" + text + "'");
  v.canonicalize();
  return v;
}

std::string to_string(const BigInt& x) { return x.get_str(); }
std::string to_string(const BigRat& x) { return x.get_str(); }

QuadNum::QuadNum(BigRat p, BigRat q, BigInt radicand)
    : p_(std::move(p)), q_(std::move(q)), d_(std::move(radicand)) {
  if (d_ < 2 || is_perfect_square(d_))
    throw PreconditionError("radicand must be a non-square integer >= 2, got " + d_.get_str());
  p_.canonicalize();
  q_.canonicalize();
}

QuadNum QuadNum::rational(BigRat v, BigInt radicand) { return QuadNum(std::move(v), 0, std::move(radicand)); }

void QuadNum::require_same_field(const QuadNum& o) const {
  if (d_ != o.d_) throw PreconditionError("mixed radicands " + d_.get_str() + " and " + o.d_.get_str());
}

QuadNum QuadNum::operator-() const {
  QuadNum r = *this;
  r.p_ = -r.p_;
  r.q_ = -r.q_;
  return r;
}

QuadNum& QuadNum::operator+=(const QuadNum& o) {
  require_same_field(o);
  p_ += o.p_;
  q_ += o.q_;
  return *this;
}

QuadNum& QuadNum::operator-=(const QuadNum& o) {
  require_same_field(o);
  p_ -= o.p_;
  q_ -= o.q_;
  return *this;
}

QuadNum& QuadNum::operator*=(const QuadNum& o) {
  require_same_field(o);
  BigRat p = p_ * o.p_ + q_ * o.q_ * BigRat(d_);
  BigRat q = p_ * o.q_ + q_ * o.p_;
  p_ = std::move(p);
  q_ = std::move(q);
  return *this;
}

QuadNum& QuadNum::operator+=(const BigRat& v) {
  p_ += v;
  return *this;
}

QuadNum& QuadNum::operator-=(const BigRat& v) {
  p_ -= v;
  return *this;
}

QuadNum& QuadNum::operator*=(const BigRat& v) {
  p_ *= v;
  q_ *= v;
  return *this;
}

bool operator==(const QuadNum& a, const QuadNum& b) {
  a.require_same_field(b);
  return a.p_ == b.p_ && a.q_ == b.q_;
}

QuadNum QuadNum::pow(unsigned n) const {
  QuadNum result = rational(1, d_);
  QuadNum base = *this;
  while (n != 0) {
    if (n & 1u) result *= base;
    n >>= 1;
    if (n != 0) base *= base;
  }
  return result;
}

int QuadNum::sign() const {
  const int sp = sgn(p_);
  const int sq = sgn(q_);
  if (sq == 0) return sp;
  if (sp == 0 || sp == sq) return sq;
  // Opposite signs: the larger magnitude wins; p^2 == q^2 D is impossible.
  const BigRat lhs = p_ * p_;
  const BigRat rhs = q_ * q_ * BigRat(d_);
  return lhs > rhs ? sp : sq;
}

BigInt QuadNum::floor() const {
  BigInt m;
  mpz_lcm(m.get_mpz_t(), p_.get_den_mpz_t(), q_.get_den_mpz_t());
  const BigInt big_p = p_.get_num() * (m / p_.get_den());
  const BigInt big_q = q_.get_num() * (m / q_.get_den());
  BigInt numerator;
  if (sgn(big_q) == 0) {
    numerator = big_p;
  } else {
    // |Q| sqrt(D) is irrational, so it sits strictly between s and s + 1.
    const BigInt s = isqrt(big_q * big_q * d_);
    numerator = sgn(big_q) > 0 ? BigInt(big_p + s) : BigInt(big_p - s - 1);
  }
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), numerator.get_mpz_t(), m.get_mpz_t());
  return out;
}

QuadNum quad_arith(const QuadNum& x, const QuadNum& y, QuadOp op) {
  switch (op) {
    case QuadOp::Add: return x + y;
    case QuadOp::Sub: return x - y;
    case QuadOp::Mul: return x * y;
  }
  throw std::logic_error("unknown QuadOp");
}

QuadNum lr(long r) {
  if (r < 3) throw PreconditionError("L_r is defined here only for r >= 3");
  const BigInt radicand = BigInt(r) * r - 4;
  return QuadNum(BigRat(r, 2), BigRat(1, 2), radicand);
}

BigInt floor_times_lr(const BigInt& a, long r) {
  if (r < 3) throw PreconditionError("L_r is defined here only for r >= 3");
  if (sgn(a) < 0) throw PreconditionError("floor_times_lr expects a >= 0");
  const BigInt radicand = BigInt(r) * r - 4;
  BigInt twice = a * r + isqrt(a * a * radicand);
  BigInt out;
  mpz_fdiv_q_2exp(out.get_mpz_t(), twice.get_mpz_t(), 1);
  return out;
}

namespace {

unsigned __int128 isqrt128(unsigned __int128 n) {
  auto x = static_cast<unsigned __int128>(std::sqrt(static_cast<long double>(n)));
  while (x * x > n) --x;
  while ((x + 1) * (x + 1) <= n) ++x;
  return x;
}

int sign_of(__int128 v) { return (v > 0) - (v < 0); }

}  // namespace

int small_quad_sign(std::int64_t p, std::int64_t q, std::int64_t d) {
  const int sp = sign_of(p);
  const int sq = d == 0 ? 0 : sign_of(q);
  if (sq == 0) return sp;
  if (sp == 0 || sp == sq) return sq;
  const __int128 lhs = static_cast<__int128>(p) * p;
  const __int128 rhs = static_cast<__int128>(q) * q * d;
  if (lhs == rhs) return 0;
  return lhs > rhs ? sp : sq;
}

std::int64_t small_floor_times_lr(std::int64_t a, std::int64_t r) {
  const __int128 radicand = static_cast<__int128>(r) * r - 4;
  const __int128 sq = static_cast<__int128>(a) * a * radicand;
  const auto s = static_cast<__int128>(isqrt128(static_cast<unsigned __int128>(sq)));
  return static_cast<std::int64_t>((static_cast<__int128>(a) * r + s) / 2);
}

std::ostream& operator<<(std::ostream& os, const QuadNum& x) {
  return os << x.rational_part().get_str() << " + " << x.sqrt_coefficient().get_str() << "*sqrt("
            << x.radicand().get_str() << ")";
}

}  // namespace ekpdim
