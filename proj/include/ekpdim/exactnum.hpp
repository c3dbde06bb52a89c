#pragma once

// Exact arithmetic: GMP-backed integers and rationals, and the real
// quadratic field Q(sqrt(D)) with exact sign and floor.

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>

namespace ekpdim {

using BigInt = mpz_class;
using BigRat = mpq_class;

/// Floor of sqrt(n) for n >= 0.
BigInt isqrt(const BigInt& n);
bool is_perfect_square(const BigInt& n);

/// Parses "n" or "n/d" into a canonical rational.
BigRat parse_rational(const std::string& text);
std::string to_string(const BigInt& x);
std::string to_string(const BigRat& x);

/// p + q*sqrt(D) with rational p, q and a fixed non-square radicand D >= 2.
///
/// The radicand travels with every value, so numbers from different fields
/// can coexist; combining two values with different radicands throws.
class QuadNum {
 public:
  QuadNum(BigRat p, BigRat q, BigInt radicand);

  /// The rational number v viewed inside Q(sqrt(radicand)).
  static QuadNum rational(BigRat v, BigInt radicand);

  const BigRat& rational_part() const { return p_; }
  const BigRat& sqrt_coefficient() const { return q_; }
  const BigInt& radicand() const { return d_; }

  QuadNum operator-() const;
  QuadNum& operator+=(const QuadNum& o);
  QuadNum& operator-=(const QuadNum& o);
  QuadNum& operator*=(const QuadNum& o);
  QuadNum& operator+=(const BigRat& v);
  QuadNum& operator-=(const BigRat& v);
  QuadNum& operator*=(const BigRat& v);

  friend QuadNum operator+(QuadNum a, const QuadNum& b) { return a += b; }
  friend QuadNum operator-(QuadNum a, const QuadNum& b) { return a -= b; }
  friend QuadNum operator*(QuadNum a, const QuadNum& b) { return a *= b; }
  friend QuadNum operator+(QuadNum a, const BigRat& b) { return a += b; }
  friend QuadNum operator-(QuadNum a, const BigRat& b) { return a -= b; }
  friend QuadNum operator*(QuadNum a, const BigRat& b) { return a *= b; }
  friend QuadNum operator*(const BigRat& b, QuadNum a) { return a *= b; }

  /// Structural equality; sound because sqrt(D) is irrational.
  friend bool operator==(const QuadNum& a, const QuadNum& b);

  QuadNum pow(unsigned n) const;

  /// Exact sign of p + q*sqrt(D).
  int sign() const;
  /// Largest integer n with n <= value (rounds toward minus infinity).
  BigInt floor() const;

 private:
  void require_same_field(const QuadNum& o) const;

  BigRat p_;
  BigRat q_;
  BigInt d_;
};

enum class QuadOp { Add, Sub, Mul };

QuadNum quad_arith(const QuadNum& x, const QuadNum& y, QuadOp op);
inline int quad_sign(const QuadNum& x) { return x.sign(); }
inline BigInt quad_floor(const QuadNum& x) { return x.floor(); }

/// L_r = (r + sqrt(r^2 - 4)) / 2 in Q(sqrt(r^2 - 4)); requires r >= 3.
QuadNum lr(long r);

/// floor(a * L_r) for a >= 0, via integer square root.
BigInt floor_times_lr(const BigInt& a, long r);

/// Sign of p + q*sqrt(d) for machine integers (d >= 0). Used on hot sweep
/// paths; callers keep |p|, |q|*sqrt(d) below 2^62.
int small_quad_sign(std::int64_t p, std::int64_t q, std::int64_t d);

/// floor(a * L_r) for 0 <= a < 2^28 and r < 2^10.
std::int64_t small_floor_times_lr(std::int64_t a, std::int64_t r);

std::ostream& operator<<(std::ostream& os, const QuadNum& x);

}  // namespace ekpdim
