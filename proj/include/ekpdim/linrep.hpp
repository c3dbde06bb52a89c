#pragma once

// Concrete representations of Gamma_r as tuples of matrices over a prime
// field or the rationals: specializations M^alpha, equal kernels / equal
// images tests, Hom and Ext dimensions, base change, and the family X_alpha.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ekpdim/exactnum.hpp"
#include "ekpdim/kronecker.hpp"

namespace ekpdim {

/// F_p for a prime p < 2^31, or Q when p == 0.
class FieldSpec {
 public:
  static FieldSpec prime(std::uint64_t p);
  static FieldSpec rationals() { return FieldSpec(0); }

  bool is_prime() const { return p_ != 0; }
  std::uint64_t characteristic() const { return p_; }

  /// Canonical form of v in this field (residue 0..p-1 for primes).
  /// Throws PreconditionError when the denominator vanishes mod p.
  BigRat reduce(const BigRat& v) const;

  std::string name() const;
  friend bool operator==(const FieldSpec& a, const FieldSpec& b) { return a.p_ == b.p_; }
  friend bool operator!=(const FieldSpec& a, const FieldSpec& b) { return a.p_ != b.p_; }

 private:
  explicit FieldSpec(std::uint64_t p) : p_(p) {}
  std::uint64_t p_;
};

bool is_prime(std::uint64_t n);

/// Dense row-major matrix of field elements.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  BigRat& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const BigRat& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigRat> a_;
};

std::size_t rank(const Matrix& m, const FieldSpec& field);
Matrix multiply(const Matrix& x, const Matrix& y, const FieldSpec& field);
/// Empty when singular.
std::optional<Matrix> inverse(const Matrix& m, const FieldSpec& field);
/// Product of an r x r matrix with a vector: (g alpha)_i = sum_j g_ij alpha_j.
std::vector<BigRat> apply(const Matrix& g, const std::vector<BigRat>& v, const FieldSpec& field);

class KronRep {
 public:
  /// Throws FormatError unless there are exactly r maps, each d2 x d1,
  /// with entries already reduced in `field`.
  KronRep(long r, FieldSpec field, std::size_t d1, std::size_t d2, std::vector<Matrix> maps);

  static KronRep zero(long r, FieldSpec field, std::size_t d1, std::size_t d2);
  static KronRep from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  long r() const { return r_; }
  const FieldSpec& field() const { return field_; }
  std::size_t d1() const { return d1_; }
  std::size_t d2() const { return d2_; }
  DimVector dim() const;
  const std::vector<Matrix>& maps() const { return maps_; }
  const Matrix& map(std::size_t i) const { return maps_.at(i); }

  friend bool operator==(const KronRep& a, const KronRep& b) {
    return a.r_ == b.r_ && a.field_ == b.field_ && a.d1_ == b.d1_ && a.d2_ == b.d2_ && a.maps_ == b.maps_;
  }

 private:
  long r_;
  FieldSpec field_;
  std::size_t d1_;
  std::size_t d2_;
  std::vector<Matrix> maps_;
};

/// M^alpha = sum alpha_i M(gamma_i).
Matrix specialize(const KronRep& m, const std::vector<BigRat>& alpha);

struct RankVerdict {
  bool holds = true;
  /// alpha with M^alpha rank-deficient; sound over every field extension.
  std::optional<std::vector<BigRat>> witness;
  /// False for the randomized test over Q when no witness turned up.
  bool exact = true;
  std::uint64_t tested = 0;
};

inline constexpr std::uint64_t kProjectiveEnumerationCap = 10'000'000;
inline constexpr std::uint64_t kRationalRandomTrials = 64;

/// Over F_p: every point of P^{r-1}(F_p), first nonzero coordinate 1
/// (CapExceeded when p^{r-1} > 10^7). Over Q: e_i, e_i + e_j and random
/// integer vectors drawn from `seed`.
RankVerdict is_ekp_rep(const KronRep& m, std::uint64_t seed = 0);
RankVerdict is_eip_rep(const KronRep& m, std::uint64_t seed = 0);

/// Projective representatives of F_p^r \ {0}, in enumeration order.
std::vector<std::vector<BigRat>> projective_points(long r, std::uint64_t p);

std::size_t hom_dim(const KronRep& x, const KronRep& y);
/// hom_dim - <dim x, dim y>.
BigInt ext_dim(const KronRep& x, const KronRep& y);
bool end_is_brick(const KronRep& m);

/// (base_change(g, M))(gamma_j) = sum_i g_ij M(gamma_i). Throws on singular g.
KronRep base_change(const Matrix& g, const KronRep& m);

/// Indecomposable thin representation of dimension (1, r-1) with
/// X_alpha^alpha = 0. Throws PreconditionError for alpha = 0.
KronRep make_x_alpha(long r, const std::vector<BigRat>& alpha, const FieldSpec& field);

KronRep direct_sum(const KronRep& a, const KronRep& b);

/// Entries uniform in F_p, or integers in [-9, 9] over Q.
KronRep random_rep(long r, std::size_t d1, std::size_t d2, const FieldSpec& field, std::uint64_t seed);

struct IsoClass {
  KronRep representative;  ///< smallest tuple of the class in enumeration order
  std::uint64_t size;      ///< number of tuples in the class
  bool brick;
  bool indecomposable;
};

inline constexpr std::uint64_t kTupleCap = 1'000'000;
inline constexpr std::uint64_t kGroupCap = 10'000;

/// All isomorphism classes of representations of dimension (d1, d2) over F_p,
/// by orbit enumeration under GL_{d1} x GL_{d2}.
std::vector<IsoClass> enumerate_small(long r, std::size_t d1, std::size_t d2, std::uint64_t p);

}  // namespace ekpdim
