#include "ekpdim/linrep.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "ekpdim/error.hpp"
#include "ekpdim/quiver.hpp"

namespace ekpdim {

namespace {

using u64 = std::uint64_t;

u64 pow_mod(u64 base, u64 exp, u64 p) {
  u64 result = 1 % p;
  base %= p;
  while (exp > 0) {
    if (exp & 1) result = result * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return result;
}

u64 inv_mod(u64 a, u64 p) { return pow_mod(a, p - 2, p); }

// Row echelon rank over F_p; p < 2^31 keeps products inside 64 bits.
std::size_t rank_mod_p(std::vector<u64> m, std::size_t rows, std::size_t cols, u64 p) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot * cols + c] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank)
      for (std::size_t k = 0; k < cols; ++k) std::swap(m[pivot * cols + k], m[rank * cols + k]);
    const u64 inv = inv_mod(m[rank * cols + c], p);
    for (std::size_t row = rank + 1; row < rows; ++row) {
      const u64 factor = m[row * cols + c] * inv % p;
      if (factor == 0) continue;
      for (std::size_t k = c; k < cols; ++k)
        m[row * cols + k] = (m[row * cols + k] + (p - factor) * m[rank * cols + k]) % p;
    }
    ++rank;
  }
  return rank;
}

std::size_t rank_rational(Matrix m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && sgn(m(pivot, c)) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank)
      for (std::size_t k = 0; k < cols; ++k) std::swap(m(pivot, k), m(rank, k));
    for (std::size_t row = rank + 1; row < rows; ++row) {
      if (sgn(m(row, c)) == 0) continue;
      const BigRat factor = m(row, c) / m(rank, c);
      for (std::size_t k = c; k < cols; ++k) m(row, k) -= factor * m(rank, k);
    }
    ++rank;
  }
  return rank;
}

u64 residue(const BigRat& v) { return v.get_num().get_ui(); }

std::vector<u64> residues(const Matrix& m, const FieldSpec& field) {
  std::vector<u64> out(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i * m.cols() + j] = residue(field.reduce(m(i, j)));
  return out;
}

void require_compatible(const KronRep& x, const KronRep& y) {
  if (x.r() != y.r()) throw PreconditionError("representations of different quivers");
  if (x.field() != y.field()) throw PreconditionError("representations over different fields");
}

std::vector<BigRat> reduce_vector(const std::vector<BigRat>& v, long r, const FieldSpec& field) {
  if (static_cast<long>(v.size()) != r)
    throw PreconditionError("alpha has length " + std::to_string(v.size()) + ", expected " + std::to_string(r));
  std::vector<BigRat> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(field.reduce(x));
  return out;
}

BigRat entry_from_json(const nlohmann::json& e, const FieldSpec& field) {
  BigRat v;
  if (e.is_number_integer()) {
    v = e.is_number_unsigned() ? BigRat(BigInt(std::to_string(e.get<u64>()))) : BigRat(e.get<long>());
  } else if (e.is_string()) {
    v = parse_rational(e.get<std::string>());
  } else {
    throw FormatError("matrix entries must be integers or \"num/den\" strings");
  }
  if (field.is_prime() && v.get_den() != 1) throw FormatError("prime-field entries must be integers");
  return field.reduce(v);
}

nlohmann::json entry_to_json(const BigRat& v, const FieldSpec& field) {
  if (field.is_prime()) return residue(v);
  return to_string(v);
}

template <class Check>
RankVerdict rank_test(const KronRep& m, std::size_t target, std::uint64_t seed, Check) {
  RankVerdict verdict;
  const long r = m.r();
  if (m.field().is_prime()) {
    const u64 p = m.field().characteristic();
    std::vector<std::vector<u64>> maps;
    for (const auto& a : m.maps()) maps.push_back(residues(a, m.field()));
    const std::size_t rows = m.d2();
    const std::size_t cols = m.d1();
    std::vector<u64> spec(rows * cols);
    for (const auto& alpha : projective_points(r, p)) {
      std::fill(spec.begin(), spec.end(), 0);
      for (long i = 0; i < r; ++i) {
        const u64 c = residue(alpha[i]);
        if (c == 0) continue;
        for (std::size_t k = 0; k < spec.size(); ++k) spec[k] = (spec[k] + c * maps[i][k]) % p;
      }
      ++verdict.tested;
      if (rank_mod_p(spec, rows, cols, p) != target) {
        verdict.holds = false;
        verdict.witness = alpha;
        return verdict;
      }
    }
    return verdict;
  }

  std::vector<std::vector<BigRat>> trials;
  for (long i = 0; i < r; ++i) {
    std::vector<BigRat> e(r, BigRat(0));
    e[i] = 1;
    trials.push_back(e);
  }
  for (long i = 0; i < r; ++i)
    for (long j = i + 1; j < r; ++j) {
      std::vector<BigRat> e(r, BigRat(0));
      e[i] = 1;
      e[j] = 1;
      trials.push_back(e);
    }
  std::mt19937_64 rng(seed);
  for (u64 t = 0; t < kRationalRandomTrials; ++t) {
    std::vector<BigRat> e(r);
    for (auto& x : e) x = static_cast<long>(rng() % 2'000'001) - 1'000'000;
    trials.push_back(e);
  }
  for (const auto& alpha : trials) {
    ++verdict.tested;
    if (rank(specialize(m, alpha), m.field()) != target) {
      verdict.holds = false;
      verdict.witness = alpha;
      return verdict;
    }
  }
  verdict.exact = false;
  return verdict;
}

u64 checked_pow(u64 base, u64 exp, u64 cap) {
  u64 result = 1;
  for (u64 k = 0; k < exp; ++k) {
    if (result > cap / base) return cap + 1;
    result *= base;
  }
  return result;
}

// Invertible n x n matrices over F_p, row-major residues.
std::vector<std::vector<u64>> general_linear_group(std::size_t n, u64 p) {
  std::vector<std::vector<u64>> group;
  const u64 total = checked_pow(p, n * n, 100'000'000);
  std::vector<u64> m(n * n, 0);
  for (u64 index = 0; index < total; ++index) {
    u64 rest = index;
    for (std::size_t k = 0; k < n * n; ++k) {
      m[k] = rest % p;
      rest /= p;
    }
    if (rank_mod_p(m, n, n, p) == n) group.push_back(m);
  }
  return group;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 31) || !ekpdim::is_prime(p))
    throw PreconditionError("field characteristic must be a prime below 2^31, got " + std::to_string(p));
  return FieldSpec(p);
}

BigRat FieldSpec::reduce(const BigRat& value) const {
  BigRat v = value;
  v.canonicalize();
  if (!is_prime()) return v;
  const BigInt p(static_cast<unsigned long>(p_));
  BigInt num = v.get_num() % p;
  if (sgn(num) < 0) num += p;
  BigInt den = v.get_den() % p;
  if (sgn(den) == 0) throw PreconditionError("denominator vanishes in " + name());
  BigInt inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
  BigInt out = num * inv % p;
  return BigRat(out);
}

std::string FieldSpec::name() const { return is_prime() ? "F_" + std::to_string(p_) : "Q"; }

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::size_t rank(const Matrix& m, const FieldSpec& field) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  if (field.is_prime()) return rank_mod_p(residues(m, field), m.rows(), m.cols(), field.characteristic());
  return rank_rational(m);
}

Matrix multiply(const Matrix& x, const Matrix& y, const FieldSpec& field) {
  if (x.cols() != y.rows()) throw PreconditionError("matrix shapes do not compose");
  Matrix out(x.rows(), y.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < y.cols(); ++j) {
      BigRat sum = 0;
      for (std::size_t k = 0; k < x.cols(); ++k) sum += x(i, k) * y(k, j);
      out(i, j) = field.reduce(sum);
    }
  return out;
}

std::optional<Matrix> inverse(const Matrix& m, const FieldSpec& field) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  Matrix a = m;
  Matrix inv = Matrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && sgn(field.reduce(a(pivot, c))) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    for (std::size_t k = 0; k < n; ++k) {
      std::swap(a(pivot, k), a(c, k));
      std::swap(inv(pivot, k), inv(c, k));
    }
    const BigRat scale = field.reduce(1 / a(c, c));
    for (std::size_t k = 0; k < n; ++k) {
      a(c, k) = field.reduce(a(c, k) * scale);
      inv(c, k) = field.reduce(inv(c, k) * scale);
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == c || sgn(a(row, c)) == 0) continue;
      const BigRat factor = a(row, c);
      for (std::size_t k = 0; k < n; ++k) {
        a(row, k) = field.reduce(a(row, k) - factor * a(c, k));
        inv(row, k) = field.reduce(inv(row, k) - factor * inv(c, k));
      }
    }
  }
  return inv;
}

std::vector<BigRat> apply(const Matrix& g, const std::vector<BigRat>& v, const FieldSpec& field) {
  if (g.cols() != v.size()) throw PreconditionError("vector length does not match matrix");
  std::vector<BigRat> out(g.rows());
  for (std::size_t i = 0; i < g.rows(); ++i) {
    BigRat sum = 0;
    for (std::size_t j = 0; j < g.cols(); ++j) sum += g(i, j) * v[j];
    out[i] = field.reduce(sum);
  }
  return out;
}

KronRep::KronRep(long r, FieldSpec field, std::size_t d1, std::size_t d2, std::vector<Matrix> maps)
    : r_(r), field_(field), d1_(d1), d2_(d2), maps_(std::move(maps)) {
  if (r < 1) throw FormatError("r must be at least 1");
  if (static_cast<long>(maps_.size()) != r)
    throw FormatError("expected " + std::to_string(r) + " matrices, got " + std::to_string(maps_.size()));
  for (std::size_t i = 0; i < maps_.size(); ++i) {
    const Matrix& a = maps_[i];
    if (a.rows() != d2 || a.cols() != d1)
      throw FormatError("matrix " + std::to_string(i + 1) + " must be " + std::to_string(d2) + " x " +
                        std::to_string(d1));
    for (std::size_t row = 0; row < d2; ++row)
      for (std::size_t col = 0; col < d1; ++col)
        if (field.reduce(a(row, col)) != a(row, col))
          throw FormatError("entry " + to_string(a(row, col)) + " is not reduced in " + field.name());
  }
}

KronRep KronRep::zero(long r, FieldSpec field, std::size_t d1, std::size_t d2) {
  return KronRep(r, field, d1, d2, std::vector<Matrix>(r > 0 ? r : 0, Matrix(d2, d1)));
}

DimVector KronRep::dim() const {
  return {BigInt(static_cast<unsigned long>(d1_)), BigInt(static_cast<unsigned long>(d2_))};
}

KronRep KronRep::from_json(const nlohmann::json& j) {
  try {
    const long r = j.at("r").get<long>();
    if (r < 1 || r > 64) throw FormatError("r must lie in [1, 64]");
    const auto& f = j.at("field");
    const auto type = f.at("type").get<std::string>();
    FieldSpec field = FieldSpec::rationals();
    if (type == "prime") {
      const auto p = f.at("p").get<long long>();
      if (p < 2) throw FormatError("field characteristic must be a prime");
      try {
        field = FieldSpec::prime(static_cast<u64>(p));
      } catch (const PreconditionError& e) {
        throw FormatError(e.what());
      }
    } else if (type != "rational") {
      throw FormatError("field type must be \"prime\" or \"rational\"");
    }
    const auto& d = j.at("d");
    if (!d.is_array() || d.size() != 2) throw FormatError("d must be a pair");
    const long long d1 = d.at(0).get<long long>();
    const long long d2 = d.at(1).get<long long>();
    if (d1 < 0 || d2 < 0 || d1 > 4096 || d2 > 4096) throw FormatError("dimensions out of range");
    const auto& maps = j.at("maps");
    if (!maps.is_array() || static_cast<long>(maps.size()) != r)
      throw FormatError("maps must hold exactly r matrices");
    std::vector<Matrix> out;
    for (const auto& mj : maps) {
      if (!mj.is_array() || static_cast<long long>(mj.size()) != d2)
        throw FormatError("each matrix needs d2 = " + std::to_string(d2) + " rows");
      Matrix m(d2, d1);
      for (long long row = 0; row < d2; ++row) {
        const auto& rj = mj.at(row);
        if (!rj.is_array() || static_cast<long long>(rj.size()) != d1)
          throw FormatError("each row needs d1 = " + std::to_string(d1) + " entries");
        for (long long col = 0; col < d1; ++col) m(row, col) = entry_from_json(rj.at(col), field);
      }
      out.push_back(std::move(m));
    }
    return KronRep(r, field, d1, d2, std::move(out));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed representation: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("malformed representation: ") + e.what());
  }
}

nlohmann::json KronRep::to_json() const {
  nlohmann::json field = field_.is_prime() ? nlohmann::json{{"type", "prime"}, {"p", field_.characteristic()}}
                                           : nlohmann::json{{"type", "rational"}};
  nlohmann::json maps = nlohmann::json::array();
  for (const auto& m : maps_) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < d2_; ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t k = 0; k < d1_; ++k) row.push_back(entry_to_json(m(i, k), field_));
      rows.push_back(row);
    }
    maps.push_back(rows);
  }
  return {{"r", r_}, {"field", field}, {"d", {d1_, d2_}}, {"maps", maps}};
}

Matrix specialize(const KronRep& m, const std::vector<BigRat>& alpha) {
  const auto a = reduce_vector(alpha, m.r(), m.field());
  Matrix out(m.d2(), m.d1());
  for (std::size_t row = 0; row < m.d2(); ++row)
    for (std::size_t col = 0; col < m.d1(); ++col) {
      BigRat sum = 0;
      for (long i = 0; i < m.r(); ++i) sum += a[i] * m.map(i)(row, col);
      out(row, col) = m.field().reduce(sum);
    }
  return out;
}

std::vector<std::vector<BigRat>> projective_points(long r, std::uint64_t p) {
  if (r < 1) throw PreconditionError("r must be at least 1");
  if (checked_pow(p, static_cast<u64>(r - 1), kProjectiveEnumerationCap) > kProjectiveEnumerationCap)
    throw CapExceeded("P^" + std::to_string(r - 1) + "(F_" + std::to_string(p) + ") exceeds the enumeration cap");
  std::vector<std::vector<BigRat>> points;
  for (long lead = 0; lead < r; ++lead) {
    const u64 tail = static_cast<u64>(r - 1 - lead);
    const u64 count = checked_pow(p, tail, kProjectiveEnumerationCap);
    for (u64 index = 0; index < count; ++index) {
      std::vector<BigRat> alpha(r, BigRat(0));
      alpha[lead] = 1;
      u64 rest = index;
      for (long k = r - 1; k > lead; --k) {
        alpha[k] = static_cast<unsigned long>(rest % p);
        rest /= p;
      }
      points.push_back(std::move(alpha));
    }
  }
  return points;
}

RankVerdict is_ekp_rep(const KronRep& m, std::uint64_t seed) { return rank_test(m, m.d1(), seed, 0); }

RankVerdict is_eip_rep(const KronRep& m, std::uint64_t seed) { return rank_test(m, m.d2(), seed, 0); }

std::size_t hom_dim(const KronRep& x, const KronRep& y) {
  require_compatible(x, y);
  const FieldSpec& field = x.field();
  // Unknowns: f1 (y.d1 x x.d1) then f2 (y.d2 x x.d2).
  const std::size_t n1 = y.d1() * x.d1();
  const std::size_t n2 = y.d2() * x.d2();
  const std::size_t cols = n1 + n2;
  const std::size_t rows = static_cast<std::size_t>(x.r()) * y.d2() * x.d1();
  if (cols == 0) return 0;
  Matrix system(rows, cols);
  std::size_t eq = 0;
  for (long i = 0; i < x.r(); ++i) {
    const Matrix& xi = x.map(i);
    const Matrix& yi = y.map(i);
    for (std::size_t a = 0; a < y.d2(); ++a)
      for (std::size_t b = 0; b < x.d1(); ++b, ++eq) {
        // (f2 X_i)[a][b] - (Y_i f1)[a][b] = 0
        for (std::size_t c = 0; c < x.d2(); ++c) system(eq, n1 + a * x.d2() + c) += xi(c, b);
        for (std::size_t c = 0; c < y.d1(); ++c) system(eq, c * x.d1() + b) -= yi(a, c);
      }
  }
  if (field.is_prime())
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) system(i, j) = field.reduce(system(i, j));
  return cols - rank(system, field);
}

BigInt ext_dim(const KronRep& x, const KronRep& y) {
  const std::size_t hom = hom_dim(x, y);
  const DimVector dx = x.dim();
  const DimVector dy = y.dim();
  const BigInt euler = euler_form(Quiver::kronecker(x.r()), {dx.d1, dx.d2}, {dy.d1, dy.d2});
  const BigInt ext = BigInt(static_cast<unsigned long>(hom)) - euler;
  if (sgn(ext) < 0) throw std::logic_error("negative Ext dimension: rank computation is inconsistent");
  return ext;
}

bool end_is_brick(const KronRep& m) { return hom_dim(m, m) == 1; }

KronRep base_change(const Matrix& g, const KronRep& m) {
  const auto r = static_cast<std::size_t>(m.r());
  if (g.rows() != r || g.cols() != r) throw PreconditionError("base change matrix must be r x r");
  if (rank(g, m.field()) != r) throw PreconditionError("base change matrix is singular");
  std::vector<Matrix> maps;
  for (std::size_t j = 0; j < r; ++j) {
    Matrix out(m.d2(), m.d1());
    for (std::size_t row = 0; row < m.d2(); ++row)
      for (std::size_t col = 0; col < m.d1(); ++col) {
        BigRat sum = 0;
        for (std::size_t i = 0; i < r; ++i) sum += m.field().reduce(g(i, j)) * m.map(i)(row, col);
        out(row, col) = m.field().reduce(sum);
      }
    maps.push_back(std::move(out));
  }
  return KronRep(m.r(), m.field(), m.d1(), m.d2(), std::move(maps));
}

KronRep make_x_alpha(long r, const std::vector<BigRat>& alpha, const FieldSpec& field) {
  if (r < 2) throw PreconditionError("X_alpha needs r >= 2");
  const auto a = reduce_vector(alpha, r, field);
  const auto nonzero = std::count_if(a.begin(), a.end(), [](const BigRat& v) { return sgn(v) != 0; });
  if (nonzero == 0) throw PreconditionError("alpha must be nonzero");

  auto standard = [&](std::size_t skip) {
    std::vector<Matrix> maps;
    std::size_t next = 0;
    for (std::size_t i = 0; i < static_cast<std::size_t>(r); ++i) {
      Matrix m(r - 1, 1);
      if (i != skip) m(next++, 0) = 1;
      maps.push_back(std::move(m));
    }
    return KronRep(r, field, 1, r - 1, std::move(maps));
  };

  if (nonzero == 1) {
    const auto i = static_cast<std::size_t>(
        std::find_if(a.begin(), a.end(), [](const BigRat& v) { return sgn(v) != 0; }) - a.begin());
    if (a[i] == 1) return standard(i);
  }

  // g has first column alpha, completed greedily by standard basis vectors.
  Matrix g(r, r);
  for (long i = 0; i < r; ++i) g(i, 0) = a[i];
  std::size_t filled = 1;
  for (long e = 0; e < r && filled < static_cast<std::size_t>(r); ++e) {
    Matrix trial(r, filled + 1);
    for (long i = 0; i < r; ++i)
      for (std::size_t k = 0; k < filled; ++k) trial(i, k) = g(i, k);
    trial(e, filled) = 1;
    if (rank(trial, field) == filled + 1) {
      g(e, filled) = 1;
      ++filled;
    }
  }
  const auto g_inv = inverse(g, field);
  if (!g_inv) throw std::logic_error("basis completion produced a singular matrix");
  return base_change(*g_inv, standard(0));
}

KronRep direct_sum(const KronRep& a, const KronRep& b) {
  require_compatible(a, b);
  std::vector<Matrix> maps;
  for (long i = 0; i < a.r(); ++i) {
    Matrix m(a.d2() + b.d2(), a.d1() + b.d1());
    for (std::size_t row = 0; row < a.d2(); ++row)
      for (std::size_t col = 0; col < a.d1(); ++col) m(row, col) = a.map(i)(row, col);
    for (std::size_t row = 0; row < b.d2(); ++row)
      for (std::size_t col = 0; col < b.d1(); ++col) m(a.d2() + row, a.d1() + col) = b.map(i)(row, col);
    maps.push_back(std::move(m));
  }
  return KronRep(a.r(), a.field(), a.d1() + b.d1(), a.d2() + b.d2(), std::move(maps));
}

KronRep random_rep(long r, std::size_t d1, std::size_t d2, const FieldSpec& field, std::uint64_t seed) {
  if (r < 1) throw PreconditionError("r must be at least 1");
  // Reduce raw engine output directly so the stream is identical across
  // standard library implementations.
  std::mt19937_64 rng(seed);
  std::vector<Matrix> maps;
  for (long i = 0; i < r; ++i) {
    Matrix m(d2, d1);
    for (std::size_t row = 0; row < d2; ++row)
      for (std::size_t col = 0; col < d1; ++col) {
        if (field.is_prime())
          m(row, col) = static_cast<unsigned long>(rng() % field.characteristic());
        else
          m(row, col) = static_cast<long>(rng() % 19) - 9;
      }
    maps.push_back(std::move(m));
  }
  return KronRep(r, field, d1, d2, std::move(maps));
}

std::vector<IsoClass> enumerate_small(long r, std::size_t d1, std::size_t d2, std::uint64_t p) {
  const FieldSpec field = FieldSpec::prime(p);
  if (r < 1) throw PreconditionError("r must be at least 1");
  const std::size_t width = static_cast<std::size_t>(r) * d1 * d2;
  const u64 tuples = checked_pow(p, width, kTupleCap);
  if (tuples > kTupleCap) throw CapExceeded("p^(r d1 d2) exceeds " + std::to_string(kTupleCap));
  const u64 gl1_bound = checked_pow(p, d1 * d1, kGroupCap * 1000);
  const u64 gl2_bound = checked_pow(p, d2 * d2, kGroupCap * 1000);
  if (gl1_bound > kGroupCap * 1000 || gl2_bound > kGroupCap * 1000)
    throw CapExceeded("|GL_d1| * |GL_d2| exceeds " + std::to_string(kGroupCap));
  const auto gl1 = general_linear_group(d1, p);
  const auto gl2 = general_linear_group(d2, p);
  if (static_cast<u64>(gl1.size()) * gl2.size() > kGroupCap)
    throw CapExceeded("|GL_d1| * |GL_d2| exceeds " + std::to_string(kGroupCap));

  // Tuple layout: map i, row a (sink), column b (source), first digit least significant.
  auto decode = [&](u64 index) {
    std::vector<u64> e(width);
    for (auto& x : e) {
      x = index % p;
      index /= p;
    }
    return e;
  };
  auto encode = [&](const std::vector<u64>& e) {
    u64 index = 0;
    for (std::size_t k = width; k-- > 0;) index = index * p + e[k];
    return index;
  };
  auto at = [&](long i, std::size_t a, std::size_t b) { return (static_cast<std::size_t>(i) * d2 + a) * d1 + b; };
  // M_i -> B M_i A
  auto act = [&](const std::vector<u64>& e, const std::vector<u64>& A, const std::vector<u64>& B) {
    std::vector<u64> out(width, 0);
    std::vector<u64> tmp(d2 * d1);
    for (long i = 0; i < r; ++i) {
      for (std::size_t a = 0; a < d2; ++a)
        for (std::size_t b = 0; b < d1; ++b) {
          u64 s = 0;
          for (std::size_t c = 0; c < d1; ++c) s = (s + e[at(i, a, c)] * A[c * d1 + b]) % p;
          tmp[a * d1 + b] = s;
        }
      for (std::size_t a = 0; a < d2; ++a)
        for (std::size_t b = 0; b < d1; ++b) {
          u64 s = 0;
          for (std::size_t c = 0; c < d2; ++c) s = (s + B[a * d2 + c] * tmp[c * d1 + b]) % p;
          out[at(i, a, b)] = s;
        }
    }
    return out;
  };
  auto splits = [&](const std::vector<u64>& e) {
    for (std::size_t s1 = 0; s1 <= d1; ++s1)
      for (std::size_t s2 = 0; s2 <= d2; ++s2) {
        if ((s1 == 0 && s2 == 0) || (s1 == d1 && s2 == d2)) continue;
        bool block = true;
        for (long i = 0; i < r && block; ++i)
          for (std::size_t a = 0; a < d2 && block; ++a)
            for (std::size_t b = 0; b < d1 && block; ++b)
              if (e[at(i, a, b)] != 0 && ((a < s2) != (b < s1))) block = false;
        if (block) return true;
      }
    return false;
  };
  auto to_rep = [&](const std::vector<u64>& e) {
    std::vector<Matrix> maps;
    for (long i = 0; i < r; ++i) {
      Matrix m(d2, d1);
      for (std::size_t a = 0; a < d2; ++a)
        for (std::size_t b = 0; b < d1; ++b) m(a, b) = static_cast<unsigned long>(e[at(i, a, b)]);
      maps.push_back(std::move(m));
    }
    return KronRep(r, field, d1, d2, std::move(maps));
  };

  std::vector<bool> seen(tuples, false);
  std::vector<IsoClass> classes;
  for (u64 index = 0; index < tuples; ++index) {
    if (seen[index]) continue;
    const auto e = decode(index);
    u64 size = 0;
    bool decomposable = false;
    for (const auto& A : gl1)
      for (const auto& B : gl2) {
        const auto image = act(e, A, B);
        const u64 k = encode(image);
        if (!seen[k]) {
          seen[k] = true;
          ++size;
          if (!decomposable && splits(image)) decomposable = true;
        }
      }
    const KronRep rep = to_rep(e);
    const bool brick = end_is_brick(rep);
    const bool nonzero = d1 + d2 > 0;
    classes.push_back({rep, size, brick, nonzero && !decomposable});
  }
  return classes;
}

}  // namespace ekpdim
