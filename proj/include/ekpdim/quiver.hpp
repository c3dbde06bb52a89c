#pragma once

// Finite acyclic quivers without loops: Euler form, Tits form, simple
// reflections and the positive-root decision by reflection descent.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ekpdim/exactnum.hpp"

namespace ekpdim {

using IntVector = std::vector<BigInt>;

/// Vertices are 0-based internally; the JSON form is 1-based.
class Quiver {
 public:
  using Arrow = std::pair<std::size_t, std::size_t>;

  /// Throws FormatError on loops, out-of-range endpoints or oriented cycles.
  Quiver(std::size_t vertex_count, std::vector<Arrow> arrows);

  /// The generalized Kronecker quiver: r arrows 1 -> 2.
  static Quiver kronecker(long r);

  /// Vertices 1, 2, 3; arrows eta_2..eta_r: 1 -> 2, eta: 1 -> 3, nu: 3 -> 2.
  static Quiver kronecker_auxiliary(long r);

  static Quiver from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  std::size_t vertex_count() const { return n_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }

  /// Number of arrows i -> j.
  long arrow_count(std::size_t i, std::size_t j) const { return counts_[i * n_ + j]; }

 private:
  std::size_t n_;
  std::vector<Arrow> arrows_;
  std::vector<long> counts_;
};

enum class RootType { Real, Imaginary, NotRoot };

std::string to_string(RootType t);

/// <x, y> = sum x_i y_i - sum over arrows i->j of x_i y_j.
BigInt euler_form(const Quiver& q, const IntVector& x, const IntVector& y);
BigInt tits_form(const Quiver& q, const IntVector& x);
BigInt symmetric_form(const Quiver& q, const IntVector& x, const IntVector& y);

/// (x, e_i) without materializing e_i.
BigInt pairing_with_simple(const Quiver& q, const IntVector& x, std::size_t i);

/// r_i(x) = x - (x, e_i) e_i.
IntVector reflect(const Quiver& q, std::size_t i, IntVector x);

/// Nonzero, non-negative, (x, e_i) <= 0 for every i, connected support.
bool in_fundamental_domain(const Quiver& q, const IntVector& x);

/// Reflection descent: reflect at the smallest vertex with positive pairing
/// until a simple root (Real) or the fundamental domain (Imaginary) is hit,
/// or positivity / connectivity fails (NotRoot).
RootType positive_root_type(const Quiver& q, IntVector x);

}  // namespace ekpdim
