#pragma once

// Exhaustive desk-scale verification of the inequalities and identities
// behind the dimension-vector characterization. Every checker sweeps an
// explicit finite range and reports either Pass or the first counterexample
// in sweep order.

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ekpdim/exactnum.hpp"
#include "ekpdim/kronecker.hpp"

namespace ekpdim {

struct CheckResult {
  std::string name;
  long r = 0;
  std::string range;
  std::uint64_t cases = 0;
  /// Empty on Pass; otherwise the failing input in checker-specific order.
  std::optional<std::vector<BigInt>> counterexample;
  std::chrono::duration<double> elapsed{};

  bool passed() const { return !counterexample.has_value(); }
};

nlohmann::json to_json(const CheckResult& result, bool include_timing = false);

/// Re-runs the single case stored in a counterexample. Returns true when
/// the case still fails.
bool replay_fails(const CheckResult& result);

// Single-case predicates. Each returns true when the case satisfies the
// statement (vacuously true when the hypothesis fails).

/// a <= b <= a L and q + b - a <= 0  imply  a L - b >= 1/2.
bool distance_case_holds(long r, std::int64_t a, std::int64_t b);
/// Parts (a_i, b_i) with q <= 0 summing to (a, floor(a L)) have b_i = floor(a_i L).
bool average_case_holds(long r, const std::vector<DimVector>& parts);
/// a > 1, b = floor(a L), q + b - a <= 0: conclusions (i)-(iii).
bool descent_case_holds(long r, const BigInt& a);
/// (u, v) imaginary, u >= v + r - 1 implies Phi^{-1}(u, v) + (0, 1) imaginary.
bool inverse_shift_case_holds(long r, const BigInt& u, const BigInt& v);
/// (a, b) imaginary with q + |a - b| >= 1 implies b = floor(a L) or a = floor(b L).
bool maximality_case_holds(long r, const BigInt& a, const BigInt& b);

/// q(u-1, v-(r-1)) = q(u, v) + u(r^2-r-2) + v(2-r) + 2 - r.
bool check_shift_q_identity(long r, const BigInt& u, const BigInt& v);
/// (x', y') = Phi(u-1, v-(r-1)) has q(x', y') + y' - x' = q(u, v) + v - u.
bool check_shift_coxeter_identity(long r, const BigInt& u, const BigInt& v);
/// Tits form of the auxiliary quiver at (d1, d2, rho) equals
/// q(d1, d2) + (d1 - rho)(d2 - rho). Requires 0 <= rho <= min(d1, d2).
bool check_aux_tits_identity(long r, const BigInt& d1, const BigInt& d2, const BigInt& rho);

enum class FiltrationVerdict { AllEkp, OneBad, Violation };

struct FiltrationCount {
  FiltrationVerdict verdict;
  std::optional<std::size_t> bad_index;  ///< 1-based, set for OneBad
};

/// Counts parts with q + b_i - a_i <= 0. Throws PreconditionError unless
/// the parts sum to (a, b) with a <= b = floor(a L) and every part has q <= 0.
FiltrationCount check_filtration_count(long r, const std::vector<DimVector>& parts);

// Sweeps. `jobs` shards the outer range across threads; the merged result
// does not depend on it.

CheckResult check_distance_bound(long r, std::int64_t a_max, unsigned jobs = 1);
CheckResult check_average_split(long r, std::int64_t a_max, unsigned n, unsigned jobs = 1);
CheckResult check_filtration_sweep(long r, std::int64_t a_max, unsigned jobs = 1);
CheckResult check_descent_step(long r, std::int64_t a_max, unsigned jobs = 1);
CheckResult check_inverse_shift_imaginary(long r, std::int64_t bound, unsigned jobs = 1);
CheckResult check_maximality_dichotomy(long r, std::int64_t bound, unsigned jobs = 1);
CheckResult check_shift_identities(long r_max, std::uint64_t samples, std::uint64_t seed);
CheckResult check_aux_tits_sweep(long r_max, std::int64_t bound, unsigned jobs = 1);

using SmallPart = std::pair<std::int64_t, std::int64_t>;

/// Every multiset of parts with positive coordinates and q <= 0 summing to
/// (a, b), parts listed in non-increasing order. `parts` = 0 allows any
/// number of parts. Stops early when `visit` returns false.
void for_each_imaginary_decomposition(long r, std::int64_t a, std::int64_t b, std::size_t parts,
                                      const std::function<bool(const std::vector<SmallPart>&)>& visit);

}  // namespace ekpdim
