#include "ekpdim/theorems.hpp"

#include <algorithm>
#include <random>
#include <thread>

#include <nlohmann/json.hpp>

#include "ekpdim/error.hpp"
#include "ekpdim/quiver.hpp"

namespace ekpdim {

namespace {

using Clock = std::chrono::steady_clock;
using Failure = std::optional<std::vector<BigInt>>;
/// Processes one outer index, adding to `cases`; returns the first failing
/// case for that index, if any.
using SweepUnit = std::function<Failure(std::int64_t, std::uint64_t&)>;

// Hot loops run on int64; keep every intermediate well inside range.
constexpr std::int64_t kSmallBound = std::int64_t{1} << 24;

void require_wild(long r) {
  if (r < 3) throw PreconditionError("this check needs r >= 3");
}

void require_small(long r, std::int64_t bound) {
  if (r > 1000 || bound > kSmallBound) throw CapExceeded("sweep range too large for the machine-integer path");
}

std::int64_t small_q(std::int64_t r, std::int64_t a, std::int64_t b) { return a * a + b * b - r * a * b; }

CheckResult run_sweep(std::string name, long r, std::string range, std::int64_t lo, std::int64_t hi, unsigned jobs,
                      const SweepUnit& unit) {
  const auto start = Clock::now();
  CheckResult result;
  result.name = std::move(name);
  result.r = r;
  result.range = std::move(range);
  if (hi < lo) {
    result.elapsed = Clock::now() - start;
    return result;
  }
  const auto count = static_cast<std::size_t>(hi - lo + 1);
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::min<std::size_t>(count, 256))));

  std::vector<std::uint64_t> per_index(count, 0);
  std::vector<std::optional<std::pair<std::int64_t, std::vector<BigInt>>>> shard_failure(jobs);

  // Interleaved shards balance work that grows with the index. Each shard
  // stops at its own first failure, so every index below the global first
  // failure is always fully processed.
  auto work = [&](unsigned shard) {
    for (std::size_t k = shard; k < count; k += jobs) {
      const std::int64_t index = lo + static_cast<std::int64_t>(k);
      if (auto failure = unit(index, per_index[k])) {
        shard_failure[shard] = std::make_pair(index, std::move(*failure));
        return;
      }
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(jobs);
    for (unsigned s = 0; s < jobs; ++s) threads.emplace_back(work, s);
    for (auto& t : threads) t.join();
  }

  std::optional<std::pair<std::int64_t, std::vector<BigInt>>> first;
  for (auto& f : shard_failure)
    if (f && (!first || f->first < first->first)) first = std::move(f);
  const std::size_t last = first ? static_cast<std::size_t>(first->first - lo) : count - 1;
  for (std::size_t k = 0; k <= last; ++k) result.cases += per_index[k];
  if (first) result.counterexample = std::move(first->second);
  result.elapsed = Clock::now() - start;
  return result;
}

std::vector<BigInt> flatten(std::int64_t a, std::int64_t b, const std::vector<SmallPart>& parts) {
  std::vector<BigInt> out{BigInt(static_cast<long>(a)), BigInt(static_cast<long>(b))};
  for (const auto& [x, y] : parts) {
    out.emplace_back(static_cast<long>(x));
    out.emplace_back(static_cast<long>(y));
  }
  return out;
}

std::vector<DimVector> to_dims(const std::vector<SmallPart>& parts) {
  std::vector<DimVector> out;
  out.reserve(parts.size());
  for (const auto& [x, y] : parts) out.push_back({BigInt(static_cast<long>(x)), BigInt(static_cast<long>(y))});
  return out;
}

std::vector<DimVector> parts_from(const std::vector<BigInt>& flat) {
  std::vector<DimVector> parts;
  for (std::size_t i = 2; i + 1 < flat.size(); i += 2) parts.push_back({flat[i], flat[i + 1]});
  return parts;
}

std::string bound_text(const char* var, std::int64_t lo, std::int64_t hi) {
  return std::to_string(lo) + " <= " + var + " <= " + std::to_string(hi);
}

long to_long(const BigInt& v) {
  if (!v.fits_slong_p()) throw PreconditionError("value out of machine range: " + v.get_str());
  return v.get_si();
}

}  // namespace

nlohmann::json to_json(const CheckResult& result, bool include_timing) {
  nlohmann::json j{{"name", result.name},
                   {"r", result.r},
                   {"range", result.range},
                   {"cases", result.cases},
                   {"outcome", result.passed() ? "Pass" : "Counterexample"}};
  if (result.counterexample) {
    nlohmann::json input = nlohmann::json::array();
    for (const auto& v : *result.counterexample) input.push_back(v.get_str());
    j["counterexample"] = input;
  }
  if (include_timing) j["elapsed_seconds"] = result.elapsed.count();
  return j;
}

bool distance_case_holds(long r, std::int64_t a, std::int64_t b) {
  require_wild(r);
  const DimVector d{BigInt(static_cast<long>(a)), BigInt(static_cast<long>(b))};
  const QuadNum gap = lr(r) * BigRat(d.d1) - BigRat(d.d2);
  if (!(a >= 1 && a <= b && gap.sign() >= 0)) return true;
  if (q_r(r, d) + d.d2 - d.d1 > 0) return true;
  return (gap - BigRat(1, 2)).sign() >= 0;
}

bool average_case_holds(long r, const std::vector<DimVector>& parts) {
  require_wild(r);
  DimVector total{0, 0};
  for (const auto& p : parts) {
    if (sgn(p.d1) < 1 || sgn(p.d2) < 1 || sgn(q_r(r, p)) > 0) return true;
    total = total + p;
  }
  if (total.d1 < 1 || total.d2 < total.d1 || total.d2 != floor_times_lr(total.d1, r)) return true;
  return std::all_of(parts.begin(), parts.end(),
                     [&](const DimVector& p) { return p.d1 <= p.d2 && p.d2 == floor_times_lr(p.d1, r); });
}

bool descent_case_holds(long r, const BigInt& a) {
  require_wild(r);
  if (a <= 1) return true;
  const BigInt b = floor_times_lr(a, r);
  if (q_r(r, {a, b}) + b - a > 0) return true;
  const DimVector shifted{a - 1, b - (r - 1)};
  if (!(shifted.d1 <= shifted.d2)) return false;
  if (classify(r, shifted) != RootClass::Imaginary) return false;
  const DimVector xy = coxeter(r, shifted);
  if (classify(r, xy) != RootClass::Imaginary) return false;
  return q_r(r, xy) + xy.d2 - xy.d1 <= 0;
}

bool inverse_shift_case_holds(long r, const BigInt& u, const BigInt& v) {
  require_wild(r);
  const DimVector uv{u, v};
  if (classify(r, uv) != RootClass::Imaginary || u < v + r - 1) return true;
  return classify(r, coxeter_inv(r, uv) + DimVector{0, 1}) == RootClass::Imaginary;
}

bool maximality_case_holds(long r, const BigInt& a, const BigInt& b) {
  require_wild(r);
  const DimVector d{a, b};
  if (classify(r, d) != RootClass::Imaginary) return true;
  if (q_r(r, d) + abs(a - b) < 1) return true;
  return b == floor_times_lr(a, r) || a == floor_times_lr(b, r);
}

bool check_shift_q_identity(long r, const BigInt& u, const BigInt& v) {
  const BigInt lhs = q_r(r, {u - 1, v - (r - 1)});
  const BigInt rhs = q_r(r, {u, v}) + u * (r * r - r - 2) + v * (2 - r) + 2 - r;
  return lhs == rhs;
}

bool check_shift_coxeter_identity(long r, const BigInt& u, const BigInt& v) {
  const DimVector xy = coxeter(r, {u - 1, v - (r - 1)});
  return q_r(r, xy) + xy.d2 - xy.d1 == q_r(r, {u, v}) + v - u;
}

bool check_aux_tits_identity(long r, const BigInt& d1, const BigInt& d2, const BigInt& rho) {
  if (sgn(rho) < 0 || rho > d1 || rho > d2) throw PreconditionError("rho must satisfy 0 <= rho <= min(d1, d2)");
  const Quiver aux = Quiver::kronecker_auxiliary(r);
  const BigInt lhs = tits_form(aux, {d1, d2, rho});
  return lhs == q_r(r, {d1, d2}) + (d1 - rho) * (d2 - rho);
}

FiltrationCount check_filtration_count(long r, const std::vector<DimVector>& parts) {
  require_wild(r);
  if (parts.empty()) throw PreconditionError("filtration needs at least one factor");
  DimVector total{0, 0};
  for (const auto& p : parts) {
    if (!p.non_negative() || sgn(q_r(r, p)) > 0)
      throw PreconditionError("factor " + to_string(p) + " does not have q <= 0");
    total = total + p;
  }
  if (total.d1 < 1 || total.d1 > total.d2 || total.d2 != floor_times_lr(total.d1, r))
    throw PreconditionError("factors sum to " + to_string(total) + ", which is not of the form (a, floor(a L))");

  std::size_t bad = 0;
  std::size_t index = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (q_r(r, parts[i]) + parts[i].d2 - parts[i].d1 <= 0) {
      ++bad;
      index = i + 1;
    }
  }
  if (bad == 0) return {FiltrationVerdict::AllEkp, std::nullopt};
  if (bad == 1) return {FiltrationVerdict::OneBad, index};
  return {FiltrationVerdict::Violation, std::nullopt};
}

void for_each_imaginary_decomposition(long r, std::int64_t a, std::int64_t b, std::size_t parts,
                                      const std::function<bool(const std::vector<SmallPart>&)>& visit) {
  require_wild(r);
  require_small(r, std::max(a, b));
  // A sum of parts with q <= 0 lies in the closed cone b <= a L, a <= b L.
  auto decomposable = [r](std::int64_t x, std::int64_t y, std::size_t k) {
    if (x == 0 && y == 0) return k == 0 || k == std::size_t(-1);
    if (k == 0) return false;
    if (x < 1 || y < 1) return false;
    if (k != std::size_t(-1) && (x < static_cast<std::int64_t>(k) || y < static_cast<std::int64_t>(k))) return false;
    return y <= small_floor_times_lr(x, r) && x <= small_floor_times_lr(y, r);
  };
  const std::size_t any = std::size_t(-1);
  std::vector<SmallPart> current;
  bool stop = false;
  std::function<void(std::int64_t, std::int64_t, SmallPart, std::size_t)> recurse =
      [&](std::int64_t x, std::int64_t y, SmallPart cap, std::size_t left) {
        if (stop) return;
        if (x == 0 && y == 0) {
          if (left == 0 || left == any) stop = !visit(current);
          return;
        }
        if (left == 0) return;
        const std::size_t next_left = left == any ? any : left - 1;
        for (std::int64_t pa = std::min(x, cap.first); pa >= 1 && !stop; --pa) {
          const std::int64_t pb_max = pa == cap.first ? std::min(y, cap.second) : y;
          for (std::int64_t pb = pb_max; pb >= 1 && !stop; --pb) {
            if (small_q(r, pa, pb) > 0) continue;
            if (!decomposable(x - pa, y - pb, next_left)) continue;
            current.emplace_back(pa, pb);
            recurse(x - pa, y - pb, {pa, pb}, next_left);
            current.pop_back();
          }
        }
      };
  recurse(a, b, {a, b}, parts == 0 ? any : parts);
}

CheckResult check_distance_bound(long r, std::int64_t a_max, unsigned jobs) {
  require_wild(r);
  require_small(r, a_max);
  const std::int64_t d = static_cast<std::int64_t>(r) * r - 4;
  return run_sweep("distance", r, bound_text("a", 1, a_max) + ", a <= b <= a L, q + b - a <= 0", 1, a_max, jobs,
                   [r, d](std::int64_t a, std::uint64_t& cases) -> Failure {
                     const std::int64_t top = small_floor_times_lr(a, r);
                     for (std::int64_t b = a; b <= top; ++b) {
                       if (small_q(r, a, b) + b - a > 0) continue;
                       ++cases;
                       // a L - b - 1/2 = (a r - 2 b - 1 + a sqrt(D)) / 2
                       if (small_quad_sign(a * r - 2 * b - 1, a, d) < 0)
                         return std::vector<BigInt>{BigInt(static_cast<long>(a)), BigInt(static_cast<long>(b))};
                     }
                     return std::nullopt;
                   });
}

CheckResult check_average_split(long r, std::int64_t a_max, unsigned n, unsigned jobs) {
  require_wild(r);
  require_small(r, a_max);
  if (n < 2 || n > 3) throw PreconditionError("number of parts must be 2 or 3");
  return run_sweep("average", r, bound_text("a", 1, a_max) + ", b = floor(a L), " + std::to_string(n) + " parts", 1,
                   a_max, jobs, [r, n](std::int64_t a, std::uint64_t& cases) -> Failure {
                     const std::int64_t b = small_floor_times_lr(a, r);
                     Failure failure;
                     for_each_imaginary_decomposition(r, a, b, n, [&](const std::vector<SmallPart>& parts) {
                       ++cases;
                       for (const auto& [pa, pb] : parts) {
                         if (!(pa <= pb && pb == small_floor_times_lr(pa, r))) {
                           failure = flatten(a, b, parts);
                           return false;
                         }
                       }
                       return true;
                     });
                     return failure;
                   });
}

CheckResult check_filtration_sweep(long r, std::int64_t a_max, unsigned jobs) {
  require_wild(r);
  require_small(r, a_max);
  return run_sweep("filtration", r, bound_text("a", 1, a_max) + ", b = floor(a L), all decompositions", 1, a_max,
                   jobs, [r](std::int64_t a, std::uint64_t& cases) -> Failure {
                     const std::int64_t b = small_floor_times_lr(a, r);
                     Failure failure;
                     for_each_imaginary_decomposition(r, a, b, 0, [&](const std::vector<SmallPart>& parts) {
                       ++cases;
                       if (check_filtration_count(r, to_dims(parts)).verdict == FiltrationVerdict::Violation) {
                         failure = flatten(a, b, parts);
                         return false;
                       }
                       return true;
                     });
                     return failure;
                   });
}

CheckResult check_descent_step(long r, std::int64_t a_max, unsigned jobs) {
  require_wild(r);
  return run_sweep("descent", r, bound_text("a", 2, a_max) + ", b = floor(a L), q + b - a <= 0", 2, a_max, jobs,
                   [r](std::int64_t a, std::uint64_t& cases) -> Failure {
                     const BigInt big_a(static_cast<long>(a));
                     const BigInt b = floor_times_lr(big_a, r);
                     if (q_r(r, {big_a, b}) + b - big_a > 0) return std::nullopt;
                     ++cases;
                     if (!descent_case_holds(r, big_a)) return std::vector<BigInt>{big_a};
                     return std::nullopt;
                   });
}

CheckResult check_inverse_shift_imaginary(long r, std::int64_t bound, unsigned jobs) {
  require_wild(r);
  require_small(r, bound);
  return run_sweep("inverse-shift", r, bound_text("u, v", 1, bound) + ", imaginary, u >= v + r - 1", 1, bound, jobs,
                   [r, bound](std::int64_t u, std::uint64_t& cases) -> Failure {
                     for (std::int64_t v = 1; v <= bound && v + r - 1 <= u; ++v) {
                       if (small_q(r, u, v) > 0) continue;
                       ++cases;
                       const BigInt bu(static_cast<long>(u));
                       const BigInt bv(static_cast<long>(v));
                       if (!inverse_shift_case_holds(r, bu, bv)) return std::vector<BigInt>{bu, bv};
                     }
                     return std::nullopt;
                   });
}

CheckResult check_maximality_dichotomy(long r, std::int64_t bound, unsigned jobs) {
  require_wild(r);
  require_small(r, bound);
  return run_sweep("maximality", r, bound_text("a, b", 1, bound) + ", imaginary, q + |a - b| >= 1", 1, bound, jobs,
                   [r, bound](std::int64_t a, std::uint64_t& cases) -> Failure {
                     for (std::int64_t b = 1; b <= bound; ++b) {
                       const std::int64_t q = small_q(r, a, b);
                       if (q > 0 || q + (a > b ? a - b : b - a) < 1) continue;
                       ++cases;
                       if (b != small_floor_times_lr(a, r) && a != small_floor_times_lr(b, r))
                         return std::vector<BigInt>{BigInt(static_cast<long>(a)), BigInt(static_cast<long>(b))};
                     }
                     return std::nullopt;
                   });
}

CheckResult check_shift_identities(long r_max, std::uint64_t samples, std::uint64_t seed) {
  const auto start = Clock::now();
  CheckResult result;
  result.name = "shift-identities";
  result.r = 0;
  result.range = "r in [3, " + std::to_string(r_max) + "], " + std::to_string(samples) +
                 " random (u, v) per r, seed " + std::to_string(seed);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> small(-1000, 1000);
  std::uniform_int_distribution<std::int64_t> large(-(std::int64_t{1} << 60), std::int64_t{1} << 60);
  for (long r = 3; r <= r_max && result.passed(); ++r) {
    for (std::uint64_t k = 0; k < samples; ++k) {
      BigInt u, v;
      // Alternate small, machine-size and products of machine-size values.
      switch (k % 3) {
        case 0:
          u = static_cast<long>(small(rng));
          v = static_cast<long>(small(rng));
          break;
        case 1:
          u = static_cast<long>(large(rng));
          v = static_cast<long>(large(rng));
          break;
        default:
          u = BigInt(static_cast<long>(large(rng))) * static_cast<long>(large(rng));
          v = BigInt(static_cast<long>(large(rng))) * static_cast<long>(large(rng));
          break;
      }
      result.cases += 2;
      if (!check_shift_q_identity(r, u, v) || !check_shift_coxeter_identity(r, u, v)) {
        result.counterexample = std::vector<BigInt>{BigInt(r), u, v};
        break;
      }
    }
  }
  result.elapsed = Clock::now() - start;
  return result;
}

CheckResult check_aux_tits_sweep(long r_max, std::int64_t bound, unsigned jobs) {
  require_small(r_max, bound);
  CheckResult merged;
  merged.name = "aux";
  merged.r = 0;
  merged.range = "r in [1, " + std::to_string(r_max) + "], 0 <= d1, d2 <= " + std::to_string(bound) +
                 ", 0 <= rho <= min(d1, d2)";
  for (long r = 1; r <= r_max && merged.passed(); ++r) {
    const Quiver aux = Quiver::kronecker_auxiliary(r);
    auto part = run_sweep("aux", r, "", 0, bound, jobs, [r, bound, &aux](std::int64_t d1, std::uint64_t& cases) -> Failure {
      const BigInt x(static_cast<long>(d1));
      for (std::int64_t d2 = 0; d2 <= bound; ++d2) {
        const BigInt y(static_cast<long>(d2));
        for (std::int64_t rho = 0; rho <= std::min(d1, d2); ++rho) {
          ++cases;
          const BigInt z(static_cast<long>(rho));
          if (tits_form(aux, {x, y, z}) != q_r(r, {x, y}) + (x - z) * (y - z))
            return std::vector<BigInt>{BigInt(r), x, y, z};
        }
      }
      return std::nullopt;
    });
    merged.cases += part.cases;
    merged.elapsed += part.elapsed;
    merged.counterexample = std::move(part.counterexample);
  }
  return merged;
}

bool replay_fails(const CheckResult& result) {
  if (!result.counterexample) return false;
  const auto& in = *result.counterexample;
  const long r = result.r;
  const std::string& name = result.name;
  if (name == "distance") return !distance_case_holds(r, to_long(in.at(0)), to_long(in.at(1)));
  if (name == "average") return !average_case_holds(r, parts_from(in));
  if (name == "filtration") return check_filtration_count(r, parts_from(in)).verdict == FiltrationVerdict::Violation;
  if (name == "descent") return !descent_case_holds(r, in.at(0));
  if (name == "inverse-shift") return !inverse_shift_case_holds(r, in.at(0), in.at(1));
  if (name == "maximality") return !maximality_case_holds(r, in.at(0), in.at(1));
  if (name == "shift-identities") {
    const long rr = to_long(in.at(0));
    return !check_shift_q_identity(rr, in.at(1), in.at(2)) || !check_shift_coxeter_identity(rr, in.at(1), in.at(2));
  }
  if (name == "aux") return !check_aux_tits_identity(to_long(in.at(0)), in.at(1), in.at(2), in.at(3));
  throw PreconditionError("unknown checker '" + name + "'");
}

}  // namespace ekpdim
