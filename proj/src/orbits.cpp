#include "ekpdim/orbits.hpp"

#include "ekpdim/error.hpp"

namespace ekpdim {

namespace {

void require_imaginary(long r, const DimVector& d) {
  if (classify(r, d) != RootClass::Imaginary)
    throw PreconditionError(to_string(d) + " is not an imaginary root of Gamma_" + std::to_string(r));
}

void require_wild(long r) {
  if (r < 3) throw PreconditionError("orbit analysis needs r >= 3");
}

void require_l(unsigned l) {
  if (l < 1) throw PreconditionError("index l must be at least 1");
}

QuadNum lr_times_minus(long r, const DimVector& d) {
  // a L - b
  return lr(r) * BigRat(d.d1) - BigRat(d.d2);
}

}  // namespace

std::vector<DimVector> orbit_window(long r, const DimVector& seed, std::size_t back, std::size_t fwd) {
  require_imaginary(r, seed);
  std::vector<DimVector> out(back + fwd + 1);
  out[back] = seed;
  for (std::size_t k = back; k > 0; --k) out[k - 1] = coxeter_inv(r, out[k]);
  for (std::size_t k = back; k < back + fwd; ++k) out[k + 1] = coxeter(r, out[k]);
  return out;
}

OrbitBoundary find_delta_and_m(long r, const DimVector& seed, std::uint64_t step_cap) {
  require_wild(r);
  require_imaginary(r, seed);
  std::uint64_t steps = 0;
  auto tick = [&] {
    if (++steps > step_cap) throw CapExceeded("orbit walk exceeded " + std::to_string(step_cap) + " steps");
  };

  // EIP elements form an up-set along Phi; delta is the last element outside it.
  DimVector delta = seed;
  if (eip_dim(r, delta)) {
    while (eip_dim(r, delta)) {
      delta = coxeter_inv(r, delta);
      tick();
    }
  } else {
    for (DimVector next = coxeter(r, delta); !eip_dim(r, next); next = coxeter(r, next)) {
      delta = next;
      tick();
    }
  }

  std::uint64_t m = 0;
  for (DimVector cur = delta; !ekp_dim(r, cur); cur = coxeter_inv(r, cur)) {
    ++m;
    tick();
  }
  return {delta, m};
}

OrbitReport orbit_report(long r, const DimVector& seed, std::size_t back, std::size_t fwd, std::uint64_t step_cap) {
  OrbitReport report{r, seed, q_r(r, seed), find_delta_and_m(r, seed, step_cap), {}};
  const auto dims = orbit_window(r, seed, back, fwd);
  report.window.reserve(dims.size());
  for (std::size_t k = 0; k < dims.size(); ++k) {
    const long offset = static_cast<long>(k) - static_cast<long>(back);
    report.window.push_back({offset, dims[k], ekp_dim(r, dims[k]), eip_dim(r, dims[k])});
  }
  return report;
}

std::int64_t w_bound(long r, const DimVector& dim, std::int64_t ql) {
  if (ql < 1) throw PreconditionError("quasi-length must be at least 1");
  const auto boundary = find_delta_and_m(r, dim);
  return static_cast<std::int64_t>(boundary.m) - ql + 1;
}

std::vector<BigInt> a_seq(long r, std::size_t n) {
  if (n < 1) throw PreconditionError("a_seq needs n >= 1");
  std::vector<BigInt> values;
  values.reserve(n);
  values.emplace_back(1);
  if (n >= 2) values.emplace_back(r);
  while (values.size() < n) {
    const std::size_t k = values.size();
    values.push_back(r * values[k - 1] - values[k - 2]);
  }
  return values;
}

bool verify_a_identity(long r, unsigned l) {
  require_wild(r);
  require_l(l);
  const auto a = a_seq(r, l + 1);
  const QuadNum L = lr(r);
  const QuadNum rhs = L.pow(l) - L * BigRat(a[l - 1]) + BigRat(r * a[l - 1]);
  return rhs == QuadNum::rational(BigRat(a[l]), L.radicand());
}

bool verify_sum_identity(long r, const DimVector& ab, unsigned l) {
  require_wild(r);
  require_imaginary(r, ab);
  require_l(l);
  DimVector sum = ab;
  DimVector term = ab;
  for (unsigned i = 1; i <= l; ++i) {
    term = coxeter_inv(r, term);
    sum = sum + term;
  }
  const auto a = a_seq(r, l + 1);
  const QuadNum lhs = lr_times_minus(r, sum) * lr(r).pow(l);
  const QuadNum rhs = lr_times_minus(r, ab) * BigRat(a[l]);
  return lhs == rhs;
}

bool verify_a_bound(long r, unsigned l) {
  require_wild(r);
  require_l(l);
  const auto a = a_seq(r, l);
  return (lr(r).pow(l) - BigRat(a[l - 1])).sign() > 0;
}

bool verify_orbit_gaps(long r, const DimVector& ab) {
  require_wild(r);
  require_imaginary(r, ab);
  const long r2r = r * r - 2 * r;
  bool ok = true;
  if (ab.d1 >= ab.d2) {
    const DimVector image = coxeter(r, ab);
    const BigInt gap = image.d1 - image.d2;
    const BigInt base = ab.d1 - ab.d2;
    ok = ok && gap >= base + r2r * ab.d1 && base + r2r * ab.d1 > base && sgn(base) >= 0;
  }
  if (ab.d1 <= ab.d2) {
    const DimVector image = coxeter_inv(r, ab);
    const BigInt gap = image.d2 - image.d1;
    const BigInt base = ab.d2 - ab.d1;
    ok = ok && gap >= base + r2r * ab.d2 && base + r2r * ab.d2 > base && sgn(base) >= 0;
  }
  return ok;
}

}  // namespace ekpdim
