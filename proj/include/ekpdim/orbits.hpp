#pragma once

// Coxeter orbits of imaginary roots: boundary elements of the equal images
// and equal kernels regions, the W(C) bound, and the A_i(r) sequence.

#include <cstdint>
#include <vector>

#include "ekpdim/exactnum.hpp"
#include "ekpdim/kronecker.hpp"

namespace ekpdim {

inline constexpr std::uint64_t kDefaultOrbitStepCap = 1'000'000;

struct OrbitEntry {
  long offset;  ///< l such that this entry is Phi^l(seed)
  DimVector dim;
  bool ekp;
  bool eip;
};

struct OrbitBoundary {
  DimVector delta;   ///< last orbit element without EIP along Phi
  std::uint64_t m;   ///< minimal l >= 0 with Phi^{-l}(delta) EKP
};

struct OrbitReport {
  long r;
  DimVector seed;
  BigInt q_value;
  OrbitBoundary boundary;
  std::vector<OrbitEntry> window;
};

/// [Phi^{-back} seed, ..., seed, ..., Phi^{fwd} seed]. Seed must be imaginary.
std::vector<DimVector> orbit_window(long r, const DimVector& seed, std::size_t back, std::size_t fwd);

/// Walks the orbit with the dimension-level predicates. r >= 3, imaginary seed.
OrbitBoundary find_delta_and_m(long r, const DimVector& seed, std::uint64_t step_cap = kDefaultOrbitStepCap);

OrbitReport orbit_report(long r, const DimVector& seed, std::size_t back, std::size_t fwd,
                         std::uint64_t step_cap = kDefaultOrbitStepCap);

/// m_O - ql + 1; may be negative for large ql.
std::int64_t w_bound(long r, const DimVector& dim, std::int64_t ql);

/// A_1 = 1, A_2 = r, A_{i+2} = r A_{i+1} - A_i; the first n terms.
std::vector<BigInt> a_seq(long r, std::size_t n);

/// A_{l+1} = L^l - A_l L + r A_l, exactly in Q(sqrt(r^2-4)).
bool verify_a_identity(long r, unsigned l);

/// With (x, y) = sum_{i=0}^{l} Phi^{-i}(a, b):
/// (x L - y) L^l = A_{l+1} (a L - b).
bool verify_sum_identity(long r, const DimVector& ab, unsigned l);

/// A_l < L^l.
bool verify_a_bound(long r, unsigned l);

/// The gap inequalities for Phi (when a >= b) and Phi^{-1} (when a <= b).
bool verify_orbit_gaps(long r, const DimVector& ab);

}  // namespace ekpdim
