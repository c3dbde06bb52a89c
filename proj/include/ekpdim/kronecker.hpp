#pragma once

// Closed forms for the generalized Kronecker quiver Gamma_r: Tits form,
// root classification, Coxeter matrix, and the dimension-vector equal
// kernels / equal images predicates.

#include <iosfwd>
#include <string>

#include "ekpdim/exactnum.hpp"

namespace ekpdim {

/// A vector of Z^2. Dimension vectors are the non-negative ones; Coxeter
/// images may leave the positive quadrant and callers check.
struct DimVector {
  BigInt d1;
  BigInt d2;

  bool non_negative() const { return sgn(d1) >= 0 && sgn(d2) >= 0; }
  bool is_zero() const { return sgn(d1) == 0 && sgn(d2) == 0; }

  friend bool operator==(const DimVector& a, const DimVector& b) { return a.d1 == b.d1 && a.d2 == b.d2; }
  friend DimVector operator+(const DimVector& a, const DimVector& b) { return {a.d1 + b.d1, a.d2 + b.d2}; }
  friend DimVector operator-(const DimVector& a, const DimVector& b) { return {a.d1 - b.d1, a.d2 - b.d2}; }
};

std::ostream& operator<<(std::ostream& os, const DimVector& d);
std::string to_string(const DimVector& d);

enum class RootClass { NotRoot, RealPreprojective, RealPreinjective, Imaginary };

std::string to_string(RootClass c);
inline bool is_root(RootClass c) { return c != RootClass::NotRoot; }
inline bool is_real(RootClass c) { return c == RootClass::RealPreprojective || c == RootClass::RealPreinjective; }

/// q(x, y) = x^2 + y^2 - r x y.
BigInt q_r(long r, const DimVector& d);

/// Imaginary iff q <= 0 with both coordinates positive; Real iff q = 1,
/// preprojective when d1 <= d2 and preinjective otherwise.
RootClass classify(long r, const DimVector& d);

/// q(d) + d2 - d1 >= 1. Throws PreconditionError unless d is a positive root.
bool ekp_dim(long r, const DimVector& d);
/// q(d) + d1 - d2 >= 1. Throws PreconditionError unless d is a positive root.
bool eip_dim(long r, const DimVector& d);
/// q(d) + |d1 - d2| >= 1 on positive roots.
bool ekp_or_eip_dim(long r, const DimVector& d);

bool westwick_necessary(long r, const DimVector& d);

/// Phi_r = [[r^2-1, -r], [r, -1]].
DimVector coxeter(long r, const DimVector& d);
/// Phi_r^{-1} = [[-1, r], [-r, r^2-1]].
DimVector coxeter_inv(long r, const DimVector& d);

/// Dimension vectors of the preprojectives P_i and preinjectives I_i, i >= 1.
DimVector proj_dim(long r, unsigned long i);
DimVector inj_dim(long r, unsigned long i);

/// q(m0 - m1, m1 - m2) + m0 - 2 m1 + m2 >= 1 for radical layer dimensions
/// m0 >= m1 >= m2 >= 0.
bool loewy_inequality(long r, const BigInt& m0, const BigInt& m1, const BigInt& m2);

}  // namespace ekpdim
