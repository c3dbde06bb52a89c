#include "ekpdim/kronecker.hpp"

#include <ostream>
#include <sstream>

#include "ekpdim/error.hpp"

namespace ekpdim {

namespace {

void require_r(long r) {
  if (r < 1) throw PreconditionError("Kronecker quiver needs r >= 1, got " + std::to_string(r));
}

void require_root(long r, const DimVector& d) {
  if (!is_root(classify(r, d)))
    throw PreconditionError(to_string(d) + " is not a positive root of Gamma_" + std::to_string(r));
}

}  // namespace

std::ostream& operator<<(std::ostream& os, const DimVector& d) {
  return os << '(' << d.d1.get_str() << ',' << d.d2.get_str() << ')';
}

std::string to_string(const DimVector& d) {
  std::ostringstream os;
  os << d;
  return os.str();
}

std::string to_string(RootClass c) {
  switch (c) {
    case RootClass::NotRoot: return "NotRoot";
    case RootClass::RealPreprojective: return "Real Preprojective";
    case RootClass::RealPreinjective: return "Real Preinjective";
    case RootClass::Imaginary: return "Imaginary";
  }
  return "?";
}

BigInt q_r(long r, const DimVector& d) { return d.d1 * d.d1 + d.d2 * d.d2 - r * d.d1 * d.d2; }

RootClass classify(long r, const DimVector& d) {
  require_r(r);
  if (!d.non_negative() || d.is_zero()) return RootClass::NotRoot;
  const BigInt q = q_r(r, d);
  if (q == 1) return d.d1 <= d.d2 ? RootClass::RealPreprojective : RootClass::RealPreinjective;
  if (sgn(q) <= 0 && sgn(d.d1) > 0 && sgn(d.d2) > 0) return RootClass::Imaginary;
  return RootClass::NotRoot;
}

bool ekp_dim(long r, const DimVector& d) {
  require_root(r, d);
  return q_r(r, d) + d.d2 - d.d1 >= 1;
}

bool eip_dim(long r, const DimVector& d) {
  require_root(r, d);
  return q_r(r, d) + d.d1 - d.d2 >= 1;
}

bool ekp_or_eip_dim(long r, const DimVector& d) {
  require_root(r, d);
  const BigInt gap = abs(d.d1 - d.d2);
  return q_r(r, d) + gap >= 1;
}

bool westwick_necessary(long r, const DimVector& d) {
  if (sgn(d.d1) == 0 && d.d2 == 1) return true;
  return d.d2 - d.d1 >= r - 1 && sgn(d.d1) != 0 && sgn(d.d2) != 0;
}

DimVector coxeter(long r, const DimVector& d) {
  const BigInt rr = BigInt(r) * r;
  return {(rr - 1) * d.d1 - r * d.d2, r * d.d1 - d.d2};
}

DimVector coxeter_inv(long r, const DimVector& d) {
  const BigInt rr = BigInt(r) * r;
  return {-d.d1 + r * d.d2, -r * d.d1 + (rr - 1) * d.d2};
}

DimVector proj_dim(long r, unsigned long i) {
  require_r(r);
  if (i < 1) throw PreconditionError("P_i is indexed from i = 1");
  DimVector odd{0, 1};
  DimVector even{1, r};
  DimVector& slot = (i % 2 == 1) ? odd : even;
  for (unsigned long k = (i % 2 == 1) ? 1 : 2; k < i; k += 2) slot = coxeter_inv(r, slot);
  return slot;
}

DimVector inj_dim(long r, unsigned long i) {
  require_r(r);
  if (i < 1) throw PreconditionError("I_i is indexed from i = 1");
  DimVector odd{1, 0};
  DimVector even{r, 1};
  DimVector& slot = (i % 2 == 1) ? odd : even;
  for (unsigned long k = (i % 2 == 1) ? 1 : 2; k < i; k += 2) slot = coxeter(r, slot);
  return slot;
}

bool loewy_inequality(long r, const BigInt& m0, const BigInt& m1, const BigInt& m2) {
  if (!(m0 >= m1 && m1 >= m2 && sgn(m2) >= 0))
    throw PreconditionError("radical layer dimensions must satisfy m0 >= m1 >= m2 >= 0");
  return q_r(r, {m0 - m1, m1 - m2}) + m0 - 2 * m1 + m2 >= 1;
}

}  // namespace ekpdim
