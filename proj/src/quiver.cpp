#include "ekpdim/quiver.hpp"

#include <nlohmann/json.hpp>

#include "ekpdim/error.hpp"

namespace ekpdim {

namespace {

void require_length(const Quiver& q, const IntVector& x) {
  if (x.size() != q.vertex_count())
    throw PreconditionError("vector of length " + std::to_string(x.size()) + " used with a quiver on " +
                            std::to_string(q.vertex_count()) + " vertices");
}

bool support_connected(const Quiver& q, const IntVector& x) {
  const std::size_t n = q.vertex_count();
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> stack;
  std::size_t support = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(x[i]) == 0) continue;
    ++support;
    if (stack.empty() && support == 1) {
      stack.push_back(i);
      seen[i] = 1;
    }
  }
  if (support == 0) return false;
  std::size_t reached = 0;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    ++reached;
    for (std::size_t w = 0; w < n; ++w) {
      if (seen[w] || sgn(x[w]) == 0) continue;
      if (q.arrow_count(v, w) + q.arrow_count(w, v) == 0) continue;
      seen[w] = 1;
      stack.push_back(w);
    }
  }
  return reached == support;
}

}  // namespace

Quiver::Quiver(std::size_t vertex_count, std::vector<Arrow> arrows)
    : n_(vertex_count), arrows_(std::move(arrows)), counts_(vertex_count * vertex_count, 0) {
  for (const auto& [s, t] : arrows_) {
    if (s >= n_ || t >= n_) throw FormatError("arrow endpoint out of range");
    if (s == t) throw FormatError("quiver has a loop at vertex " + std::to_string(s + 1));
    ++counts_[s * n_ + t];
  }
  // Kahn's algorithm; leftover vertices lie on an oriented cycle.
  std::vector<long> indegree(n_, 0);
  for (const auto& a : arrows_) ++indegree[a.second];
  std::vector<std::size_t> ready;
  for (std::size_t v = 0; v < n_; ++v)
    if (indegree[v] == 0) ready.push_back(v);
  std::size_t removed = 0;
  while (!ready.empty()) {
    const std::size_t v = ready.back();
    ready.pop_back();
    ++removed;
    for (std::size_t w = 0; w < n_; ++w) {
      const long c = counts_[v * n_ + w];
      if (c == 0) continue;
      indegree[w] -= c;
      if (indegree[w] == 0) ready.push_back(w);
    }
  }
  if (removed != n_) throw FormatError("quiver has an oriented cycle");
}

Quiver Quiver::kronecker(long r) {
  if (r < 0) throw PreconditionError("arrow count must be non-negative");
  return Quiver(2, std::vector<Arrow>(static_cast<std::size_t>(r), Arrow{0, 1}));
}

Quiver Quiver::kronecker_auxiliary(long r) {
  if (r < 1) throw PreconditionError("auxiliary quiver needs r >= 1");
  std::vector<Arrow> arrows(static_cast<std::size_t>(r - 1), Arrow{0, 1});
  arrows.emplace_back(0, 2);
  arrows.emplace_back(2, 1);
  return Quiver(3, std::move(arrows));
}

Quiver Quiver::from_json(const nlohmann::json& j) {
  try {
    const auto n = j.at("n").get<long long>();
    if (n < 0) throw FormatError("negative vertex count");
    std::vector<Arrow> arrows;
    for (const auto& a : j.at("arrows")) {
      if (!a.is_array() || a.size() != 2) throw FormatError("arrow must be a [source, target] pair");
      const auto s = a[0].get<long long>();
      const auto t = a[1].get<long long>();
      if (s < 1 || t < 1 || s > n || t > n) throw FormatError("arrow endpoint out of range");
      arrows.emplace_back(static_cast<std::size_t>(s - 1), static_cast<std::size_t>(t - 1));
    }
    return Quiver(static_cast<std::size_t>(n), std::move(arrows));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("quiver JSON: ") + e.what());
  }
}

nlohmann::json Quiver::to_json() const {
  nlohmann::json arrows = nlohmann::json::array();
  for (const auto& [s, t] : arrows_) arrows.push_back({s + 1, t + 1});
  return {{"n", n_}, {"arrows", arrows}};
}

std::string to_string(RootType t) {
  switch (t) {
    case RootType::Real: return "Real";
    case RootType::Imaginary: return "Imaginary";
    case RootType::NotRoot: return "NotRoot";
  }
  return "?";
}

BigInt euler_form(const Quiver& q, const IntVector& x, const IntVector& y) {
  require_length(q, x);
  require_length(q, y);
  BigInt value = 0;
  for (std::size_t i = 0; i < x.size(); ++i) value += x[i] * y[i];
  for (const auto& [s, t] : q.arrows()) value -= x[s] * y[t];
  return value;
}

BigInt tits_form(const Quiver& q, const IntVector& x) { return euler_form(q, x, x); }

BigInt symmetric_form(const Quiver& q, const IntVector& x, const IntVector& y) {
  return euler_form(q, x, y) + euler_form(q, y, x);
}

BigInt pairing_with_simple(const Quiver& q, const IntVector& x, std::size_t i) {
  require_length(q, x);
  if (i >= q.vertex_count()) throw PreconditionError("vertex index out of range");
  BigInt value = 2 * x[i];
  for (std::size_t j = 0; j < q.vertex_count(); ++j) {
    const long adjacent = q.arrow_count(i, j) + q.arrow_count(j, i);
    if (adjacent != 0) value -= adjacent * x[j];
  }
  return value;
}

IntVector reflect(const Quiver& q, std::size_t i, IntVector x) {
  BigInt pairing = pairing_with_simple(q, x, i);
  x[i] -= pairing;
  return x;
}

bool in_fundamental_domain(const Quiver& q, const IntVector& x) {
  require_length(q, x);
  for (const auto& c : x)
    if (sgn(c) < 0) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (sgn(pairing_with_simple(q, x, i)) > 0) return false;
  return support_connected(q, x);
}

RootType positive_root_type(const Quiver& q, IntVector x) {
  require_length(q, x);
  bool nonzero = false;
  for (const auto& c : x) {
    if (sgn(c) < 0) return RootType::NotRoot;
    nonzero = nonzero || sgn(c) != 0;
  }
  if (!nonzero) return RootType::NotRoot;

  for (;;) {
    std::size_t support = 0;
    bool unit = false;
    for (const auto& c : x) {
      if (sgn(c) != 0) {
        ++support;
        unit = c == 1;
      }
    }
    if (support == 1 && unit) return RootType::Real;

    std::size_t descent = x.size();
    BigInt pairing;
    for (std::size_t i = 0; i < x.size(); ++i) {
      pairing = pairing_with_simple(q, x, i);
      if (sgn(pairing) > 0) {
        descent = i;
        break;
      }
    }
    if (descent == x.size()) return support_connected(q, x) ? RootType::Imaginary : RootType::NotRoot;

    x[descent] -= pairing;
    if (sgn(x[descent]) < 0) return RootType::NotRoot;
  }
}

}  // namespace ekpdim
