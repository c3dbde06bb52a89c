#include "ekpdim/cover.hpp"

#include <algorithm>
#include <functional>
#include <tuple>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>

#include <nlohmann/json.hpp>

#include "ekpdim/error.hpp"

namespace ekpdim {

namespace {

struct Node {
  Parity parity;
  BigInt dim;
  std::vector<long> nbr;  // by color - 1; -1 when absent
};

using Graph = std::map<long, Node>;

Parity opposite(Parity p) { return p == Parity::Source ? Parity::Sink : Parity::Source; }

const char* parity_name(Parity p) { return p == Parity::Source ? "source" : "sink"; }

Graph build_graph(const CoverFragment& f) {
  Graph g;
  for (const auto& v : f.vertices) g[v.id] = Node{v.parity, v.dim, std::vector<long>(f.r, -1)};
  for (const auto& e : f.edges) {
    g[e.from].nbr[e.color - 1] = e.to;
    g[e.to].nbr[e.color - 1] = e.from;
  }
  return g;
}

void require_valid(const CoverFragment& f) {
  const auto check = validate(f);
  if (!check.ok()) throw FormatError("invalid fragment: " + check.reason);
}

std::size_t small_dim(const BigInt& d) {
  if (!d.fits_ulong_p() || d > 100000) throw CapExceeded("vertex dimension too large for matrix assembly");
  return d.get_ui();
}

bool positive_connected(const Graph& g) {
  std::vector<long> support;
  for (const auto& [id, n] : g)
    if (sgn(n.dim) > 0) support.push_back(id);
  if (support.empty()) return false;
  std::set<long> seen{support.front()};
  std::queue<long> todo;
  todo.push(support.front());
  while (!todo.empty()) {
    const long v = todo.front();
    todo.pop();
    for (long w : g.at(v).nbr)
      if (w >= 0 && sgn(g.at(w).dim) > 0 && seen.insert(w).second) todo.push(w);
  }
  return seen.size() == support.size();
}

nlohmann::json big_to_json(const BigInt& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

BigInt big_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? BigInt(std::to_string(j.get<std::uint64_t>())) : BigInt(j.get<long>());
  if (j.is_string()) {
    const BigRat v = parse_rational(j.get<std::string>());
    if (v.get_den() != 1) throw FormatError("dimension must be an integer");
    return v.get_num();
  }
  throw FormatError("dimension must be an integer");
}

nlohmann::json entry_to_json(const BigRat& v) {
  if (v.get_den() == 1 && v.get_num().fits_slong_p()) return v.get_num().get_si();
  return to_string(v);
}

BigRat entry_from_json(const nlohmann::json& e) {
  if (e.is_number_integer()) return BigRat(big_from_json(e));
  if (e.is_string()) return parse_rational(e.get<std::string>());
  throw FormatError("map entries must be integers or \"num/den\" strings");
}

}  // namespace

const CoverVertex& CoverFragment::vertex(long id) const {
  for (const auto& v : vertices)
    if (v.id == id) return v;
  throw PreconditionError("no vertex with id " + std::to_string(id));
}

FragmentCheck validate(const CoverFragment& f) {
  auto fail = [](FragmentIssue issue, std::string reason) { return FragmentCheck{issue, std::move(reason)}; };
  if (f.r < 1) return fail(FragmentIssue::BadR, "r must be at least 1");
  std::map<long, const CoverVertex*> by_id;
  for (const auto& v : f.vertices) {
    if (!by_id.emplace(v.id, &v).second) return fail(FragmentIssue::DuplicateId, "duplicate vertex id " + std::to_string(v.id));
    if (sgn(v.dim) < 0) return fail(FragmentIssue::NegativeDim, "vertex " + std::to_string(v.id) + " has negative dimension");
  }
  std::map<long, std::set<int>> colors;
  std::map<long, long> parent;
  for (const auto& [id, v] : by_id) parent[id] = id;
  std::function<long(long)> root = [&](long v) { return parent[v] == v ? v : parent[v] = root(parent[v]); };
  for (const auto& e : f.edges) {
    const std::string where = "edge " + std::to_string(e.from) + " -> " + std::to_string(e.to);
    const auto from = by_id.find(e.from);
    const auto to = by_id.find(e.to);
    if (from == by_id.end() || to == by_id.end()) return fail(FragmentIssue::UnknownEndpoint, where + " has an unknown endpoint");
    if (from->second->parity != Parity::Source || to->second->parity != Parity::Sink)
      return fail(FragmentIssue::WrongOrientation, where + " does not run from a source to a sink");
    if (e.color < 1 || e.color > f.r)
      return fail(FragmentIssue::ColorOutOfRange, where + " has color " + std::to_string(e.color) + " outside 1.." + std::to_string(f.r));
    if (!colors[e.from].insert(e.color).second || !colors[e.to].insert(e.color).second)
      return fail(FragmentIssue::DuplicateColor, where + " repeats color " + std::to_string(e.color) + " at a vertex");
    const long a = root(e.from);
    const long b = root(e.to);
    if (a == b) return fail(FragmentIssue::Cycle, where + " closes a cycle");
    parent[a] = b;
    if (e.map) {
      const BigInt rows = e.map->rows();
      const BigInt cols = e.map->cols();
      if (rows != to->second->dim || cols != from->second->dim)
        return fail(FragmentIssue::MapShape, where + " map must be " + to->second->dim.get_str() + " x " + from->second->dim.get_str());
    }
  }
  if (!by_id.empty() && f.edges.size() + 1 != by_id.size())
    return fail(FragmentIssue::Disconnected, "the underlying graph is not connected");
  return {};
}

CoverFragment CoverFragment::from_json(const nlohmann::json& j) {
  CoverFragment f;
  try {
    f.r = j.at("r").get<long>();
    if (f.r < 1 || f.r > 64) throw FormatError("r must lie in [1, 64]");
    std::map<long, BigInt> dims;
    for (const auto& vj : j.at("vertices")) {
      const auto parity = vj.at("parity").get<std::string>();
      if (parity != "source" && parity != "sink") throw FormatError("parity must be \"source\" or \"sink\"");
      CoverVertex v{vj.at("id").get<long>(), parity == "source" ? Parity::Source : Parity::Sink, big_from_json(vj.at("dim"))};
      dims[v.id] = v.dim;
      f.vertices.push_back(std::move(v));
    }
    for (const auto& ej : j.at("edges")) {
      CoverEdge e{ej.at("from").get<long>(), ej.at("to").get<long>(), ej.at("color").get<int>(), std::nullopt};
      if (ej.contains("map")) {
        const auto& mj = ej.at("map");
        if (!mj.is_array()) throw FormatError("map must be a list of rows");
        std::size_t cols = 0;
        if (!mj.empty()) {
          cols = mj.at(0).size();
        } else if (auto it = dims.find(e.from); it != dims.end() && it->second.fits_ulong_p()) {
          cols = it->second.get_ui();
        }
        Matrix m(mj.size(), cols);
        for (std::size_t row = 0; row < mj.size(); ++row) {
          if (!mj[row].is_array() || mj[row].size() != cols) throw FormatError("map rows must have equal length");
          for (std::size_t col = 0; col < cols; ++col) m(row, col) = entry_from_json(mj[row][col]);
        }
        e.map = std::move(m);
      }
      f.edges.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed fragment: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("malformed fragment: ") + e.what());
  }
  require_valid(f);
  return f;
}

nlohmann::json CoverFragment::to_json() const {
  nlohmann::json vs = nlohmann::json::array();
  for (const auto& v : vertices) vs.push_back({{"id", v.id}, {"parity", parity_name(v.parity)}, {"dim", big_to_json(v.dim)}});
  nlohmann::json es = nlohmann::json::array();
  for (const auto& e : edges) {
    nlohmann::json ej{{"from", e.from}, {"to", e.to}, {"color", e.color}};
    if (e.map) {
      nlohmann::json rows = nlohmann::json::array();
      for (std::size_t i = 0; i < e.map->rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t k = 0; k < e.map->cols(); ++k) row.push_back(entry_to_json((*e.map)(i, k)));
        rows.push_back(row);
      }
      ej["map"] = rows;
    }
    es.push_back(ej);
  }
  return {{"r", r}, {"vertices", vs}, {"edges", es}};
}

CoverFragment tau_inv_dim(const CoverFragment& f) {
  require_valid(f);
  Graph g = build_graph(f);
  if (!positive_connected(g)) throw PreconditionError("support must be nonempty and connected");
  long next_id = g.empty() ? 0 : g.rbegin()->first + 1;
  const long r = f.r;

  auto neighbor = [&](long v, int c) {
    const long existing = g.at(v).nbr[c];
    if (existing >= 0) return existing;
    const long id = next_id++;
    Node fresh{opposite(g.at(v).parity), BigInt(0), std::vector<long>(r, -1)};
    fresh.nbr[c] = v;
    g.emplace(id, std::move(fresh));
    g.at(v).nbr[c] = id;
    return id;
  };
  auto support = [&](Parity parity) {
    std::vector<long> out;
    for (const auto& [id, n] : g)
      if (n.parity == parity && sgn(n.dim) > 0) out.push_back(id);
    return out;
  };

  const auto support_sinks = support(Parity::Sink);
  std::set<long> sources;
  for (long x : support(Parity::Source)) sources.insert(x);
  for (long y : support_sinks)
    for (int c = 0; c < r; ++c) sources.insert(neighbor(y, c));

  std::map<long, BigInt> new_dim;
  for (long x : sources) {
    BigInt sum = 0;
    for (long y : g.at(x).nbr)
      if (y >= 0) sum += g.at(y).dim;
    new_dim[x] = sum - g.at(x).dim;
  }

  std::set<long> sinks(support_sinks.begin(), support_sinks.end());
  for (long x : sources)
    if (sgn(new_dim[x]) > 0)
      for (int c = 0; c < r; ++c) sinks.insert(neighbor(x, c));
  for (long y : sinks) {
    BigInt sum = 0;
    for (long x : g.at(y).nbr)
      if (x >= 0)
        if (auto it = new_dim.find(x); it != new_dim.end()) sum += it->second;
    new_dim[y] = sum - g.at(y).dim;
  }

  for (const auto& [id, d] : new_dim)
    if (sgn(d) < 0)
      throw PreconditionError("tau^{-1} dimension at vertex " + std::to_string(id) + " would be " + d.get_str() +
                              "; the input is not the dimension function of an indecomposable non-injective");

  CoverFragment out;
  out.r = r;
  for (const auto& [id, d] : new_dim)
    if (sgn(d) > 0) out.vertices.push_back({id, g.at(id).parity, d});
  for (const auto& v : out.vertices) {
    if (v.parity != Parity::Source) continue;
    for (int c = 0; c < r; ++c) {
      const long y = g.at(v.id).nbr[c];
      if (y < 0) continue;
      if (auto it = new_dim.find(y); it != new_dim.end() && sgn(it->second) > 0) out.edges.push_back({v.id, y, c + 1, std::nullopt});
    }
  }
  std::sort(out.edges.begin(), out.edges.end(), [](const CoverEdge& a, const CoverEdge& b) {
    return std::tie(a.from, a.to) < std::tie(b.from, b.to);
  });
  if (!validate(out).ok()) throw PreconditionError("tau^{-1} support is disconnected; the input is decomposable");
  return out;
}

std::optional<ThinBranch> has_thin_sink_branch(const CoverFragment& f) {
  require_valid(f);
  const Graph g = build_graph(f);
  for (const auto& [id, n] : g) {
    if (n.parity != Parity::Sink || n.dim != 1) continue;
    std::vector<long> around;
    for (long x : n.nbr)
      if (x >= 0 && sgn(g.at(x).dim) > 0) around.push_back(x);
    if (around.size() == 1 && g.at(around.front()).dim == 1) return ThinBranch{around.front(), id};
  }
  return std::nullopt;
}

DimVector pushdown_dim(const CoverFragment& f) {
  DimVector d{0, 0};
  for (const auto& v : f.vertices) (v.parity == Parity::Source ? d.d1 : d.d2) += v.dim;
  return d;
}

KronRep pushdown_rep(const CoverFragment& f, const FieldSpec& field) {
  require_valid(f);
  std::vector<const CoverVertex*> sorted;
  for (const auto& v : f.vertices) sorted.push_back(&v);
  std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->id < b->id; });
  std::map<long, std::size_t> offset;
  std::size_t d1 = 0;
  std::size_t d2 = 0;
  for (const auto* v : sorted) {
    std::size_t& total = v->parity == Parity::Source ? d1 : d2;
    offset[v->id] = total;
    total += small_dim(v->dim);
  }
  std::vector<Matrix> maps(f.r, Matrix(d2, d1));
  for (const auto& e : f.edges) {
    const std::size_t rows = small_dim(f.vertex(e.to).dim);
    const std::size_t cols = small_dim(f.vertex(e.from).dim);
    if (rows == 0 || cols == 0) continue;
    if (!e.map)
      throw PreconditionError("edge " + std::to_string(e.from) + " -> " + std::to_string(e.to) + " needs a map");
    Matrix& target = maps[e.color - 1];
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t k = 0; k < cols; ++k) target(offset[e.to] + i, offset[e.from] + k) = field.reduce((*e.map)(i, k));
  }
  return KronRep(f.r, field, d1, d2, std::move(maps));
}

bool all_edges_injective(const CoverFragment& f, const FieldSpec& field) {
  require_valid(f);
  for (const auto& e : f.edges) {
    const BigInt& from = f.vertex(e.from).dim;
    if (sgn(from) == 0) continue;
    if (sgn(f.vertex(e.to).dim) == 0) return false;
    if (!e.map)
      throw PreconditionError("edge " + std::to_string(e.from) + " -> " + std::to_string(e.to) + " needs a map");
    if (BigInt(static_cast<unsigned long>(rank(*e.map, field))) != from) return false;
  }
  return true;
}

bool in_inj(const CoverFragment& f, const FieldSpec& field) {
  if (!all_edges_injective(f, field)) return false;
  std::map<long, std::set<int>> present;
  for (const auto& e : f.edges)
    if (sgn(f.vertex(e.to).dim) > 0) present[e.from].insert(e.color);
  for (const auto& v : f.vertices)
    if (v.parity == Parity::Source && sgn(v.dim) > 0 && present[v.id].size() != static_cast<std::size_t>(f.r))
      return false;
  return true;
}

SupportQuiver support_quiver(const CoverFragment& f) {
  require_valid(f);
  std::vector<long> ids;
  for (const auto& v : f.vertices)
    if (sgn(v.dim) > 0) ids.push_back(v.id);
  std::sort(ids.begin(), ids.end());
  std::map<long, std::size_t> index;
  for (std::size_t k = 0; k < ids.size(); ++k) index[ids[k]] = k;
  std::vector<Quiver::Arrow> arrows;
  for (const auto& e : f.edges)
    if (index.count(e.from) && index.count(e.to)) arrows.emplace_back(index[e.from], index[e.to]);
  IntVector dims;
  for (long id : ids) dims.push_back(f.vertex(id).dim);
  return {Quiver(ids.size(), std::move(arrows)), std::move(dims), std::move(ids)};
}

CoverFragment random_fragment(long r, std::size_t vertex_count, long max_dim, std::uint64_t seed,
                              const std::optional<FieldSpec>& maps_over) {
  if (r < 1 || vertex_count < 1 || max_dim < 1) throw PreconditionError("random fragment needs r, size, max_dim >= 1");
  std::mt19937_64 rng(seed);
  auto draw_dim = [&] { return BigInt(static_cast<long>(rng() % static_cast<std::uint64_t>(max_dim)) + 1); };
  CoverFragment f;
  f.r = r;
  std::vector<std::vector<bool>> used;
  f.vertices.push_back({0, rng() % 2 ? Parity::Sink : Parity::Source, draw_dim()});
  used.emplace_back(r, false);
  while (f.vertices.size() < vertex_count) {
    std::vector<std::size_t> open;
    for (std::size_t k = 0; k < f.vertices.size(); ++k)
      if (std::find(used[k].begin(), used[k].end(), false) != used[k].end()) open.push_back(k);
    if (open.empty()) break;
    const std::size_t at = open[rng() % open.size()];
    std::vector<int> free_colors;
    for (int c = 0; c < r; ++c)
      if (!used[at][c]) free_colors.push_back(c);
    const int c = free_colors[rng() % free_colors.size()];
    const long id = static_cast<long>(f.vertices.size());
    const Parity parity = opposite(f.vertices[at].parity);
    f.vertices.push_back({id, parity, draw_dim()});
    used.emplace_back(r, false);
    used[at][c] = true;
    used.back()[c] = true;
    const long a = f.vertices[at].id;
    if (parity == Parity::Sink)
      f.edges.push_back({a, id, c + 1, std::nullopt});
    else
      f.edges.push_back({id, a, c + 1, std::nullopt});
  }
  if (maps_over) {
    for (auto& e : f.edges) {
      const std::size_t rows = small_dim(f.vertex(e.to).dim);
      const std::size_t cols = small_dim(f.vertex(e.from).dim);
      Matrix m(rows, cols);
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < cols; ++k) {
          if (maps_over->is_prime())
            m(i, k) = static_cast<unsigned long>(rng() % maps_over->characteristic());
          else
            m(i, k) = static_cast<long>(rng() % 19) - 9;
        }
      e.map = std::move(m);
    }
  }
  return f;
}

}  // namespace ekpdim
