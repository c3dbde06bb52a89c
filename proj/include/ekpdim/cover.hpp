#pragma once

// Finite pieces of the universal cover C_r: colored bipartite trees with a
// dimension at every vertex and optional edge matrices, the tau^{-1}
// dimension shift, thin sink branches, and the push-down to Gamma_r.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ekpdim/exactnum.hpp"
#include "ekpdim/kronecker.hpp"
#include "ekpdim/linrep.hpp"
#include "ekpdim/quiver.hpp"

namespace ekpdim {

enum class Parity { Source, Sink };

struct CoverVertex {
  long id;
  Parity parity;
  BigInt dim;
};

struct CoverEdge {
  long from;  ///< source id
  long to;    ///< sink id
  int color;  ///< 1..r
  std::optional<Matrix> map;  ///< dim(to) x dim(from)
};

struct CoverFragment {
  long r = 0;
  std::vector<CoverVertex> vertices;
  std::vector<CoverEdge> edges;

  /// Parses and validates; FormatError carries the validation reason.
  static CoverFragment from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  const CoverVertex& vertex(long id) const;
};

enum class FragmentIssue {
  None,
  BadR,
  DuplicateId,
  NegativeDim,
  UnknownEndpoint,
  WrongOrientation,
  ColorOutOfRange,
  DuplicateColor,
  Cycle,
  Disconnected,
  MapShape,
};

struct FragmentCheck {
  FragmentIssue issue = FragmentIssue::None;
  std::string reason;
  bool ok() const { return issue == FragmentIssue::None; }
};

FragmentCheck validate(const CoverFragment& f);

/// Dimension function of tau^{-1} M: the support grows by one ring of
/// neighbors, new source dimensions come from the old sink dimensions,
/// new sink dimensions from the new source dimensions, and zero vertices
/// are dropped. Fresh vertices get ids max_id + 1, ... in the order they
/// are reached (vertices by id, colors ascending). Throws PreconditionError
/// when the support is empty or disconnected, or a dimension turns negative.
CoverFragment tau_inv_dim(const CoverFragment& f);

struct ThinBranch {
  long source;
  long sink;
};

/// First sink (by id) of dimension 1 that is a leaf of the support and whose
/// one support neighbor is a source of dimension 1.
std::optional<ThinBranch> has_thin_sink_branch(const CoverFragment& f);

/// (sum of source dimensions, sum of sink dimensions).
DimVector pushdown_dim(const CoverFragment& f);

/// Block matrices in sorted-id order; the color-i edge maps fill M(gamma_i).
/// Throws PreconditionError when an edge between nonzero vertices lacks a map.
KronRep pushdown_rep(const CoverFragment& f, const FieldSpec& field);

/// Every present edge map has full column rank.
bool all_edges_injective(const CoverFragment& f, const FieldSpec& field);

/// Every structural map of the push-down is injective: each source of
/// positive dimension has, for every color, an edge to a sink with an
/// injective map. A missing color contributes a zero map.
bool in_inj(const CoverFragment& f, const FieldSpec& field);

struct SupportQuiver {
  Quiver quiver;
  IntVector dims;
  std::vector<long> ids;  ///< vertex k of the quiver is fragment vertex ids[k]
};

/// Full subquiver on the vertices of positive dimension, arrows source -> sink.
SupportQuiver support_quiver(const CoverFragment& f);

/// A random tree with `vertex_count` vertices and dimensions in
/// [1, max_dim]; with a field, random edge maps too.
CoverFragment random_fragment(long r, std::size_t vertex_count, long max_dim, std::uint64_t seed,
                              const std::optional<FieldSpec>& maps_over = std::nullopt);

}  // namespace ekpdim
