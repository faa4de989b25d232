#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ekr/bitset.hpp"
#include "ekr/family.hpp"

namespace ekr {

/// Candidate sets of a profile list, joined when they intersect. Intersecting
/// subfamilies are exactly the cliques of this graph.
class CompatibilityGraph {
 public:
  static constexpr std::size_t kDefaultVertexCap = 20000;

  CompatibilityGraph(const Universe& u, const ProfileList& pl,
                     std::size_t vertex_cap = kDefaultVertexCap);

  const Universe& universe() const { return universe_; }
  const ProfileList& profiles() const { return profiles_; }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const;
  PartSet vertex(std::size_t v) const { return vertices_[v]; }
  std::span<const PartSet> vertices() const { return vertices_; }
  const Bitset& neighbors(std::size_t v) const { return adjacency_[v]; }
  bool adjacent(std::size_t a, std::size_t b) const { return adjacency_[a].test(b); }

 private:
  Universe universe_;
  ProfileList profiles_;
  std::vector<PartSet> vertices_;
  std::vector<Bitset> adjacency_;
};

}  // namespace ekr
