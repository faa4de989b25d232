#include "ekr/graph.hpp"

#include "ekr/bounds.hpp"

namespace ekr {

CompatibilityGraph::CompatibilityGraph(const Universe& u, const ProfileList& pl,
                                       std::size_t vertex_cap)
    : universe_(u), profiles_(pl) {
  validate_profiles(u, pl);
  BigInt count = 0;
  for (const Profile& p : pl) count += binomial(u.n1(), p.k) * binomial(u.n2(), p.l);
  if (count > vertex_cap) {
    throw Error("compatibility graph would have " + count.str() + " vertices, above the cap of " +
                std::to_string(vertex_cap));
  }
  vertices_ = enumerate_candidates(u, pl);
  const std::size_t n = vertices_.size();
  adjacency_.assign(n, Bitset(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (vertices_[a].intersects(vertices_[b])) {
        adjacency_[a].set(b);
        adjacency_[b].set(a);
      }
    }
  }
}

std::size_t CompatibilityGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& row : adjacency_) twice += row.count();
  return twice / 2;
}

}  // namespace ekr
