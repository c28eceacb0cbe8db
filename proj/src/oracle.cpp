#include "tmotif/oracle.hpp"

#include <string>

namespace tmotif {

OracleGuardError::OracleGuardError(std::size_t edges, std::size_t guard)
    : std::runtime_error("brute-force oracle refuses " + std::to_string(edges) + " edges (guard " +
                         std::to_string(guard) + ")"),
      edges_(edges),
      guard_(guard) {}

OracleResult brute_force_count(const TemporalGraph& g, Seconds delta, std::size_t guard) {
  if (delta < 0) throw std::invalid_argument("delta must be non-negative");
  const std::size_t m = g.num_edges();
  if (m > guard) throw OracleGuardError(m, guard);

  OracleResult r;
  r.global.delta = delta;
  r.local.delta = delta;
  r.local.per_node.assign(g.num_nodes(), LocalMotifVector{});
  auto edge = [&](std::size_t i) { return DirectedEdge{g.edge_src(i), g.edge_dst(i)}; };

  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (g.edge_time(j) - g.edge_time(i) > delta) break;
      for (std::size_t k = j + 1; k < m; ++k) {
        if (g.edge_time(k) - g.edge_time(i) > delta) break;
        ++r.census.within_delta;
        const auto e1 = edge(i);
        const auto cls = classify(e1, edge(j), edge(k));
        if (!cls) {
          ++r.census.discarded;
          continue;
        }
        const std::size_t slot = cls->cell.slot();
        // Nodes by role: X, Y, then Z if present.
        NodeId nodes[3] = {e1.src, e1.dst, kInvalidNode};
        for (std::size_t e : {j, k}) {
          for (NodeId n : {g.edge_src(e), g.edge_dst(e)}) {
            if (n != nodes[0] && n != nodes[1]) nodes[2] = n;
          }
        }
        ++r.global.counts[slot];
        switch (cls->shape) {
          case MotifShape::TwoNode:
            ++r.census.two_nodes;
            ++r.local.per_node[e1.src][slot];
            ++r.local.per_node[e1.dst][reversed_two_node_slot(cls->cell)];
            break;
          case MotifShape::Star:
            ++r.census.three_nodes;
            ++r.local.per_node[nodes[static_cast<int>(cls->center)]][slot];
            break;
          case MotifShape::Triangle: {
            ++r.census.three_nodes;
            for (NodeId n : nodes) ++r.local.per_node[n][slot];
            break;
          }
        }
      }
    }
  }
  return r;
}

}  // namespace tmotif
