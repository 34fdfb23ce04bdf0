#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mpa {

using VertexId = int;

struct QuiverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct Disconnected : QuiverError {
  using QuiverError::QuiverError;
};
struct EmptyWhite : QuiverError {
  using QuiverError::QuiverError;
};
struct NoCycle : QuiverError {
  using QuiverError::QuiverError;
};
struct InvalidOrder : QuiverError {
  using QuiverError::QuiverError;
};

struct Arrow {
  std::string id;
  VertexId tail = 0;
  VertexId head = 0;
};

struct Quiver {
  std::vector<VertexId> vertices;
  std::vector<Arrow> arrows;

  int vertex_index(VertexId v) const;
  bool has_vertex(VertexId v) const;
  void validate() const; // unique ids, arrows reference existing vertices
  bool connected() const; // as an undirected graph
};

// The double Q-bar. Doubled arrows are indexed 0..2m-1: d < m is the base
// arrow d (epsilon +1), d >= m is its reverse (epsilon -1). `order` is the
// total ordering used for the products rho, l_a, r_a.
struct DoubledQuiver {
  Quiver base;
  int m = 0;
  std::vector<int> order;    // permutation of 0..2m-1, ascending
  std::vector<int> rank;     // rank[d] = position of d in `order`

  int arrows() const { return 2 * m; }
  int star(int d) const { return d < m ? d + m : d - m; }
  int epsilon(int d) const { return d < m ? +1 : -1; }
  int base_arrow(int d) const { return d < m ? d : d - m; }
  VertexId tail(int d) const {
    const Arrow &a = base.arrows[static_cast<size_t>(base_arrow(d))];
    return d < m ? a.tail : a.head;
  }
  VertexId head(int d) const {
    const Arrow &a = base.arrows[static_cast<size_t>(base_arrow(d))];
    return d < m ? a.head : a.tail;
  }
  std::string name(int d) const {
    const Arrow &a = base.arrows[static_cast<size_t>(base_arrow(d))];
    return d < m ? a.id : a.id + "*";
  }
  // Doubled arrows with the given tail, in `order`-ascending order.
  std::vector<int> out_arrows_ordered(VertexId v) const;
};

// Spanning forest rooted in the white set; arrows point toward the roots.
struct Forest {
  std::vector<int> arrows;              // doubled-arrow ids, tail = child vertex
  std::vector<VertexId> roots;          // one white root per component
  std::vector<int> parent_arrow;        // per vertex index: its forest arrow, -1 for roots
  std::vector<int> depth;               // per vertex index: #forest arrows to the root

  bool contains(int d) const;
  void validate(const DoubledQuiver &dq, const std::vector<VertexId> &white) const;
};

struct CycleDecomposition {
  std::vector<VertexId> cycle_vertices;  // in cyclic order, smallest id first
  std::vector<int> cycle_arrows;         // doubled ids, cycle_arrows[k]: v_k -> v_{k+1 mod n}
  std::vector<int> complement_arrows;    // base-arrow ids not on the cycle
};

DoubledQuiver build_doubled(const Quiver &q,
                            const std::optional<std::vector<int>> &arrow_order = std::nullopt);

// `allowed_base`, when given, restricts the forest to those base arrows.
Forest spanning_forest(const DoubledQuiver &dq, const std::vector<VertexId> &white,
                       const std::optional<std::vector<int>> &allowed_base = std::nullopt);

CycleDecomposition split_cycle(const Quiver &q);

// Flip the base arrows listed in `flip` (tail/head swapped, ids kept), so e.g.
// forest arrows or cycle arrows land in Q_1 as the propositions assume.
Quiver reorient(const Quiver &q, const std::vector<bool> &flip);

// The cycle quiver A~_{n-1}: vertices 0..n-1, arrow a<i>: i -> i+1 (mod n).
Quiver cycle_quiver(int n);

} // namespace mpa
