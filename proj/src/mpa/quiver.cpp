#include "mpa/quiver.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace mpa {

int Quiver::vertex_index(VertexId v) const {
  for (size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == v) return static_cast<int>(i);
  throw QuiverError("unknown vertex " + std::to_string(v));
}

bool Quiver::has_vertex(VertexId v) const {
  return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
}

void Quiver::validate() const {
  std::set<VertexId> vs(vertices.begin(), vertices.end());
  if (vs.size() != vertices.size()) throw QuiverError("duplicate vertex ids");
  std::set<std::string> ids;
  for (const Arrow &a : arrows) {
    if (!ids.insert(a.id).second) throw QuiverError("duplicate arrow id '" + a.id + "'");
    if (!vs.count(a.tail) || !vs.count(a.head))
      throw QuiverError("arrow '" + a.id + "' references a missing vertex");
  }
}

bool Quiver::connected() const {
  if (vertices.empty()) return true;
  std::set<VertexId> seen{vertices[0]};
  std::queue<VertexId> work;
  work.push(vertices[0]);
  while (!work.empty()) {
    VertexId v = work.front();
    work.pop();
    for (const Arrow &a : arrows) {
      for (VertexId u : {a.tail, a.head}) {
        VertexId other = (u == a.tail) ? a.head : a.tail;
        if (u == v && !seen.count(other)) {
          seen.insert(other);
          work.push(other);
        }
      }
    }
  }
  return seen.size() == vertices.size();
}

std::vector<int> DoubledQuiver::out_arrows_ordered(VertexId v) const {
  std::vector<int> out;
  for (int d : order)
    if (tail(d) == v) out.push_back(d);
  return out;
}

DoubledQuiver build_doubled(const Quiver &q, const std::optional<std::vector<int>> &arrow_order) {
  q.validate();
  DoubledQuiver dq;
  dq.base = q;
  dq.m = static_cast<int>(q.arrows.size());
  if (arrow_order) {
    std::vector<int> seen(static_cast<size_t>(2 * dq.m), 0);
    if (static_cast<int>(arrow_order->size()) != 2 * dq.m)
      throw InvalidOrder("arrow order has wrong length");
    for (int d : *arrow_order) {
      if (d < 0 || d >= 2 * dq.m || seen[static_cast<size_t>(d)]++)
        throw InvalidOrder("arrow order is not a permutation of the doubled arrows");
    }
    dq.order = *arrow_order;
  } else {
    // Default: originals then stars, each by id. On a cycle quiver this is the
    // ordering a_i < a_{i+1} < a_j* < a_{j+1}*.
    dq.order.resize(static_cast<size_t>(2 * dq.m));
    for (int d = 0; d < 2 * dq.m; ++d) dq.order[static_cast<size_t>(d)] = d;
  }
  dq.rank.assign(static_cast<size_t>(2 * dq.m), 0);
  for (int k = 0; k < 2 * dq.m; ++k) dq.rank[static_cast<size_t>(dq.order[static_cast<size_t>(k)])] = k;
  return dq;
}

bool Forest::contains(int d) const {
  return std::find(arrows.begin(), arrows.end(), d) != arrows.end();
}

void Forest::validate(const DoubledQuiver &dq, const std::vector<VertexId> &white) const {
  std::set<VertexId> whites(white.begin(), white.end());
  size_t n = dq.base.vertices.size();
  if (parent_arrow.size() != n || depth.size() != n)
    throw QuiverError("forest: bad table sizes");
  size_t black = 0;
  for (size_t i = 0; i < n; ++i) {
    VertexId v = dq.base.vertices[i];
    if (whites.count(v)) {
      if (parent_arrow[i] != -1) throw QuiverError("forest: white vertex has a parent arrow");
    } else {
      ++black;
      int d = parent_arrow[i];
      if (d < 0) throw QuiverError("forest: black vertex has no parent arrow");
      if (dq.tail(d) != v) throw QuiverError("forest: parent arrow does not leave its vertex");
      int hidx = dq.base.vertex_index(dq.head(d));
      if (depth[static_cast<size_t>(hidx)] + 1 != depth[i])
        throw QuiverError("forest: depth table inconsistent");
    }
  }
  if (arrows.size() != black) throw QuiverError("forest: arrow count != black vertex count");
}

Forest spanning_forest(const DoubledQuiver &dq, const std::vector<VertexId> &white,
                       const std::optional<std::vector<int>> &allowed_base) {
  if (white.empty()) throw EmptyWhite("spanning_forest: white set is empty");
  const Quiver &q = dq.base;
  std::set<int> allowed;
  if (allowed_base) allowed.insert(allowed_base->begin(), allowed_base->end());
  size_t n = q.vertices.size();
  Forest f;
  f.parent_arrow.assign(n, -1);
  f.depth.assign(n, -1);

  std::vector<VertexId> roots = white;
  std::sort(roots.begin(), roots.end());
  std::queue<VertexId> work;
  for (VertexId w : roots) {
    size_t i = static_cast<size_t>(q.vertex_index(w));
    if (f.depth[i] == -1) {
      f.depth[i] = 0;
      f.roots.push_back(w);
      work.push(w);
    }
  }
  while (!work.empty()) {
    VertexId v = work.front();
    work.pop();
    size_t vi = static_cast<size_t>(q.vertex_index(v));
    // Scan doubled arrows by id so ties break on the smallest id; the chosen
    // parent arrow points from the newly reached vertex toward v.
    for (int d = 0; d < dq.arrows(); ++d) {
      if (dq.head(d) != v) continue;
      if (allowed_base && !allowed.count(dq.base_arrow(d))) continue;
      VertexId u = dq.tail(d);
      size_t ui = static_cast<size_t>(q.vertex_index(u));
      if (f.depth[ui] != -1) continue;
      f.depth[ui] = f.depth[vi] + 1;
      f.parent_arrow[ui] = d;
      f.arrows.push_back(d);
      work.push(u);
    }
  }
  for (size_t i = 0; i < n; ++i)
    if (f.depth[i] == -1)
      throw Disconnected("spanning_forest: vertex " + std::to_string(q.vertices[i]) +
                         " unreachable from the white set");
  std::sort(f.arrows.begin(), f.arrows.end());
  f.validate(dq, white);
  return f;
}

CycleDecomposition split_cycle(const Quiver &q) {
  q.validate();
  if (!q.connected()) throw Disconnected("split_cycle: quiver is disconnected");

  // Loops are cycles of length 1; pick the one at the smallest vertex.
  int loop = -1;
  for (size_t a = 0; a < q.arrows.size(); ++a) {
    if (q.arrows[a].tail == q.arrows[a].head) {
      if (loop == -1 || q.arrows[a].tail < q.arrows[static_cast<size_t>(loop)].tail)
        loop = static_cast<int>(a);
    }
  }
  CycleDecomposition dec;
  if (loop != -1) {
    dec.cycle_vertices = {q.arrows[static_cast<size_t>(loop)].tail};
    dec.cycle_arrows = {loop};
    for (size_t a = 0; a < q.arrows.size(); ++a)
      if (static_cast<int>(a) != loop) dec.complement_arrows.push_back(static_cast<int>(a));
    return dec;
  }

  // DFS over the undirected graph from the smallest vertex, edges in id
  // order; the first non-parallel back edge closes the reported cycle.
  std::vector<VertexId> verts = q.vertices;
  std::sort(verts.begin(), verts.end());
  size_t n = q.vertices.size();
  for (VertexId start : verts) {
    std::vector<int> parent_edge(n, -1);
    std::vector<VertexId> parent(n, -1);
    std::vector<char> visited(n, 0);
    struct Item {
      VertexId v;
      int via_edge;
      VertexId from;
    };
    std::vector<Item> stack{{start, -1, -1}};
    while (!stack.empty()) {
      Item it = stack.back();
      stack.pop_back();
      size_t vi = static_cast<size_t>(q.vertex_index(it.v));
      if (visited[vi]) continue;
      visited[vi] = 1;
      parent_edge[vi] = it.via_edge;
      parent[vi] = it.from;
      // Push in reverse id order so smaller arrow ids are explored first.
      for (int a = static_cast<int>(q.arrows.size()) - 1; a >= 0; --a) {
        const Arrow &ar = q.arrows[static_cast<size_t>(a)];
        VertexId other;
        if (ar.tail == it.v)
          other = ar.head;
        else if (ar.head == it.v)
          other = ar.tail;
        else
          continue;
        if (a == it.via_edge) continue;
        size_t oi = static_cast<size_t>(q.vertex_index(other));
        if (visited[oi]) {
          // Found a cycle: walk it.v back up to `other`.
          std::vector<VertexId> path;   // other ... it.v
          std::vector<int> edges;       // edges along the path
          VertexId w = it.v;
          path.push_back(w);
          while (w != other) {
            size_t wi = static_cast<size_t>(q.vertex_index(w));
            edges.push_back(parent_edge[wi]);
            w = parent[wi];
            if (w == -1) break;
            path.push_back(w);
          }
          if (w != other) continue; // closes through the root some other way
          std::reverse(path.begin(), path.end()); // other -> ... -> it.v
          std::reverse(edges.begin(), edges.end());
          edges.push_back(a); // closing edge it.v -> other
          // Rotate so the smallest vertex comes first.
          size_t best = 0;
          for (size_t k = 1; k < path.size(); ++k)
            if (path[k] < path[best]) best = k;
          std::vector<VertexId> cyc;
          std::vector<int> cedges;
          for (size_t k = 0; k < path.size(); ++k) {
            cyc.push_back(path[(best + k) % path.size()]);
            cedges.push_back(edges[(best + k) % edges.size()]);
          }
          dec.cycle_vertices = cyc;
          dec.cycle_arrows = cedges;
          std::set<int> on_cycle(cedges.begin(), cedges.end());
          for (size_t e = 0; e < q.arrows.size(); ++e)
            if (!on_cycle.count(static_cast<int>(e)))
              dec.complement_arrows.push_back(static_cast<int>(e));
          return dec;
        }
        stack.push_back({other, a, it.v});
      }
    }
    break; // connected: one DFS suffices
  }
  throw NoCycle("split_cycle: quiver is a tree");
}

Quiver reorient(const Quiver &q, const std::vector<bool> &flip) {
  Quiver out = q;
  for (size_t a = 0; a < out.arrows.size(); ++a)
    if (a < flip.size() && flip[a]) std::swap(out.arrows[a].tail, out.arrows[a].head);
  return out;
}

Quiver cycle_quiver(int n) {
  if (n < 1) throw QuiverError("cycle_quiver: need n >= 1");
  Quiver q;
  for (int v = 0; v < n; ++v) q.vertices.push_back(v);
  for (int v = 0; v < n; ++v) q.arrows.push_back({"a" + std::to_string(v), v, (v + 1) % n});
  return q;
}

} // namespace mpa
