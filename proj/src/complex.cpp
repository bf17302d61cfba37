#include "liechannel/complex.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

#include "liechannel/tolerance.hpp"

namespace liechannel {

namespace {

std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

}  // namespace

QuadComplex::QuadComplex(int vertex_count, std::vector<Edge> edges, std::vector<Face> faces,
                         std::optional<GridShape> grid)
    : vertex_count_(vertex_count),
      edges_(std::move(edges)),
      faces_(std::move(faces)),
      grid_(grid),
      incident_(static_cast<std::size_t>(vertex_count)),
      edge_faces_(edges_.size()) {
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto& ed = edges_[e];
    if (ed.a < 0 || ed.b < 0 || ed.a >= vertex_count || ed.b >= vertex_count || ed.a == ed.b)
      throw GeometryError("edge " + std::to_string(e) + " has invalid endpoints");
    incident_[ed.a].push_back(static_cast<int>(e));
    incident_[ed.b].push_back(static_cast<int>(e));
  }
  for (std::size_t f = 0; f < faces_.size(); ++f) {
    for (int v : faces_[f].v)
      if (v < 0 || v >= vertex_count)
        throw GeometryError("face " + std::to_string(f) + " has invalid vertex");
    for (int e : face_edges(static_cast<int>(f)))
      if (e >= 0) edge_faces_[e].push_back(static_cast<int>(f));
  }
}

int QuadComplex::edge_id(int a, int b) const {
  if (a < 0 || a >= vertex_count_) return -1;
  for (int e : incident_[a]) {
    const auto& ed = edges_[e];
    if ((ed.a == a && ed.b == b) || (ed.a == b && ed.b == a)) return e;
  }
  return -1;
}

bool QuadComplex::is_interior(int v) const {
  int with_faces = 0;
  for (int e : incident_[v]) {
    const auto n = edge_faces_[e].size();
    if (n == 1) return false;
    if (n == 2) ++with_faces;
  }
  return with_faces > 0;
}

std::array<int, 4> QuadComplex::face_edges(int f) const {
  const auto& v = faces_[f].v;
  return {edge_id(v[0], v[1]), edge_id(v[1], v[2]), edge_id(v[2], v[3]), edge_id(v[3], v[0])};
}

int QuadComplex::other_end(int e, int v) const {
  return edges_[e].a == v ? edges_[e].b : edges_[e].a;
}

QuadComplex make_grid(int n_plus, int n_minus, bool wrap_plus) {
  return make_grid(GridShape{n_plus, n_minus, wrap_plus, false});
}

QuadComplex make_grid(const GridShape& s) {
  if (s.n_plus < 2 || s.n_minus < 2)
    throw GeometryError("make_grid: n_plus and n_minus must be at least 2");
  if ((s.wrap_plus && s.n_plus < 3) || (s.wrap_minus && s.n_minus < 3))
    throw GeometryError("make_grid: a wrapped direction needs at least 3 vertices");
  std::vector<Edge> edges;
  std::vector<Face> faces;
  const int pa = s.wrap_plus ? s.n_plus : s.n_plus - 1;
  const int pb = s.wrap_minus ? s.n_minus : s.n_minus - 1;
  for (int b = 0; b < s.n_minus; ++b)
    for (int a = 0; a < pa; ++a)
      edges.push_back({s.vertex(a, b), s.vertex((a + 1) % s.n_plus, b), Label::Plus});
  for (int b = 0; b < pb; ++b)
    for (int a = 0; a < s.n_plus; ++a)
      edges.push_back({s.vertex(a, b), s.vertex(a, (b + 1) % s.n_minus), Label::Minus});
  for (int b = 0; b < pb; ++b)
    for (int a = 0; a < pa; ++a) {
      const int a1 = (a + 1) % s.n_plus;
      const int b1 = (b + 1) % s.n_minus;
      faces.push_back({{s.vertex(a, b), s.vertex(a, b1), s.vertex(a1, b1), s.vertex(a1, b)}});
    }
  return QuadComplex(s.n_plus * s.n_minus, std::move(edges), std::move(faces), s);
}

std::vector<CoordinateLine> coordinate_lines(const QuadComplex& c, Label label) {
  const int n = c.vertex_count();
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    for (int e : c.incident_edges(v))
      if (c.edges()[e].label == label) adj[v].push_back(e);
    if (adj[v].size() > 2)
      throw GeometryError("vertex " + std::to_string(v) + " has more than two '" +
                          to_string(label) + "' edges; coordinate lines are ambiguous");
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<CoordinateLine> out;
  for (int v0 = 0; v0 < n; ++v0) {
    if (seen[v0] || adj[v0].empty()) continue;
    // collect the component, then pick a start vertex
    std::vector<int> comp;
    std::queue<int> q;
    q.push(v0);
    seen[v0] = true;
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      comp.push_back(v);
      for (int e : adj[v]) {
        const int w = c.other_end(e, v);
        if (!seen[w]) {
          seen[w] = true;
          q.push(w);
        }
      }
    }
    int start = -1;
    for (int v : comp)
      if (adj[v].size() == 1 && (start < 0 || v < start)) start = v;
    CoordinateLine line;
    line.closed = start < 0;
    if (line.closed) start = *std::min_element(comp.begin(), comp.end());
    int prev_edge = -1;
    if (line.closed) {
      // walk towards the smaller neighbour
      const int e0 = adj[start][0], e1 = adj[start][1];
      prev_edge = c.other_end(e0, start) < c.other_end(e1, start) ? e1 : e0;
    }
    int v = start;
    line.vertices.push_back(v);
    while (true) {
      int next_edge = -1;
      for (int e : adj[v])
        if (e != prev_edge) next_edge = e;
      if (next_edge < 0) break;
      const int w = c.other_end(next_edge, v);
      line.edges.push_back(next_edge);
      if (w == start) break;
      line.vertices.push_back(w);
      prev_edge = next_edge;
      v = w;
    }
    out.push_back(std::move(line));
  }
  return out;
}

std::vector<Ribbon> coordinate_ribbons(const QuadComplex& c, Label label) {
  const Label glue = opposite(label);
  const int nf = static_cast<int>(c.faces().size());
  // rung edges of each face: for a '+'-ribbon these are (ij) and (kl)
  std::vector<std::array<int, 2>> rung(static_cast<std::size_t>(nf));
  for (int f = 0; f < nf; ++f) {
    const auto fe = c.face_edges(f);
    rung[f] = glue == Label::Minus ? std::array<int, 2>{fe[0], fe[2]}
                                   : std::array<int, 2>{fe[3], fe[1]};
  }
  auto across = [&](int f, int e) {
    if (e < 0) return -1;
    for (int g : c.edge_faces(e))
      if (g != f) return g;
    return -1;
  };
  std::vector<bool> seen(static_cast<std::size_t>(nf), false);
  std::vector<Ribbon> out;
  for (int f0 = 0; f0 < nf; ++f0) {
    if (seen[f0]) continue;
    std::vector<int> comp;
    std::queue<int> q;
    q.push(f0);
    seen[f0] = true;
    while (!q.empty()) {
      const int f = q.front();
      q.pop();
      comp.push_back(f);
      for (int e : rung[f]) {
        const int g = across(f, e);
        if (g >= 0 && !seen[g]) {
          seen[g] = true;
          q.push(g);
        }
      }
    }
    Ribbon r;
    int start = -1;
    int first_rung = -1;
    for (int f : comp) {
      for (int k = 0; k < 2; ++k)
        if (across(f, rung[f][k]) < 0 && (start < 0 || f < start)) {
          start = f;
          first_rung = rung[f][k];
          break;
        }
    }
    r.closed = start < 0;
    if (r.closed) {
      start = *std::min_element(comp.begin(), comp.end());
      const int g0 = across(start, rung[start][0]);
      const int g1 = across(start, rung[start][1]);
      first_rung = g0 < g1 ? rung[start][1] : rung[start][0];
    } else if (comp.size() == 1) {
      first_rung = rung[start][0];
    }
    int f = start;
    int entry = first_rung;
    r.rungs.push_back(entry);
    while (true) {
      r.faces.push_back(f);
      const int exit = rung[f][0] == entry ? rung[f][1] : rung[f][0];
      const int g = across(f, exit);
      if (r.closed && g == start) break;
      r.rungs.push_back(exit);
      if (g < 0) break;
      entry = exit;
      f = g;
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Diagnostic> validate(const QuadComplex& c) {
  std::vector<Diagnostic> out;
  std::map<std::uint64_t, int> seen;
  for (std::size_t e = 0; e < c.edges().size(); ++e) {
    const auto key = edge_key(c.edges()[e].a, c.edges()[e].b);
    if (auto it = seen.find(key); it != seen.end())
      out.push_back({"duplicate-edge", {it->second, static_cast<int>(e)}, "edge listed twice"});
    else
      seen[key] = static_cast<int>(e);
    const auto nf = c.edge_faces(static_cast<int>(e)).size();
    if (nf > 2)
      out.push_back({"edge-overused", {static_cast<int>(e)}, "edge belongs to more than two faces"});
    if (nf == 0 && !c.faces().empty())
      out.push_back({"dangling-edge", {static_cast<int>(e)}, "edge belongs to no face"});
  }
  static constexpr std::array<Label, 4> expected{Label::Minus, Label::Plus, Label::Minus,
                                                 Label::Plus};
  for (std::size_t f = 0; f < c.faces().size(); ++f) {
    const auto fe = c.face_edges(static_cast<int>(f));
    for (int k = 0; k < 4; ++k) {
      if (fe[k] < 0) {
        out.push_back({"missing-edge", {static_cast<int>(f)}, "face side is not an edge"});
        break;
      }
      if (c.edges()[fe[k]].label != expected[k]) {
        std::ostringstream msg;
        msg << "face side " << k << " carries '" << to_string(c.edges()[fe[k]].label)
            << "'; opposite sides must share a label and adjacent sides differ";
        out.push_back({"face-labelling", {static_cast<int>(f), fe[k]}, msg.str()});
        break;
      }
    }
  }
  for (int v = 0; v < c.vertex_count(); ++v)
    if (c.is_interior(v) && c.degree(v) % 2 != 0)
      out.push_back({"odd-degree", {v}, "interior vertex of odd degree"});
  // connectivity over edges
  if (c.vertex_count() > 0) {
    std::vector<bool> reach(static_cast<std::size_t>(c.vertex_count()), false);
    std::queue<int> q;
    q.push(0);
    reach[0] = true;
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int e : c.incident_edges(v)) {
        const int w = c.other_end(e, v);
        if (!reach[w]) {
          reach[w] = true;
          q.push(w);
        }
      }
    }
    std::vector<int> cut;
    for (int v = 0; v < c.vertex_count(); ++v)
      if (!reach[v]) cut.push_back(v);
    if (!cut.empty()) out.push_back({"disconnected", cut, "complex is not connected"});
  }
  return out;
}

QuadComplex relabelled(const QuadComplex& c) {
  std::vector<Edge> edges = c.edges();
  for (auto& e : edges) e.label = opposite(e.label);
  std::vector<Face> faces = c.faces();
  // (i,j,k,l) -> (j,k,l,i) keeps the convention after swapping labels
  for (auto& f : faces) f.v = {f.v[1], f.v[2], f.v[3], f.v[0]};
  return QuadComplex(c.vertex_count(), std::move(edges), std::move(faces));
}

}  // namespace liechannel
