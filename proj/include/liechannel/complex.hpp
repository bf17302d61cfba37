#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace liechannel {

enum class Label : std::uint8_t { Plus, Minus };

inline Label opposite(Label l) { return l == Label::Plus ? Label::Minus : Label::Plus; }
inline const char* to_string(Label l) { return l == Label::Plus ? "+" : "-"; }

struct Edge {
  int a = 0;
  int b = 0;
  Label label = Label::Plus;
};

/// Face (i, j, k, l): edges (ij), (kl) carry '-', edges (jk), (li) carry '+'.
struct Face {
  std::array<int, 4> v{};
};

/// Present when the complex was produced by make_grid. Vertex (a, b) has id
/// b * n_plus + a; '+' edges join (a, b)-(a+1, b).
struct GridShape {
  int n_plus = 0;
  int n_minus = 0;
  bool wrap_plus = false;
  bool wrap_minus = false;

  int vertex(int a, int b) const { return b * n_plus + a; }
};

/// Labelled quadrilateral cell complex. Immutable after construction.
class QuadComplex {
 public:
  QuadComplex() = default;
  QuadComplex(int vertex_count, std::vector<Edge> edges, std::vector<Face> faces,
              std::optional<GridShape> grid = std::nullopt);

  int vertex_count() const { return vertex_count_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Face>& faces() const { return faces_; }
  const std::optional<GridShape>& grid() const { return grid_; }

  /// Edge id joining two vertices, or -1.
  int edge_id(int a, int b) const;
  const std::vector<int>& incident_edges(int v) const { return incident_[v]; }
  /// Faces containing the edge (at most two in a valid complex).
  const std::vector<int>& edge_faces(int e) const { return edge_faces_[e]; }
  int degree(int v) const { return static_cast<int>(incident_[v].size()); }
  bool is_interior(int v) const;

  /// Face edges in the order (ij, jk, kl, li); -1 when missing.
  std::array<int, 4> face_edges(int f) const;
  int other_end(int e, int v) const;

 private:
  int vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<Face> faces_;
  std::optional<GridShape> grid_;
  std::vector<std::vector<int>> incident_;
  std::vector<std::vector<int>> edge_faces_;
};

/// Rectangular grid; '+' edges run along rows, '-' edges along columns.
/// Throws GeometryError when n_plus < 2, n_minus < 2, or wrapped with n_plus < 3.
QuadComplex make_grid(int n_plus, int n_minus, bool wrap_plus);
QuadComplex make_grid(const GridShape& shape);

struct CoordinateLine {
  std::vector<int> vertices;
  std::vector<int> edges;
  bool closed = false;
};

/// Maximal strip of faces glued along edges of the opposite label. `rungs[t]`
/// precedes face t; an open ribbon has faces.size() + 1 rungs.
struct Ribbon {
  std::vector<int> faces;
  std::vector<int> rungs;
  bool closed = false;
};

std::vector<CoordinateLine> coordinate_lines(const QuadComplex& c, Label label);
inline std::vector<CoordinateLine> plus_lines(const QuadComplex& c) {
  return coordinate_lines(c, Label::Plus);
}
inline std::vector<CoordinateLine> minus_lines(const QuadComplex& c) {
  return coordinate_lines(c, Label::Minus);
}

std::vector<Ribbon> coordinate_ribbons(const QuadComplex& c, Label label);
inline std::vector<Ribbon> plus_ribbons(const QuadComplex& c) {
  return coordinate_ribbons(c, Label::Plus);
}
inline std::vector<Ribbon> minus_ribbons(const QuadComplex& c) {
  return coordinate_ribbons(c, Label::Minus);
}

struct Diagnostic {
  std::string kind;
  std::vector<int> cells;
  std::string message;
};

/// Invariant violations with offending cell ids; empty for a valid complex.
std::vector<Diagnostic> validate(const QuadComplex& c);

/// Same cells with '+' and '-' exchanged; faces are re-rooted so the label
/// convention still holds.
QuadComplex relabelled(const QuadComplex& c);

}  // namespace liechannel
