#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace elastmix {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct Rectangle {
  double x0 = 0.0;
  double x1 = 1.0;
  double y0 = 0.0;
  double y1 = 1.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
};

enum class EdgeTag { Interior, Dirichlet, Neumann, Untagged };

const char* to_string(EdgeTag tag);

struct Edge {
  std::array<int, 2> vertices{};
  /// Incident elements. For interior edges `elements[0] < elements[1]`; for
  /// boundary edges `elements[1] == -1`.
  std::array<int, 2> elements{-1, -1};
  double length = 0.0;
  /// Unit normal pointing from elements[0] into elements[1], or outward on
  /// the boundary.
  Point normal;
  EdgeTag tag = EdgeTag::Untagged;

  bool on_boundary() const { return elements[1] < 0; }
};

/// Local side numbering of a rectangle: bottom, right, top, left.
enum Side : int { kBottom = 0, kRight = 1, kTop = 2, kLeft = 3 };

struct Element {
  /// Counter-clockwise from the lower-left corner.
  std::array<int, 4> vertices{};
  /// Indexed by Side.
  std::array<int, 4> edges{};
  double x0 = 0.0;
  double y0 = 0.0;
  double hx = 0.0;
  double hy = 0.0;

  double diameter() const;
  double area() const { return hx * hy; }
  Point center() const { return {x0 + 0.5 * hx, y0 + 0.5 * hy}; }
  /// Affine map from the reference square [-1,1]^2.
  Point map(double xi, double eta) const {
    return {x0 + 0.5 * hx * (xi + 1.0), y0 + 0.5 * hy * (eta + 1.0)};
  }
};

/// Tensor-product rectangular mesh. Immutable once built; `tag_boundaries`
/// returns a tagged copy.
class Mesh {
 public:
  /// Builds a grid from explicit breakpoints (strictly increasing, at least
  /// two per direction). Allows graded spacing.
  Mesh(std::vector<double> xs, std::vector<double> ys);

  int nx() const { return static_cast<int>(xs_.size()) - 1; }
  int ny() const { return static_cast<int>(ys_.size()) - 1; }
  Rectangle domain() const { return {xs_.front(), xs_.back(), ys_.front(), ys_.back()}; }

  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& ys() const { return ys_; }
  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Element>& elements() const { return elements_; }
  const std::vector<Edge>& edges() const { return edges_; }

  int num_elements() const { return static_cast<int>(elements_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_vertices() const { return static_cast<int>(vertices_.size()); }

  const Element& element(int id) const;
  const Edge& edge(int id) const { return edges_.at(id); }
  Point edge_midpoint(int id) const;

  /// Outward unit normal of side `side` of any element.
  static Point outward_normal(int side);

  bool fully_tagged() const;
  int count_edges(EdgeTag tag) const;

  std::string to_json() const;

 private:
  friend Mesh tag_boundaries(const Mesh&, const std::function<EdgeTag(Point, Point)>&);

  std::vector<double> xs_;
  std::vector<double> ys_;
  std::vector<Point> vertices_;
  std::vector<Element> elements_;
  std::vector<Edge> edges_;
};

/// Uniform nx-by-ny grid of `domain`.
Mesh build_rect_mesh(const Rectangle& domain, int nx, int ny);

/// Boundary classifier: receives the midpoint and outward normal of a boundary
/// edge and returns Dirichlet or Neumann. Returning anything else leaves the
/// edge untagged, which is an error.
using BoundaryPredicate = std::function<EdgeTag(Point midpoint, Point normal)>;

Mesh tag_boundaries(const Mesh& mesh, const BoundaryPredicate& spec);

BoundaryPredicate all_dirichlet();

}  // namespace elastmix
