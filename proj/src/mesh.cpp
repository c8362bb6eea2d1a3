#include "elastmix/mesh.hpp"

#include <cmath>

#include "json.hpp"

#include "elastmix/error.hpp"

namespace elastmix {

const char* to_string(EdgeTag tag) {
  switch (tag) {
    case EdgeTag::Interior: return "interior";
    case EdgeTag::Dirichlet: return "dirichlet";
    case EdgeTag::Neumann: return "neumann";
    case EdgeTag::Untagged: return "untagged";
  }
  return "unknown";
}

double Element::diameter() const { return std::hypot(hx, hy); }

Mesh::Mesh(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  require(xs_.size() >= 2 && ys_.size() >= 2, "mesh needs at least one cell per direction");
  for (std::size_t i = 1; i < xs_.size(); ++i)
    require(xs_[i] > xs_[i - 1], "x breakpoints must be strictly increasing");
  for (std::size_t j = 1; j < ys_.size(); ++j)
    require(ys_[j] > ys_[j - 1], "y breakpoints must be strictly increasing");

  const int nx = this->nx();
  const int ny = this->ny();
  const int nvx = nx + 1;

  vertices_.reserve(static_cast<std::size_t>(nvx) * (ny + 1));
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) vertices_.push_back({xs_[i], ys_[j]});

  // Horizontal edges first (row-major over (ny+1) rows of nx), then vertical
  // edges (ny rows of nx+1).
  const int n_horizontal = nx * (ny + 1);
  auto h_edge = [&](int i, int j) { return j * nx + i; };
  auto v_edge = [&](int i, int j) { return n_horizontal + j * (nx + 1) + i; };
  auto elem_id = [&](int i, int j) { return j * nx + i; };

  edges_.resize(static_cast<std::size_t>(n_horizontal) + static_cast<std::size_t>(ny) * (nx + 1));
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      Edge& e = edges_[h_edge(i, j)];
      e.vertices = {j * nvx + i, j * nvx + i + 1};
      e.length = xs_[i + 1] - xs_[i];
      if (j == 0) {
        e.elements = {elem_id(i, 0), -1};
        e.normal = {0.0, -1.0};
      } else if (j == ny) {
        e.elements = {elem_id(i, ny - 1), -1};
        e.normal = {0.0, 1.0};
      } else {
        e.elements = {elem_id(i, j - 1), elem_id(i, j)};
        e.normal = {0.0, 1.0};
        e.tag = EdgeTag::Interior;
      }
    }
  }
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      Edge& e = edges_[v_edge(i, j)];
      e.vertices = {j * nvx + i, (j + 1) * nvx + i};
      e.length = ys_[j + 1] - ys_[j];
      if (i == 0) {
        e.elements = {elem_id(0, j), -1};
        e.normal = {-1.0, 0.0};
      } else if (i == nx) {
        e.elements = {elem_id(nx - 1, j), -1};
        e.normal = {1.0, 0.0};
      } else {
        e.elements = {elem_id(i - 1, j), elem_id(i, j)};
        e.normal = {1.0, 0.0};
        e.tag = EdgeTag::Interior;
      }
    }
  }

  elements_.reserve(static_cast<std::size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      Element k;
      k.vertices = {j * nvx + i, j * nvx + i + 1, (j + 1) * nvx + i + 1, (j + 1) * nvx + i};
      k.edges = {h_edge(i, j), v_edge(i + 1, j), h_edge(i, j + 1), v_edge(i, j)};
      k.x0 = xs_[i];
      k.y0 = ys_[j];
      k.hx = xs_[i + 1] - xs_[i];
      k.hy = ys_[j + 1] - ys_[j];
      elements_.push_back(k);
    }
  }
}

const Element& Mesh::element(int id) const {
  require(id >= 0 && id < num_elements(), "element id out of range: " + std::to_string(id));
  return elements_[id];
}

Point Mesh::edge_midpoint(int id) const {
  const Edge& e = edges_.at(id);
  const Point& a = vertices_[e.vertices[0]];
  const Point& b = vertices_[e.vertices[1]];
  return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
}

Point Mesh::outward_normal(int side) {
  switch (side) {
    case kBottom: return {0.0, -1.0};
    case kRight: return {1.0, 0.0};
    case kTop: return {0.0, 1.0};
    default: return {-1.0, 0.0};
  }
}

bool Mesh::fully_tagged() const {
  for (const Edge& e : edges_)
    if (e.tag == EdgeTag::Untagged) return false;
  return true;
}

int Mesh::count_edges(EdgeTag tag) const {
  int n = 0;
  for (const Edge& e : edges_) n += e.tag == tag ? 1 : 0;
  return n;
}

std::string Mesh::to_json() const {
  nlohmann::json j;
  j["domain"] = {xs_.front(), xs_.back(), ys_.front(), ys_.back()};
  auto& verts = j["vertices"] = nlohmann::json::array();
  for (const Point& p : vertices_) verts.push_back({p.x, p.y});
  auto& elems = j["elements"] = nlohmann::json::array();
  for (const Element& k : elements_)
    elems.push_back({{"vertices", k.vertices}, {"edges", k.edges}, {"hx", k.hx}, {"hy", k.hy}});
  auto& edges = j["edges"] = nlohmann::json::array();
  for (const Edge& e : edges_) {
    edges.push_back({{"vertices", e.vertices},
                     {"elements", e.elements},
                     {"length", e.length},
                     {"normal", {e.normal.x, e.normal.y}},
                     {"tag", to_string(e.tag)}});
  }
  return j.dump();
}

Mesh build_rect_mesh(const Rectangle& domain, int nx, int ny) {
  require(nx >= 1 && ny >= 1, "subdivision counts must be positive");
  require(domain.x0 < domain.x1 && domain.y0 < domain.y1, "degenerate domain");
  std::vector<double> xs(nx + 1), ys(ny + 1);
  for (int i = 0; i <= nx; ++i) xs[i] = domain.x0 + domain.width() * i / nx;
  for (int j = 0; j <= ny; ++j) ys[j] = domain.y0 + domain.height() * j / ny;
  xs.back() = domain.x1;
  ys.back() = domain.y1;
  return Mesh(std::move(xs), std::move(ys));
}

Mesh tag_boundaries(const Mesh& mesh, const BoundaryPredicate& spec) {
  Mesh out = mesh;
  for (int id = 0; id < out.num_edges(); ++id) {
    Edge& e = out.edges_[id];
    if (!e.on_boundary()) continue;
    const EdgeTag tag = spec(out.edge_midpoint(id), e.normal);
    if (tag != EdgeTag::Dirichlet && tag != EdgeTag::Neumann)
      fail(ErrorCode::InvalidArgument, "boundary specification leaves edge " + std::to_string(id) + " untagged");
    e.tag = tag;
  }
  return out;
}

BoundaryPredicate all_dirichlet() {
  return [](Point, Point) { return EdgeTag::Dirichlet; };
}

}  // namespace elastmix
