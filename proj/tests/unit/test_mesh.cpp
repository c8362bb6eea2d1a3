#include <cmath>

#include "doctest.h"
#include "json.hpp"

#include "elastmix/error.hpp"
#include "elastmix/mesh.hpp"

using namespace elastmix;

namespace {

int interior_edges(const Mesh& m) {
  int n = 0;
  for (const Edge& e : m.edges()) n += e.on_boundary() ? 0 : 1;
  return n;
}

}  // namespace

TEST_CASE("rectangular grid counts") {
  const Mesh m = build_rect_mesh({0, 1, 0, 1}, 2, 2);
  CHECK(m.num_elements() == 4);
  CHECK(m.num_vertices() == 9);
  CHECK(m.num_edges() == 12);
  CHECK(interior_edges(m) == 4);

  const Mesh one = build_rect_mesh({0, 1, 0, 1}, 1, 1);
  CHECK(one.num_elements() == 1);
  CHECK(interior_edges(one) == 0);

  const Mesh r = build_rect_mesh({0, 2, 0, 1}, 4, 3);
  CHECK(r.num_edges() == 4 * 4 + 5 * 3);
}

TEST_CASE("element sizes and diameter") {
  const Mesh m = build_rect_mesh({-1, 1, -1, 1}, 4, 4);
  for (const Element& k : m.elements()) {
    CHECK(k.hx == doctest::Approx(0.5));
    CHECK(k.hy == doctest::Approx(0.5));
    CHECK(k.diameter() == doctest::Approx(0.5 * std::sqrt(2.0)));
  }
}

TEST_CASE("areas sum to the domain area, graded spacing included") {
  const Mesh m({0.0, 0.1, 0.3, 0.7, 1.5}, {-1.0, -0.2, 0.0, 2.0});
  double a = 0.0;
  for (const Element& k : m.elements()) a += k.area();
  CHECK(a == doctest::Approx(m.domain().area()).epsilon(1e-14));
  CHECK(m.domain().area() == doctest::Approx(1.5 * 3.0));
}

TEST_CASE("edge normals point from the first element to the second, outward on the boundary") {
  const Mesh m = build_rect_mesh({0, 1, 0, 1}, 3, 2);
  for (int id = 0; id < m.num_edges(); ++id) {
    const Edge& e = m.edge(id);
    CHECK(std::hypot(e.normal.x, e.normal.y) == doctest::Approx(1.0));
    const Point mid = m.edge_midpoint(id);
    const Point c0 = m.element(e.elements[0]).center();
    CHECK((mid.x - c0.x) * e.normal.x + (mid.y - c0.y) * e.normal.y > 0.0);
    if (!e.on_boundary()) {
      CHECK(e.elements[0] < e.elements[1]);
      const Point c1 = m.element(e.elements[1]).center();
      CHECK((c1.x - c0.x) * e.normal.x + (c1.y - c0.y) * e.normal.y > 0.0);
    }
  }
}

TEST_CASE("element sides reference matching edges") {
  const Mesh m = build_rect_mesh({0, 1, 0, 1}, 3, 3);
  for (int ke = 0; ke < m.num_elements(); ++ke) {
    const Element& k = m.element(ke);
    for (int s = 0; s < 4; ++s) {
      const Edge& e = m.edge(k.edges[s]);
      CHECK((e.elements[0] == ke || e.elements[1] == ke));
      const Point n = Mesh::outward_normal(s);
      const double sign = e.elements[0] == ke ? 1.0 : -1.0;
      CHECK(sign * e.normal.x == doctest::Approx(n.x));
      CHECK(sign * e.normal.y == doctest::Approx(n.y));
    }
  }
}

TEST_CASE("boundary tagging") {
  const Mesh m = build_rect_mesh({0, 1, 0, 1}, 2, 2);
  CHECK_FALSE(m.fully_tagged());
  const Mesh d = tag_boundaries(m, all_dirichlet());
  CHECK(d.fully_tagged());
  CHECK(d.count_edges(EdgeTag::Dirichlet) == 8);
  CHECK(d.count_edges(EdgeTag::Neumann) == 0);

  const Mesh sq = build_rect_mesh({-1, 1, -1, 1}, 4, 4);
  const Mesh mixed =
      tag_boundaries(sq, [](Point mid, Point) { return mid.x == 1.0 ? EdgeTag::Neumann : EdgeTag::Dirichlet; });
  CHECK(mixed.count_edges(EdgeTag::Neumann) == 4);
  CHECK(mixed.count_edges(EdgeTag::Dirichlet) == 12);

  // An empty Neumann part is the all-Dirichlet case.
  const Mesh none = tag_boundaries(sq, [](Point, Point) { return EdgeTag::Dirichlet; });
  CHECK(none.to_json() == tag_boundaries(sq, all_dirichlet()).to_json());

  CHECK_THROWS_AS(tag_boundaries(m, [](Point, Point) { return EdgeTag::Interior; }), Error);
}

TEST_CASE("invalid construction is rejected") {
  CHECK_THROWS_AS(Mesh({0.0, 0.0, 1.0}, {0.0, 1.0}), Error);
  CHECK_THROWS_AS(Mesh({0.0}, {0.0, 1.0}), Error);
  CHECK_THROWS_AS(build_rect_mesh({0, 1, 0, 1}, 0, 2), Error);
  CHECK_THROWS_AS(build_rect_mesh({1, 0, 0, 1}, 2, 2), Error);
  const Mesh m = build_rect_mesh({0, 1, 0, 1}, 2, 2);
  CHECK_THROWS_AS(m.element(4), Error);
}

TEST_CASE("json dump round-trips the topology") {
  const Mesh m = tag_boundaries(build_rect_mesh({0, 2, 0, 1}, 2, 1), all_dirichlet());
  const auto j = nlohmann::json::parse(m.to_json());
  CHECK(j["vertices"].size() == 6);
  CHECK(j["elements"].size() == 2);
  CHECK(j["edges"].size() == 7);
  CHECK(j["elements"][1]["hx"].get<double>() == doctest::Approx(1.0));
  int dirichlet = 0;
  for (const auto& e : j["edges"]) dirichlet += e["tag"] == "dirichlet" ? 1 : 0;
  CHECK(dirichlet == 6);
}
