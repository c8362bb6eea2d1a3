#include "elastmix/dofmap.hpp"

#include <string>

#include "elastmix/error.hpp"

namespace elastmix {

std::string_view to_string(ElementPair pair) { return pair == ElementPair::Q2Q1 ? "q2q1" : "q2p1"; }

ElementPair element_pair_from_string(std::string_view name) {
  if (name == "q2q1") return ElementPair::Q2Q1;
  if (name == "q2p1") return ElementPair::Q2P1;
  fail(ErrorCode::InvalidArgument, "unknown element pair '" + std::string(name) + "'");
}

DofMap::DofMap(const Mesh& mesh, ElementPair pair) : pair_(pair) {
  require(mesh.fully_tagged(), "dof map needs a mesh with every boundary edge tagged");
  const int nx = mesh.nx();
  const int ny = mesh.ny();
  const int lx = 2 * nx + 1;
  const int ly = 2 * ny + 1;

  node_coords_.resize(static_cast<std::size_t>(lx) * ly);
  for (int J = 0; J < ly; ++J) {
    const double y = J % 2 == 0 ? mesh.ys()[J / 2] : 0.5 * (mesh.ys()[J / 2] + mesh.ys()[J / 2 + 1]);
    for (int I = 0; I < lx; ++I) {
      const double x = I % 2 == 0 ? mesh.xs()[I / 2] : 0.5 * (mesh.xs()[I / 2] + mesh.xs()[I / 2 + 1]);
      node_coords_[J * lx + I] = {x, y};
    }
  }

  const auto& ref = q2_nodes();
  element_nodes_.resize(mesh.num_elements());
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int e = j * nx + i;
      for (int a = 0; a < 9; ++a) {
        const int I = 2 * i + 1 + static_cast<int>(ref[a][0]);
        const int J = 2 * j + 1 + static_cast<int>(ref[a][1]);
        element_nodes_[e][a] = J * lx + I;
      }
    }
  }

  constrained_.assign(node_coords_.size(), 0);
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const Element& k = mesh.element(e);
    for (int side = 0; side < 4; ++side) {
      if (mesh.edge(k.edges[side]).tag != EdgeTag::Dirichlet) continue;
      for (int a : q2_side_nodes()[side]) constrained_[element_nodes_[e][a]] = 1;
    }
  }
  int constrained_nodes = 0;
  for (char c : constrained_) constrained_nodes += c;
  num_constrained_ = 2 * constrained_nodes;

  const int ppe = pressure_per_element();
  pressure_dofs_.resize(static_cast<std::size_t>(mesh.num_elements()) * ppe);
  if (pair == ElementPair::Q2Q1) {
    num_pressure_ = mesh.num_vertices();
    for (int e = 0; e < mesh.num_elements(); ++e)
      for (int a = 0; a < 4; ++a) pressure_dofs_[e * 4 + a] = mesh.element(e).vertices[a];
  } else {
    num_pressure_ = 3 * mesh.num_elements();
    for (int e = 0; e < mesh.num_elements(); ++e)
      for (int a = 0; a < 3; ++a) pressure_dofs_[e * 3 + a] = 3 * e + a;
  }
}

std::vector<int> DofMap::element_pressure(int element) const {
  const int ppe = pressure_per_element();
  return {pressure_dofs_.begin() + element * ppe, pressure_dofs_.begin() + (element + 1) * ppe};
}

std::array<int, 18> DofMap::element_displacement(int element) const {
  std::array<int, 18> dofs{};
  const auto& nodes = element_nodes_[element];
  for (int a = 0; a < 9; ++a) {
    dofs[a] = displacement_dof(nodes[a], 0);
    dofs[9 + a] = displacement_dof(nodes[a], 1);
  }
  return dofs;
}

DofMap build_dofmap(const Mesh& mesh, ElementPair pair) { return DofMap(mesh, pair); }

}  // namespace elastmix
