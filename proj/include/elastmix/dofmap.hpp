#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "elastmix/basis.hpp"
#include "elastmix/mesh.hpp"

namespace elastmix {

enum class ElementPair { Q2Q1, Q2P1 };

std::string_view to_string(ElementPair pair);
ElementPair element_pair_from_string(std::string_view name);

inline BasisFamily pressure_family(ElementPair pair) {
  return pair == ElementPair::Q2Q1 ? BasisFamily::Q1 : BasisFamily::P1Disc;
}

/// Global numbering for a mixed pair on a rectangular mesh.
///
/// Q2 nodes live on the (2nx+1) x (2ny+1) lattice of vertices, edge midpoints
/// and cell centers. Displacement dof of component c at node n is
/// `c * num_nodes() + n`. Pressure dofs follow the displacement block in the
/// global system; their ids here are pressure-local.
class DofMap {
 public:
  DofMap(const Mesh& mesh, ElementPair pair);

  ElementPair pair() const { return pair_; }
  int num_nodes() const { return static_cast<int>(node_coords_.size()); }
  int num_displacement() const { return 2 * num_nodes(); }
  int num_pressure() const { return num_pressure_; }
  int num_total() const { return num_displacement() + num_pressure_; }
  int num_free_displacement() const { return num_displacement() - num_constrained(); }
  int num_constrained() const { return num_constrained_; }
  int pressure_per_element() const { return pair_ == ElementPair::Q2Q1 ? 4 : 3; }

  int displacement_dof(int node, int component) const { return component * num_nodes() + node; }
  /// Local Q2 node order as in `q2_nodes()`.
  const std::array<int, 9>& element_nodes(int element) const { return element_nodes_[element]; }
  /// Pressure-local dof ids of an element.
  std::vector<int> element_pressure(int element) const;
  /// The 18 displacement dofs: component 0 of the 9 nodes, then component 1.
  std::array<int, 18> element_displacement(int element) const;

  const Point& node(int id) const { return node_coords_[id]; }
  bool node_constrained(int id) const { return constrained_[id] != 0; }
  bool dof_constrained(int dof) const { return constrained_[dof % num_nodes()] != 0; }

  int num_elements() const { return static_cast<int>(element_nodes_.size()); }

 private:
  ElementPair pair_;
  std::vector<Point> node_coords_;
  std::vector<std::array<int, 9>> element_nodes_;
  std::vector<int> pressure_dofs_;  // flattened, pressure_per_element() per element
  std::vector<char> constrained_;
  int num_pressure_ = 0;
  int num_constrained_ = 0;
};

/// Requires a fully tagged mesh.
DofMap build_dofmap(const Mesh& mesh, ElementPair pair);

}  // namespace elastmix
