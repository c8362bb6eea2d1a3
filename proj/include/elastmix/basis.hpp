#pragma once

#include <array>
#include <string_view>
#include <vector>

namespace elastmix {

/// Scalar shape-function families on the reference square [-1,1]^2.
///
/// Q1, Q2       Lagrange (nodal) bilinear / biquadratic.
/// P1Disc       element-local modes {1, xi, eta}.
/// Q3Bubble     the 7 bicubics vanishing at the 9 Q2 nodes.
/// Q3Hier       the 12 bicubics vanishing at the 4 vertices (Q3 minus Q1,
///              hierarchical); the local error correction space.
/// Q2Full       full biquadratic space (pressure correction), same functions
///              as Q2.
enum class BasisFamily { Q1, Q2, P1Disc, Q3Bubble, Q3Hier, Q2Full };

std::string_view to_string(BasisFamily family);

int basis_size(BasisFamily family);

/// Values and reference derivatives of every function of a family at one
/// point. Second derivatives are exact for all families.
struct BasisValues {
  std::vector<double> value;
  std::vector<double> d_xi;
  std::vector<double> d_eta;
  std::vector<double> d_xixi;
  std::vector<double> d_xieta;
  std::vector<double> d_etaeta;

  int size() const { return static_cast<int>(value.size()); }
};

BasisValues basis_eval(BasisFamily family, double xi, double eta);

/// Reference coordinates of the 9 Q2 nodes in local order: corners
/// counter-clockwise from (-1,-1), then midpoints of the bottom, right, top
/// and left sides, then the center. The first four are the Q1 nodes.
const std::array<std::array<double, 2>, 9>& q2_nodes();

/// Local Q2 node indices on each side (Side order), in increasing
/// tangential coordinate.
const std::array<std::array<int, 3>, 4>& q2_side_nodes();

/// Basis values at every point of a quadrature rule, tabulated once.
struct BasisTable {
  BasisFamily family;
  std::vector<BasisValues> at;  // indexed by quadrature point
};

BasisTable tabulate(BasisFamily family, const std::vector<double>& xi, const std::vector<double>& eta);

}  // namespace elastmix
