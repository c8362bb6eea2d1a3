#include "elastmix/basis.hpp"

#include <utility>

#include "elastmix/error.hpp"

namespace elastmix {

namespace {

// Polynomial of degree <= 4 in one variable, c[k] multiplies t^k.
struct Poly1 {
  std::array<double, 5> c{};

  double value(double t) const { return (((c[4] * t + c[3]) * t + c[2]) * t + c[1]) * t + c[0]; }
  double d1(double t) const { return ((4.0 * c[4] * t + 3.0 * c[3]) * t + 2.0 * c[2]) * t + c[1]; }
  double d2(double t) const { return (12.0 * c[4] * t + 6.0 * c[3]) * t + 2.0 * c[2]; }
};

// Quadratic Lagrange functions on {-1, 0, 1}.
constexpr Poly1 kLagMinus{{0.0, -0.5, 0.5, 0.0, 0.0}};
constexpr Poly1 kLagZero{{1.0, 0.0, -1.0, 0.0, 0.0}};
constexpr Poly1 kLagPlus{{0.0, 0.5, 0.5, 0.0, 0.0}};
// Linear Lagrange functions on {-1, 1}.
constexpr Poly1 kLinMinus{{0.5, -0.5, 0.0, 0.0, 0.0}};
constexpr Poly1 kLinPlus{{0.5, 0.5, 0.0, 0.0, 0.0}};
constexpr Poly1 kOne{{1.0, 0.0, 0.0, 0.0, 0.0}};
constexpr Poly1 kT{{0.0, 1.0, 0.0, 0.0, 0.0}};
constexpr Poly1 kQuadBubble{{1.0, 0.0, -1.0, 0.0, 0.0}};  // 1 - t^2
constexpr Poly1 kCubicBubble{{0.0, 1.0, 0.0, -1.0, 0.0}};    // t (1 - t^2)

using Product = std::pair<Poly1, Poly1>;  // f(xi) * g(eta)

const Poly1& lagrange2(double node) {
  if (node < -0.5) return kLagMinus;
  if (node > 0.5) return kLagPlus;
  return kLagZero;
}

std::vector<Product> build_family(BasisFamily family) {
  std::vector<Product> fns;
  switch (family) {
    case BasisFamily::Q1:
      fns = {{kLinMinus, kLinMinus}, {kLinPlus, kLinMinus}, {kLinPlus, kLinPlus}, {kLinMinus, kLinPlus}};
      break;
    case BasisFamily::Q2:
    case BasisFamily::Q2Full:
      for (const auto& node : q2_nodes()) fns.push_back({lagrange2(node[0]), lagrange2(node[1])});
      break;
    case BasisFamily::P1Disc:
      fns = {{kOne, kOne}, {kT, kOne}, {kOne, kT}};
      break;
    case BasisFamily::Q3Bubble:
      // Edge bubbles (bottom, right, top, left), then interior ones.
      fns = {{kCubicBubble, kLinMinus},
             {kLinPlus, kCubicBubble},
             {kCubicBubble, kLinPlus},
             {kLinMinus, kCubicBubble},
             {kCubicBubble, kQuadBubble},
             {kQuadBubble, kCubicBubble},
             {kCubicBubble, kCubicBubble}};
      break;
    case BasisFamily::Q3Hier:
      // Edge functions (bottom, right, top, left; even then odd in the
      // tangential variable), then interior ones.
      for (const Poly1& b : {kQuadBubble, kCubicBubble}) {
        fns.push_back({b, kLinMinus});
        fns.push_back({kLinPlus, b});
        fns.push_back({b, kLinPlus});
        fns.push_back({kLinMinus, b});
      }
      for (const Poly1& bx : {kQuadBubble, kCubicBubble})
        for (const Poly1& by : {kQuadBubble, kCubicBubble}) fns.push_back({bx, by});
      break;
  }
  return fns;
}

const std::vector<Product>& family_products(BasisFamily family) {
  static const std::array<std::vector<Product>, 6> tables = {
      build_family(BasisFamily::Q1),       build_family(BasisFamily::Q2),
      build_family(BasisFamily::P1Disc),   build_family(BasisFamily::Q3Bubble),
      build_family(BasisFamily::Q3Hier), build_family(BasisFamily::Q2Full)};
  const auto idx = static_cast<std::size_t>(family);
  if (idx >= tables.size()) fail(ErrorCode::InvalidArgument, "unknown basis family");
  return tables[idx];
}

}  // namespace

std::string_view to_string(BasisFamily family) {
  switch (family) {
    case BasisFamily::Q1: return "Q1";
    case BasisFamily::Q2: return "Q2";
    case BasisFamily::P1Disc: return "P-1";
    case BasisFamily::Q3Bubble: return "Q3-bubble";
    case BasisFamily::Q3Hier: return "Q3-hier";
    case BasisFamily::Q2Full: return "Q2-full";
  }
  return "unknown";
}

int basis_size(BasisFamily family) { return static_cast<int>(family_products(family).size()); }

const std::array<std::array<double, 2>, 9>& q2_nodes() {
  static const std::array<std::array<double, 2>, 9> nodes = {{{-1.0, -1.0},
                                                              {1.0, -1.0},
                                                              {1.0, 1.0},
                                                              {-1.0, 1.0},
                                                              {0.0, -1.0},
                                                              {1.0, 0.0},
                                                              {0.0, 1.0},
                                                              {-1.0, 0.0},
                                                              {0.0, 0.0}}};
  return nodes;
}

const std::array<std::array<int, 3>, 4>& q2_side_nodes() {
  static const std::array<std::array<int, 3>, 4> sides = {{{0, 4, 1}, {1, 5, 2}, {3, 6, 2}, {0, 7, 3}}};
  return sides;
}

BasisValues basis_eval(BasisFamily family, double xi, double eta) {
  const auto& fns = family_products(family);
  const std::size_t n = fns.size();
  BasisValues out;
  out.value.resize(n);
  out.d_xi.resize(n);
  out.d_eta.resize(n);
  out.d_xixi.resize(n);
  out.d_xieta.resize(n);
  out.d_etaeta.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& [f, g] = fns[i];
    const double fv = f.value(xi), f1 = f.d1(xi), f2 = f.d2(xi);
    const double gv = g.value(eta), g1 = g.d1(eta), g2 = g.d2(eta);
    out.value[i] = fv * gv;
    out.d_xi[i] = f1 * gv;
    out.d_eta[i] = fv * g1;
    out.d_xixi[i] = f2 * gv;
    out.d_xieta[i] = f1 * g1;
    out.d_etaeta[i] = fv * g2;
  }
  return out;
}

BasisTable tabulate(BasisFamily family, const std::vector<double>& xi, const std::vector<double>& eta) {
  BasisTable table{family, {}};
  table.at.reserve(xi.size());
  for (std::size_t k = 0; k < xi.size(); ++k) table.at.push_back(basis_eval(family, xi[k], eta[k]));
  return table;
}

}  // namespace elastmix
