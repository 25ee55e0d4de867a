#pragma once

#include <vector>

#include "pdwg/mesh.hpp"

namespace pdwg {

/// Points and weights on a reference cell. Triangle rules live on the unit
/// right triangle (0,0), (1,0), (0,1) with weights summing to 1/2; segment
/// rules live on [0, 1] with weights summing to 1.
struct QuadratureRule {
  std::vector<Point> points;
  std::vector<double> weights;
  int exact_degree = 0;

  int size() const { return static_cast<int>(weights.size()); }
};

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n_points, std::vector<double>& nodes, std::vector<double>& weights);

/// Gauss rule on [0, 1] exact for polynomials of the given degree. Points are
/// stored in the x coordinate.
QuadratureRule segment_rule(int degree);

/// Collapsed (Duffy) Gauss product rule on the reference triangle, exact for
/// polynomials of total degree `degree`. All weights are positive.
QuadratureRule triangle_rule(int degree);

/// Quadrature points and weights mapped onto a physical cell.
struct MappedQuadrature {
  std::vector<Point> points;
  std::vector<double> weights;

  int size() const { return static_cast<int>(weights.size()); }
};

MappedQuadrature map_to_triangle(const QuadratureRule& rule, const Mesh& mesh, int t);

/// Maps a segment rule onto edge e, traversed from vertices[0] to vertices[1].
MappedQuadrature map_to_edge(const QuadratureRule& rule, const Mesh& mesh, int e);

/// The rule pair used throughout for degree k: triangle exact to 2k+4, edges
/// exact to 2k+5.
struct QuadratureSet {
  explicit QuadratureSet(int degree);

  int degree;
  QuadratureRule triangle;
  QuadratureRule segment;
};

}  // namespace pdwg
