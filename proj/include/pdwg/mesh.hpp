#pragma once

#include <array>
#include <iosfwd>
#include <set>
#include <vector>

#include <Eigen/Core>

namespace pdwg {

using Point = Eigen::Vector2d;

/// Sides of the unit square, in the order used by every boundary table.
enum class Side { Bottom, Right, Top, Left };

const char* side_name(Side side);

struct Edge {
  /// Vertex indices, sorted ascending.
  std::array<int, 2> vertices{};
  double length = 0.0;
  /// Unit tangent from vertices[0] to vertices[1].
  Point tangent = Point::Zero();
  /// Global normal: the tangent rotated by -90 degrees.
  Point normal = Point::Zero();
  Point midpoint = Point::Zero();
  /// Adjacent triangles; the second slot is -1 on boundary edges.
  std::array<int, 2> triangles{-1, -1};
  /// Side of the unit square for boundary edges, empty otherwise.
  bool on_side = false;
  Side side = Side::Bottom;

  bool is_boundary() const { return triangles[1] < 0; }
  int n_triangles() const { return is_boundary() ? 1 : 2; }
};

/// Conforming triangulation with full edge adjacency.
///
/// Local edge j of triangle (a, b, c) joins vertex j to vertex j+1 (mod 3).
/// Triangles are counter-clockwise, so the outward normal of local edge j is
/// the global edge normal times edge_sign(t, j).
class Mesh {
 public:
  /// Builds edges, adjacency and geometry from raw vertices and triangles.
  /// Clockwise triangles are reoriented.
  static Mesh from_triangles(std::vector<Point> vertices,
                             std::vector<std::array<int, 3>> triangles);

  int n_vertices() const { return static_cast<int>(vertices_.size()); }
  int n_triangles() const { return static_cast<int>(triangles_.size()); }
  int n_edges() const { return static_cast<int>(edges_.size()); }
  int n_boundary_edges() const;

  const std::vector<Point>& vertices() const { return vertices_; }
  const Point& vertex(int i) const { return vertices_[i]; }
  const std::array<int, 3>& triangle(int t) const { return triangles_[t]; }
  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  const Edge& edge(int e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }

  const std::array<int, 3>& triangle_edges(int t) const { return tri_edges_[t]; }
  /// +1 when the global normal of local edge j points out of triangle t.
  int edge_sign(int t, int j) const { return tri_edge_signs_[t][j]; }
  /// Outward unit normal of local edge j of triangle t.
  Point outward_normal(int t, int j) const;
  /// Local slot of edge e in triangle t, or -1.
  int local_edge_index(int t, int e) const;

  double area(int t) const { return areas_[t]; }
  double diameter(int t) const { return diameters_[t]; }
  const Point& centroid(int t) const { return centroids_[t]; }
  std::array<Point, 3> triangle_points(int t) const;

  /// Largest element diameter.
  double h() const { return h_; }
  /// Number of subdivisions per side for uniform meshes, 0 otherwise.
  int subdivisions() const { return subdivisions_; }

 private:
  friend Mesh build_uniform_mesh(int n);

  std::vector<Point> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<Edge> edges_;
  std::vector<std::array<int, 3>> tri_edges_;
  std::vector<std::array<int, 3>> tri_edge_signs_;
  std::vector<double> areas_;
  std::vector<double> diameters_;
  std::vector<Point> centroids_;
  double h_ = 0.0;
  int subdivisions_ = 0;
};

/// Uniform n x n triangulation of the unit square; every sub-square is cut
/// along its negative-slope diagonal.
Mesh build_uniform_mesh(int n);

/// Edge weight used in place of h_T in edge sums: the largest diameter of the
/// adjacent triangles.
double edge_weight(const Mesh& mesh, int e);

/// Membership of boundary edges in the Dirichlet and Neumann segments. Both
/// flags may be set on the same edge (Cauchy data).
class BoundaryConfig {
 public:
  BoundaryConfig() = default;
  /// All flags cleared.
  explicit BoundaryConfig(const Mesh& mesh);

  int n_edges() const { return static_cast<int>(boundary_.size()); }

  bool is_boundary(int e) const { return boundary_[e] != 0; }
  bool in_gamma_d(int e) const { return gamma_d_[e] != 0; }
  bool in_gamma_n(int e) const { return gamma_n_[e] != 0; }
  /// Boundary edges outside the Neumann segment.
  bool in_gamma_n_complement(int e) const { return is_boundary(e) && !in_gamma_n(e); }
  /// Boundary edges outside the Dirichlet segment.
  bool in_gamma_d_complement(int e) const { return is_boundary(e) && !in_gamma_d(e); }

  /// Throws std::invalid_argument on interior edges.
  void set_gamma_d(int e, bool value);
  void set_gamma_n(int e, bool value);

  bool has_dirichlet() const;
  bool has_neumann() const;

  /// Throws std::invalid_argument if the flag layout does not match the mesh.
  void check_compatible(const Mesh& mesh) const;

 private:
  std::vector<unsigned char> boundary_;
  std::vector<unsigned char> gamma_d_;
  std::vector<unsigned char> gamma_n_;
};

/// Flags every boundary edge lying on the listed sides. Rejects the case of
/// no Dirichlet and no Neumann side.
BoundaryConfig classify_boundary(const Mesh& mesh, const std::set<Side>& dirichlet,
                                 const std::set<Side>& neumann);

/// Plain-text dump with `vertices`, `triangles` and `edges` sections. Edge
/// lines read `i j boundary_flag gd_flag gn_flag`; the last two are 0 when no
/// configuration is given.
void write_mesh(std::ostream& os, const Mesh& mesh, const BoundaryConfig* config);

}  // namespace pdwg
