#include "pdwg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>

namespace pdwg {

namespace {

constexpr double kSideTolerance = 1e-12;

double cross(const Point& a, const Point& b) { return a.x() * b.y() - a.y() * b.x(); }

bool locate_side(const Point& midpoint, Side& side) {
  if (std::abs(midpoint.y()) < kSideTolerance) {
    side = Side::Bottom;
  } else if (std::abs(midpoint.x() - 1.0) < kSideTolerance) {
    side = Side::Right;
  } else if (std::abs(midpoint.y() - 1.0) < kSideTolerance) {
    side = Side::Top;
  } else if (std::abs(midpoint.x()) < kSideTolerance) {
    side = Side::Left;
  } else {
    return false;
  }
  return true;
}

}  // namespace

const char* side_name(Side side) {
  switch (side) {
    case Side::Bottom:
      return "bottom";
    case Side::Right:
      return "right";
    case Side::Top:
      return "top";
    case Side::Left:
      return "left";
  }
  return "?";
}

Mesh Mesh::from_triangles(std::vector<Point> vertices,
                          std::vector<std::array<int, 3>> triangles) {
  Mesh mesh;
  mesh.vertices_ = std::move(vertices);
  mesh.triangles_ = std::move(triangles);

  const int nv = mesh.n_vertices();
  const int nt = mesh.n_triangles();
  mesh.tri_edges_.resize(nt);
  mesh.tri_edge_signs_.resize(nt);
  mesh.areas_.resize(nt);
  mesh.diameters_.resize(nt);
  mesh.centroids_.resize(nt);

  std::map<std::pair<int, int>, int> edge_index;
  for (int t = 0; t < nt; ++t) {
    auto& tri = mesh.triangles_[t];
    for (int v : tri) {
      if (v < 0 || v >= nv) throw std::invalid_argument("triangle references unknown vertex");
    }
    const Point& a = mesh.vertices_[tri[0]];
    const Point& b = mesh.vertices_[tri[1]];
    const Point& c = mesh.vertices_[tri[2]];
    double signed_area = 0.5 * cross(b - a, c - a);
    if (signed_area == 0.0) throw std::invalid_argument("degenerate triangle");
    if (signed_area < 0.0) {
      std::swap(tri[1], tri[2]);
      signed_area = -signed_area;
    }
    mesh.areas_[t] = signed_area;
    mesh.centroids_[t] = (a + b + c) / 3.0;

    double diameter = 0.0;
    for (int j = 0; j < 3; ++j) {
      const int v0 = tri[j];
      const int v1 = tri[(j + 1) % 3];
      const auto key = std::minmax(v0, v1);
      auto [it, inserted] =
          edge_index.try_emplace({key.first, key.second}, mesh.n_edges());
      if (inserted) {
        Edge edge;
        edge.vertices = {key.first, key.second};
        const Point d = mesh.vertices_[key.second] - mesh.vertices_[key.first];
        edge.length = d.norm();
        edge.tangent = d / edge.length;
        edge.normal = Point(edge.tangent.y(), -edge.tangent.x());
        edge.midpoint = 0.5 * (mesh.vertices_[key.first] + mesh.vertices_[key.second]);
        edge.triangles = {t, -1};
        mesh.edges_.push_back(edge);
      } else {
        Edge& edge = mesh.edges_[it->second];
        if (edge.triangles[1] >= 0) throw std::invalid_argument("edge shared by more than two triangles");
        edge.triangles[1] = t;
      }
      mesh.tri_edges_[t][j] = it->second;
      // Outward normal of a CCW edge v0 -> v1 is its tangent rotated by -90
      // degrees, which matches the global normal when v0 < v1.
      mesh.tri_edge_signs_[t][j] = v0 < v1 ? 1 : -1;
      diameter = std::max(diameter, mesh.edges_[it->second].length);
    }
    mesh.diameters_[t] = diameter;
    mesh.h_ = std::max(mesh.h_, diameter);
  }

  for (Edge& edge : mesh.edges_) {
    if (edge.is_boundary()) edge.on_side = locate_side(edge.midpoint, edge.side);
  }
  return mesh;
}

int Mesh::n_boundary_edges() const {
  return static_cast<int>(
      std::count_if(edges_.begin(), edges_.end(), [](const Edge& e) { return e.is_boundary(); }));
}

Point Mesh::outward_normal(int t, int j) const {
  return static_cast<double>(tri_edge_signs_[t][j]) * edges_[tri_edges_[t][j]].normal;
}

int Mesh::local_edge_index(int t, int e) const {
  for (int j = 0; j < 3; ++j) {
    if (tri_edges_[t][j] == e) return j;
  }
  return -1;
}

std::array<Point, 3> Mesh::triangle_points(int t) const {
  const auto& tri = triangles_[t];
  return {vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]};
}

Mesh build_uniform_mesh(int n) {
  if (n < 1) throw std::invalid_argument("refinement level must be at least 1, got " + std::to_string(n));
  std::vector<Point> vertices;
  vertices.reserve(static_cast<std::size_t>((n + 1) * (n + 1)));
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      vertices.emplace_back(static_cast<double>(i) / n, static_cast<double>(j) / n);
    }
  }
  const auto id = [n](int i, int j) { return j * (n + 1) + i; };
  std::vector<std::array<int, 3>> triangles;
  triangles.reserve(static_cast<std::size_t>(2 * n * n));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      // The diagonal joins (i, j+1) and (i+1, j).
      triangles.push_back({id(i, j), id(i + 1, j), id(i, j + 1)});
      triangles.push_back({id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  Mesh mesh = Mesh::from_triangles(std::move(vertices), std::move(triangles));
  mesh.subdivisions_ = n;
  return mesh;
}

double edge_weight(const Mesh& mesh, int e) {
  const Edge& edge = mesh.edge(e);
  double w = mesh.diameter(edge.triangles[0]);
  if (!edge.is_boundary()) w = std::max(w, mesh.diameter(edge.triangles[1]));
  return w;
}

BoundaryConfig::BoundaryConfig(const Mesh& mesh)
    : boundary_(mesh.n_edges(), 0), gamma_d_(mesh.n_edges(), 0), gamma_n_(mesh.n_edges(), 0) {
  for (int e = 0; e < mesh.n_edges(); ++e) boundary_[e] = mesh.edge(e).is_boundary() ? 1 : 0;
}

void BoundaryConfig::set_gamma_d(int e, bool value) {
  if (!is_boundary(e)) throw std::invalid_argument("Dirichlet flag on interior edge " + std::to_string(e));
  gamma_d_[e] = value ? 1 : 0;
}

void BoundaryConfig::set_gamma_n(int e, bool value) {
  if (!is_boundary(e)) throw std::invalid_argument("Neumann flag on interior edge " + std::to_string(e));
  gamma_n_[e] = value ? 1 : 0;
}

bool BoundaryConfig::has_dirichlet() const {
  return std::any_of(gamma_d_.begin(), gamma_d_.end(), [](unsigned char f) { return f != 0; });
}

bool BoundaryConfig::has_neumann() const {
  return std::any_of(gamma_n_.begin(), gamma_n_.end(), [](unsigned char f) { return f != 0; });
}

void BoundaryConfig::check_compatible(const Mesh& mesh) const {
  if (n_edges() != mesh.n_edges()) throw std::invalid_argument("boundary configuration does not match mesh");
  for (int e = 0; e < mesh.n_edges(); ++e) {
    if (is_boundary(e) != mesh.edge(e).is_boundary()) {
      throw std::invalid_argument("boundary configuration does not match mesh");
    }
  }
}

BoundaryConfig classify_boundary(const Mesh& mesh, const std::set<Side>& dirichlet,
                                 const std::set<Side>& neumann) {
  if (dirichlet.empty() && neumann.empty()) {
    throw std::invalid_argument("no Dirichlet and no Neumann side: no boundary data anywhere");
  }
  BoundaryConfig config(mesh);
  for (int e = 0; e < mesh.n_edges(); ++e) {
    const Edge& edge = mesh.edge(e);
    if (!edge.is_boundary() || !edge.on_side) continue;
    if (dirichlet.count(edge.side)) config.set_gamma_d(e, true);
    if (neumann.count(edge.side)) config.set_gamma_n(e, true);
  }
  return config;
}

void write_mesh(std::ostream& os, const Mesh& mesh, const BoundaryConfig* config) {
  const auto old_precision = os.precision(17);
  os << "vertices " << mesh.n_vertices() << '\n';
  for (const Point& p : mesh.vertices()) os << p.x() << ' ' << p.y() << '\n';
  os << "triangles " << mesh.n_triangles() << '\n';
  for (const auto& t : mesh.triangles()) os << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  os << "edges " << mesh.n_edges() << '\n';
  for (int e = 0; e < mesh.n_edges(); ++e) {
    const Edge& edge = mesh.edge(e);
    const bool gd = config != nullptr && config->in_gamma_d(e);
    const bool gn = config != nullptr && config->in_gamma_n(e);
    os << edge.vertices[0] << ' ' << edge.vertices[1] << ' ' << (edge.is_boundary() ? 1 : 0) << ' '
       << (gd ? 1 : 0) << ' ' << (gn ? 1 : 0) << '\n';
  }
  os.precision(old_precision);
}

}  // namespace pdwg
