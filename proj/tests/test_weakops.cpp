#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "pdwg/weak_ops.hpp"

using namespace pdwg;

namespace {

Point library_gradient(const Mesh& m, int t, int k, const Eigen::VectorXd& g, const Point& p) {
  PiecewiseVectorField f;
  f.degree = k - 1;
  f.coefficients.assign(m.n_triangles(), Eigen::VectorXd());
  f.coefficients[t] = g;
  return f.value(m, t, p);
}

Mesh unit_triangle() { return Mesh::from_triangles({Point(0, 0), Point(1, 0), Point(0, 1)}, {{0, 1, 2}}); }

}  // namespace

TEST_CASE("weak gradient matches the least-squares oracle") {
  std::mt19937 rng(11);
  const Mesh skew = Mesh::from_triangles({Point(0.1, 0.2), Point(0.9, 0.35), Point(0.3, 0.8)}, {{0, 1, 2}});
  const std::vector<Mesh> meshes = {unit_triangle(), build_uniform_mesh(2), skew};
  for (const Mesh& mesh : meshes) {
    const Mesh* m = &mesh;
    for (int k : {1, 2}) {
      const DofLayout layout(*m, k);
      for (int trial = 0; trial < 100; ++trial) {
        const int t = trial % m->n_triangles();
        const Eigen::VectorXd v = oracle::random_vector(layout.local_size(), rng);
        const Eigen::VectorXd g = weak_gradient(*m, t, k, v);
        const oracle::WeakGradient ref = oracle::weak_gradient(*m, t, k, v);
        const oracle::Cell cell = oracle::triangle_cell(m->triangle_points(t), 3);
        for (const Point& p : cell.p) CHECK((library_gradient(*m, t, k, g, p) - ref.value(p)).norm() <= 1e-12);
      }
    }
  }
}

TEST_CASE("hypotenuse example on the unit triangle") {
  const Mesh m = unit_triangle();
  const int t = 0;
  int hyp = -1;
  for (int j = 0; j < 3; ++j) {
    const Edge& e = m.edge(m.triangle_edges(t)[j]);
    if (std::abs(e.length - std::sqrt(2.0)) < 1e-14) hyp = j;
  }
  REQUIRE(hyp >= 0);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(3 + 3 * 2);
  v(3 + 2 * hyp + 1) = 1.0;  // v_b = s on the hypotenuse
  const Eigen::VectorXd g = weak_gradient(m, t, 1, v);
  const oracle::WeakGradient ref = oracle::weak_gradient(m, t, 1, v);
  CHECK((library_gradient(m, t, 1, g, m.centroid(t)) - ref.value(m.centroid(t))).norm() <= 1e-12);
  // s has zero mean on the edge, so the gradient vanishes
  CHECK(ref.value(m.centroid(t)).norm() <= 1e-12);
}

TEST_CASE("k=1 simplification") {
  const Mesh m = build_uniform_mesh(3);
  std::mt19937 rng(5);
  for (int t = 0; t < m.n_triangles(); ++t) {
    const Eigen::VectorXd v = oracle::random_vector(9, rng);
    Point expected = Point::Zero();
    for (int j = 0; j < 3; ++j) {
      // <v_b, n>_e = |e| times the mean of v_b; the s monomial integrates to zero
      expected += m.edge(m.triangle_edges(t)[j]).length * v(3 + 2 * j) * m.outward_normal(t, j);
    }
    expected /= m.area(t);
    CHECK((library_gradient(m, t, 1, weak_gradient(m, t, 1, v), m.centroid(t)) - expected).norm() <= 1e-12);
  }
}

TEST_CASE("weak gradient of constants and linear data") {
  const Mesh m = build_uniform_mesh(4);
  LocalOperators ops(m, 1);
  const WeakFunction one = project_Qh([](const Point&) { return 1.0; }, m, 1);
  const PiecewiseVectorField g1 = ops.weak_gradient(one);
  const WeakFunction lin = project_Qh([](const Point& p) { return 1.0 + p.x() + p.y(); }, m, 1);
  const PiecewiseVectorField g2 = ops.weak_gradient(lin);
  for (int t = 0; t < m.n_triangles(); ++t) {
    CHECK(g1.value(m, t, m.centroid(t)).norm() <= 1e-12);
    CHECK((g2.value(m, t, m.centroid(t)) - Point(1, 1)).norm() <= 1e-12);
  }
  // v_b = 1 with arbitrary v_0 still gives zero for k=1
  Eigen::VectorXd v = Eigen::VectorXd::Zero(9);
  v(0) = 3.7;
  v(1) = -2.0;
  for (int j = 0; j < 3; ++j) v(3 + 2 * j) = 1.0;
  CHECK(weak_gradient(m, 0, 1, v).norm() <= 1e-12);
}

TEST_CASE("commutativity with the projections") {
  const std::vector<ScalarFunction> us = {
      [](const Point& p) { return 1.0 + 2.0 * p.x() - p.y(); },
      [](const Point& p) { return p.x() * p.y() + p.x() * p.x(); },
      [](const Point& p) { return 3.0 * p.y() * p.y() - p.x() * p.y() + p.x(); },
  };
  const std::vector<VectorFunction> grads = {
      [](const Point&) { return Point(2.0, -1.0); },
      [](const Point& p) { return Point(p.y() + 2.0 * p.x(), p.x()); },
      [](const Point& p) { return Point(1.0 - p.y(), 6.0 * p.y() - p.x()); },
  };
  for (int n : {1, 3}) {
    const Mesh m = build_uniform_mesh(n);
    for (int k : {1, 2}) {
      LocalOperators ops(m, k);
      for (std::size_t i = 0; i < us.size(); ++i) {
        const PiecewiseVectorField lhs = ops.weak_gradient(project_Qh(us[i], m, k));
        const PiecewiseVectorField rhs = project_calQh(grads[i], m, k);
        for (int t = 0; t < m.n_triangles(); ++t) CHECK((lhs.coefficients[t] - rhs.coefficients[t]).cwiseAbs().maxCoeff() <= 1e-11);
      }
    }
  }
  const Mesh m = build_uniform_mesh(4);
  LocalOperators ops(m, 1);
  const PiecewiseVectorField lhs =
      ops.weak_gradient(project_Qh([](const Point& p) { return std::cos(p.x()) * std::cos(p.y()); }, m, 1));
  const PiecewiseVectorField rhs = project_calQh(
      [](const Point& p) { return Point(-std::sin(p.x()) * std::cos(p.y()), -std::cos(p.x()) * std::sin(p.y())); }, m, 1);
  for (int t = 0; t < m.n_triangles(); ++t) CHECK((lhs.coefficients[t] - rhs.coefficients[t]).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("integration by parts identity") {
  // (grad_w v, psi) = (grad v_0, psi) - <v_0 - v_b, psi . n> for psi in [P_{k-1}]^2
  std::mt19937 rng(2);
  const Mesh m = build_uniform_mesh(2);
  for (int k : {1, 2, 3}) {
    const DofLayout layout(m, k);
    const int nb = element_dim(k), ne = edge_dim(k);
    for (int trial = 0; trial < 10; ++trial) {
      const int t = trial % m.n_triangles();
      const Eigen::VectorXd v = oracle::random_vector(layout.local_size(), rng);
      const Eigen::VectorXd g = weak_gradient(m, t, k, v);
      const auto ex = oracle::exponents(k - 1);
      for (const auto& e : ex) {
        for (int comp = 0; comp < 2; ++comp) {
          const auto psi = [&](const Point& p) {
            Point r = Point::Zero();
            r(comp) = oracle::monomial(e, p);
            return r;
          };
          double lhs = 0.0, rhs = 0.0;
          const oracle::Cell cell = oracle::triangle_cell(m.triangle_points(t));
          for (std::size_t q = 0; q < cell.p.size(); ++q) {
            const Point& p = cell.p[q];
            lhs += cell.w[q] * library_gradient(m, t, k, g, p).dot(psi(p));
          }
          const ElementBasis basis(m, t, k);
          for (std::size_t q = 0; q < cell.p.size(); ++q) {
            const Eigen::MatrixX2d d = basis.gradients(cell.p[q]);
            const Point gv0 = d.transpose() * v.head(nb);
            rhs += cell.w[q] * gv0.dot(psi(cell.p[q]));
          }
          const auto& tri = m.triangle(t);
          for (int j = 0; j < 3; ++j) {
            const Point a = m.vertex(tri[j]), b = m.vertex(tri[(j + 1) % 3]);
            const Point n = m.outward_normal(t, j);
            const int edge = m.triangle_edges(t)[j];
            const oracle::Cell face = oracle::segment_cell(a, b);
            for (std::size_t q = 0; q < face.p.size(); ++q) {
              const double jump = oracle::element_value(m, t, k, v.head(nb), face.p[q]) -
                                  oracle::edge_value(m, edge, k, v.segment(nb + j * ne, ne), face.p[q]);
              rhs -= face.w[q] * jump * psi(face.p[q]).dot(n);
            }
          }
          CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
        }
      }
    }
  }
}

TEST_CASE("stabilizer") {
  const Mesh m = build_uniform_mesh(4);
  for (int k = 1; k <= 3; ++k) {
    const Eigen::MatrixXd s = local_stabilizer(m, 5, k);
    CHECK((s - s.transpose()).cwiseAbs().maxCoeff() <= 1e-13 * s.cwiseAbs().maxCoeff());
    CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(s).eigenvalues().minCoeff() >= -1e-12 * s.norm());
  }
  // traces of v_0 on the edges: s(v, v) = 0
  const WeakFunction v = project_Qh([](const Point& p) { return 2.0 + p.x() - 4.0 * p.y(); }, m, 1);
  for (int t = 0; t < m.n_triangles(); ++t) {
    const Eigen::VectorXd local = v.local(m, t);
    CHECK(std::abs(local.dot(local_stabilizer(m, t, 1) * local)) <= 1e-12);
  }
  // v_0 = 0 and v_b = 1 on one edge of length l: s = l / h
  for (int j = 0; j < 3; ++j) {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(9);
    w(3 + 2 * j) = 1.0;
    const double l = m.edge(m.triangle_edges(0)[j]).length;
    CHECK(w.dot(local_stabilizer(m, 0, 1) * w) == doctest::Approx(l / m.diameter(0)).epsilon(1e-13));
  }
}

TEST_CASE("stabilizer of Qh u decays at order h^2") {
  const ScalarFunction u = [](const Point& p) { return std::cos(p.x()) * std::cos(p.y()); };
  double previous = 0.0;
  for (int n : {4, 8, 16, 32}) {
    const Mesh m = build_uniform_mesh(n);
    LocalOperators ops(m, 1);
    const WeakFunction q = project_Qh(u, m, 1);
    const double s = ops.stabilizer_form(q, q);
    if (previous > 0.0) CHECK(std::log2(previous / s) == doctest::Approx(2.0).epsilon(0.05));
    previous = s;
  }
}

TEST_CASE("b form") {
  const Mesh m = build_uniform_mesh(4);
  LocalOperators ops(m, 1);
  const WeakFunction c = project_Qh([](const Point&) { return 3.0; }, m, 1);
  const WeakFunction lin = project_Qh([](const Point& p) { return 1.0 + p.x() + p.y(); }, m, 1);
  for (int t = 0; t < m.n_triangles(); ++t) {
    const Eigen::MatrixXd& b = ops.b_form(t);
    CHECK((b - b.transpose()).cwiseAbs().maxCoeff() <= 1e-13 * b.cwiseAbs().maxCoeff());
    const Eigen::VectorXd lc = c.local(m, t);
    CHECK(std::abs(lc.dot(b * lc)) <= 1e-12);
    const Eigen::VectorXd ll = lin.local(m, t);
    CHECK(ll.dot(b * ll) == doctest::Approx(2.0 * m.area(t)).epsilon(1e-12));
  }
  CHECK(ops.b_form(c, c) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(ops.b_form(lin, lin) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("diffusion coefficient checks") {
  const Diffusion bad = Diffusion::matrix([](const Point&) { return Eigen::Matrix2d{{1.0, 0.0}, {0.0, -1.0}}; },
                                          [](const Point&) { return Point::Zero().eval(); });
  CHECK_THROWS_AS(bad.check_spd(Point(0.5, 0.5)), std::invalid_argument);
  const Mesh m = build_uniform_mesh(1);
  CHECK_THROWS_AS(LocalOperators(m, 1, bad), std::invalid_argument);

  // a = 2 I doubles the b form
  const Diffusion two = Diffusion::scalar([](const Point&) { return 2.0; }, [](const Point&) { return Point::Zero().eval(); });
  const Eigen::MatrixXd b1 = local_b(m, 0, 2, Diffusion::identity());
  const Eigen::MatrixXd b2 = local_b(m, 0, 2, two);
  CHECK((b2 - 2.0 * b1).cwiseAbs().maxCoeff() <= 1e-13 * b1.cwiseAbs().maxCoeff());
}
