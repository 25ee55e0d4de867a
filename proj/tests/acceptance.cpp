// Acceptance suite: one PASS/FAIL line per criterion, with the measured
// values on indented lines below it. Exits 0 unless --strict is given, in
// which case any FAIL gives exit code 1.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "pdwg/study.hpp"

using namespace pdwg;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Criterion {
  std::string name;
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const char* fmt, ...) __attribute__((format(printf, 3, 4))) {
    char buf[256];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    notes.push_back(std::string(ok ? "ok   " : "MISS ") + buf);
    pass = pass && ok;
  }
};

double order_of(const ConvergenceReport& r, std::size_t fine, double ErrorReport::*field) {
  const LevelResult& c = r.levels[fine - 1];
  const LevelResult& f = r.levels[fine];
  return observed_order(c.errors.*field, f.errors.*field, c.n, f.n).value_or(NAN);
}

bool in(double x, double lo, double hi) { return x >= lo && x <= hi; }

bool within_factor(double x, double ref, double factor) { return x >= ref / factor && x <= ref * factor; }

ConvergenceReport ladder(const char* id, Criterion& c) {
  const ConvergenceReport r = run_study(find_case(id), {1, 2, 4, 8, 16, 32}, 1);
  for (const LevelResult& l : r.levels) {
    if (!l.ok()) c.check(false, "%s n=%d failed: %s", id, l.n, l.message.c_str());
  }
  return r;
}

void optimal_windows(const ConvergenceReport& r, Criterion& c) {
  const std::size_t last = r.levels.size() - 1;
  for (std::size_t i : {last - 1, last}) {
    const double l2 = order_of(r, i, &ErrorReport::l2_e0);
    const double h1 = order_of(r, i, &ErrorReport::h1_e0);
    const double res = order_of(r, i, &ErrorReport::resid_u);
    const int n = r.levels[i].n;
    c.check(in(l2, 1.85, 2.15), "%s order ||e0|| at n=%d: %.4f in [1.85, 2.15]", r.case_id.c_str(), n, l2);
    c.check(in(h1, 0.85, 1.15), "%s order ||grad e0|| at n=%d: %.4f in [0.85, 1.15]", r.case_id.c_str(), n, h1);
    c.check(in(res, 0.9, 1.1), "%s order |||e_h||| at n=%d: %.4f in [0.9, 1.1]", r.case_id.c_str(), n, res);
  }
}

Criterion criterion1() {
  Criterion c{"1 polynomial exactness (t1, t2; n = 1..8)"};
  const auto start = Clock::now();
  for (const char* id : {"t1", "t2"}) {
    const ConvergenceReport r = run_study(find_case(id), {1, 2, 4, 8}, 1);
    double worst = 0.0;
    for (const LevelResult& l : r.levels) {
      if (!l.ok()) c.check(false, "%s n=%d failed", id, l.n);
      worst = std::max({worst, l.errors.l2_e0, l.errors.h1_e0, l.errors.resid_u});
    }
    c.check(worst <= 1e-9, "%s largest of ||e0||, ||grad e0||, |||e_h|||: %.3e <= 1e-9", id, worst);
  }
  const double t = seconds_since(start);
  c.check(t < 5.0, "runtime %.2f s < 5 s", t);
  return c;
}

Criterion criterion2() {
  Criterion c{"2 optimal orders and magnitudes (t3)"};
  const auto start = Clock::now();
  const ConvergenceReport r = ladder("t3", c);
  optimal_windows(r, c);
  const ErrorReport& e = r.levels.back().errors;
  c.check(within_factor(e.l2_e0, 9.75e-5, 2.0), "||e0|| at n=32: %.4e vs 9.75e-5 (factor %.2f)", e.l2_e0, 9.75e-5 / e.l2_e0);
  c.check(within_factor(e.h1_e0, 2.555e-3, 2.0), "||grad e0|| at n=32: %.4e vs 2.555e-3 (factor %.2f)", e.h1_e0,
          2.555e-3 / e.h1_e0);
  c.check(within_factor(e.resid_u, 4.546e-2, 2.0), "|||e_h||| at n=32: %.4e vs 4.546e-2 (factor %.2f)", e.resid_u,
          4.546e-2 / e.resid_u);
  const double t = seconds_since(start);
  c.check(t < 60.0, "runtime %.2f s < 60 s", t);
  return c;
}

Criterion criterion3() {
  Criterion c{"3 well-posed mixed problem (t6)"};
  const ConvergenceReport r = ladder("t6", c);
  optimal_windows(r, c);
  const double l2 = r.levels.back().errors.l2_e0;
  c.check(within_factor(l2, 1.68e-4, 2.0), "||e0|| at n=32: %.4e vs 1.68e-4 (factor %.2f)", l2, 1.68e-4 / l2);
  return c;
}

Criterion criterion4() {
  Criterion c{"4 superconvergence for u = xy (t11)"};
  const ConvergenceReport r = ladder("t11", c);
  const std::size_t last = r.levels.size() - 1;
  for (std::size_t i : {last - 1, last}) {
    const double res = order_of(r, i, &ErrorReport::resid_u);
    c.check(res >= 1.7, "order |||e_h||| at n=%d: %.4f >= 1.7", r.levels[i].n, res);
  }
  const double l2 = order_of(r, last, &ErrorReport::l2_e0);
  c.check(l2 >= 2.2, "order ||e0|| at n=32: %.4f >= 2.2", l2);
  return c;
}

Criterion criterion5() {
  Criterion c{"5 multiplier decay (t3, t6)"};
  for (const char* id : {"t3", "t6"}) {
    const ConvergenceReport r = ladder(id, c);
    const std::size_t last = r.levels.size() - 1;
    for (std::size_t i : {last - 1, last}) {
      const double o = order_of(r, i, &ErrorReport::resid_lambda);
      c.check(o >= 0.9, "%s order |||lambda_h||| at n=%d: %.4f >= 0.9", id, r.levels[i].n, o);
    }
  }
  return c;
}

// (a) weak gradient of Q_h u equals the projection of grad u
void commutativity(Criterion& c) {
  struct Poly {
    ScalarFunction u;
    VectorFunction g;
  };
  const std::vector<Poly> polys = {
      {[](const Point& p) { return 2.0 - p.x() + 0.5 * p.y(); }, [](const Point&) { return Point(-1.0, 0.5); }},
      {[](const Point& p) { return p.x() * p.x() - 3.0 * p.x() * p.y() + p.y(); },
       [](const Point& p) { return Point(2.0 * p.x() - 3.0 * p.y(), -3.0 * p.x() + 1.0); }},
      {[](const Point& p) { return p.y() * p.y() + p.x(); }, [](const Point& p) { return Point(1.0, 2.0 * p.y()); }},
  };
  double worst = 0.0;
  for (int n : {1, 2, 4}) {
    const Mesh m = build_uniform_mesh(n);
    for (int k : {1, 2}) {
      LocalOperators ops(m, k);
      for (const Poly& p : polys) {
        const PiecewiseVectorField a = ops.weak_gradient(project_Qh(p.u, m, k));
        const PiecewiseVectorField b = project_calQh(p.g, m, k);
        for (int t = 0; t < m.n_triangles(); ++t) worst = std::max(worst, (a.coefficients[t] - b.coefficients[t]).cwiseAbs().maxCoeff());
      }
    }
  }
  c.check(worst <= 1e-11, "(a) commutativity, k = 1, 2, degree <= 2: max difference %.3e <= 1e-11", worst);
}

// (b) weak gradient against the least-squares oracle
void oracle_equivalence(Criterion& c) {
  std::mt19937 rng(2024);
  const Mesh m = build_uniform_mesh(2);
  double worst = 0.0;
  for (int k : {1, 2}) {
    const DofLayout layout(m, k);
    for (int trial = 0; trial < 100; ++trial) {
      const int t = trial % m.n_triangles();
      const Eigen::VectorXd v = oracle::random_vector(layout.local_size(), rng);
      const Eigen::VectorXd g = weak_gradient(m, t, k, v);
      PiecewiseVectorField f;
      f.degree = k - 1;
      f.coefficients.assign(m.n_triangles(), Eigen::VectorXd());
      f.coefficients[t] = g;
      const oracle::WeakGradient ref = oracle::weak_gradient(m, t, k, v);
      for (const Point& p : m.triangle_points(t)) worst = std::max(worst, (f.value(m, t, p) - ref.value(p)).norm());
    }
  }
  c.check(worst <= 1e-12, "(b) oracle equivalence, 100 vectors per k = 1, 2: max difference %.3e <= 1e-12", worst);
}

double max_abs(const Eigen::SparseMatrix<double>& a) {
  double m = 0.0;
  for (int j = 0; j < a.outerSize(); ++j) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(a, j); it; ++it) m = std::max(m, std::abs(it.value()));
  }
  return m;
}

const std::vector<std::pair<std::set<Side>, std::set<Side>>>& configurations() {
  static const std::vector<std::pair<std::set<Side>, std::set<Side>>> configs = {
      {{Side::Bottom}, {Side::Bottom}},
      {{Side::Bottom, Side::Left}, {Side::Right, Side::Top}},
      {{Side::Bottom, Side::Right, Side::Left}, {Side::Bottom, Side::Right, Side::Top}},
  };
  return configs;
}

// (c) symmetry of the assembled matrix
void symmetry(Criterion& c) {
  const Mesh m = build_uniform_mesh(4);
  double worst = 0.0;
  for (const auto& [d, n] : configurations()) {
    CaseSpec cs = find_case("t3");
    cs.dirichlet_sides = d;
    cs.neumann_sides = n;
    const SaddleSystem s = assemble(m, classify_boundary(m, d, n), cs, 1);
    const Eigen::SparseMatrix<double> diff = s.matrix - Eigen::SparseMatrix<double>(s.matrix.transpose());
    worst = std::max(worst, max_abs(diff) / max_abs(s.matrix));
  }
  c.check(worst <= 1e-12, "(c) symmetry on n=4, three configurations: relative asymmetry %.3e <= 1e-12", worst);
}

// (d) homogeneous data gives zero
void homogeneous(Criterion& c) {
  ProblemData zero;
  zero.f = [](const Point&) { return 0.0; };
  zero.g1 = [](const Point&) { return 0.0; };
  zero.g2 = [](const Point&, const Point&) { return 0.0; };
  double worst = 0.0;
  bool solved = true;
  for (int n : {1, 2, 4, 8}) {
    const Mesh m = build_uniform_mesh(n);
    LocalOperators ops(m, 1);
    for (const auto& [d, nn] : configurations()) {
      const SolveResult r = solve(assemble(ops, classify_boundary(m, d, nn), zero));
      solved = solved && r.ok();
      worst = std::max({worst, r.u.coefficients().cwiseAbs().maxCoeff(), r.lambda.coefficients().cwiseAbs().maxCoeff()});
    }
  }
  c.check(solved && worst <= 1e-10, "(d) homogeneous data, n = 1..8: max coefficient %.3e <= 1e-10", worst);
}

// (e) ratio of strong to weak multiplier norms
void norm_equivalence(Criterion& c) {
  const CaseSpec& cs = find_case("t6");
  std::mt19937 rng(77);
  double lo = 0.0, hi = 0.0, all_lo = INFINITY, all_hi = 0.0;
  bool bounded = true;
  for (int n : {2, 4, 8, 16, 32}) {
    const Mesh m = build_uniform_mesh(n);
    const BoundaryConfig config = classify_boundary(m, cs.dirichlet_sides, cs.neumann_sides);
    LocalOperators ops(m, 1);
    const DofLayout layout(m, 1);
    for (int trial = 0; trial < 20; ++trial) {
      WeakFunction v(layout, oracle::random_vector(layout.n_dofs(), rng));
      for (int e = 0; e < m.n_edges(); ++e) {
        if (config.in_gamma_n_complement(e)) v.boundary(e).setZero();
      }
      const double ratio = strong_residual_norms(v, ops, config).second / residual_norm_lambda(v, ops, config);
      all_lo = std::min(all_lo, ratio);
      all_hi = std::max(all_hi, ratio);
      if (n == 2) {
        lo = trial == 0 ? ratio : std::min(lo, ratio);
        hi = trial == 0 ? ratio : std::max(hi, ratio);
      } else {
        bounded = bounded && ratio >= lo / 3.0 && ratio <= hi * 3.0;
      }
    }
  }
  c.check(bounded, "(e) norm ratio: n=2 interval [%.4f, %.4f], all levels [%.4f, %.4f], slack 3", lo, hi, all_lo, all_hi);
}

Criterion criterion6() {
  Criterion c{"6 property suite"};
  const auto start = Clock::now();
  commutativity(c);
  oracle_equivalence(c);
  symmetry(c);
  homogeneous(c);
  norm_equivalence(c);
  const double t = seconds_since(start);
  c.check(t < 30.0, "runtime %.2f s < 30 s", t);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  const bool strict = argc > 1 && std::strcmp(argv[1], "--strict") == 0;
  const std::vector<std::function<Criterion()>> criteria = {criterion1, criterion2, criterion3,
                                                            criterion4, criterion5, criterion6};
  int failed = 0;
  for (const auto& run : criteria) {
    Criterion c;
    try {
      c = run();
    } catch (const std::exception& e) {
      c.check(false, "exception: %s", e.what());
    }
    std::printf("%s  %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str());
    for (const std::string& note : c.notes) std::printf("        %s\n", note.c_str());
    std::fflush(stdout);
    failed += c.pass ? 0 : 1;
  }
  std::printf("EXCLUDED  7 weak-L2 dual-norm bound (supremum over all test data is not computable)\n");
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return strict && failed > 0 ? 1 : 0;
}
