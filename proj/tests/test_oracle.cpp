#include <chrono>

#include "doctest.h"
#include "test_util.hpp"

using namespace glq;
using glq_test::V3;

TEST_CASE("quad_reference: published benchmark values and symmetry") {
  const auto [tx, ty] = glq_test::benchmark_pair(1);
  const auto qL = quad_reference(tx, ty, WhichIntegral::L, 1e-12);
  CHECK(std::abs(qL.value - 0.139757030669707) <= 1e-12);
  CHECK(qL.error_estimate >= 0.0);
  CHECK(qL.evaluations > 0);

  const auto qLswap = quad_reference(ty, tx, WhichIntegral::L, 1e-10);
  CHECK(std::abs(qLswap.value - qL.value) <= 2e-10 * qL.value);

  const auto qM = quad_reference(tx, ty, WhichIntegral::M, 1e-11);
  CHECK(std::abs(qM.value - 0.099860729206614) <= 1e-10);

  const auto qMp = quad_reference(tx, ty, WhichIntegral::Mp, 1e-11);
  CHECK(std::abs(qMp.value - 0.046564310284965) <= 1e-10);
}

TEST_CASE("quad_reference: double layer vanishes for coplanar pairs") {
  const auto tx = glq_test::unit_equilateral();
  const auto ty = triangle_from_vertices(V3(3, 0, 0), V3(4, 0, 0),
                                         V3(3.5, 1, 0));
  const auto q = quad_reference(tx, ty, WhichIntegral::M, 1e-11);
  CHECK(std::abs(q.value) <= 1e-11);
}

TEST_CASE("quad_reference: halving the tolerance stays within the estimate") {
  std::mt19937_64 rng(64);
  const auto [tx, ty] = glq_test::random_separated_pair(rng);
  const auto q1 = quad_reference(tx, ty, WhichIntegral::L, 1e-8);
  const auto q2 = quad_reference(tx, ty, WhichIntegral::L, 5e-9);
  CHECK(std::abs(q1.value - q2.value) <= 2.0 * q1.error_estimate +
                                             q2.error_estimate);
}

TEST_CASE("quad_reference: all six outputs vs the analytic path") {
  std::mt19937_64 rng(4096);
  for (int it = 0; it < 3; ++it) {
    const auto [tx, ty] = glq_test::random_separated_pair(rng);
    const auto g = galerkin_all(tx, ty);
    const double tol = 1e-10;
    const auto check = [&](WhichIntegral w, double analytic) {
      const auto q = quad_reference(tx, ty, w, tol);
      CHECK(std::abs(analytic - q.value) <= 10.0 * q.error_estimate);
    };
    check(WhichIntegral::L, g.L);
    check(WhichIntegral::M, g.M);
    check(WhichIntegral::LpX, g.Lp.x());
    check(WhichIntegral::LpY, g.Lp.y());
    check(WhichIntegral::LpZ, g.Lp.z());
    check(WhichIntegral::Mp, g.Mp);
  }
}

TEST_CASE("convergence sweep: geometries, references, and rates") {
  SUBCASE("references equal the analytic evaluation at eps = 0") {
    for (const SweepKind k :
         {SweepKind::OneTouch, SweepKind::TwoTouch}) {
      const auto ref = sweep_reference<double>(k);
      const auto [tx, ty] = sweep_geometry<double>(k, 0.0);
      const auto g = galerkin_all(tx, ty);
      CHECK(std::abs(g.L - ref.L0) <= 1e-12);
      CHECK(std::abs(g.M - ref.M0) <= 1e-12);
    }
    const auto ref3 = sweep_reference<double>(SweepKind::ThreeTouch);
    CHECK(ref3.L0 == doctest::Approx(0.75 * std::log(3.0)).epsilon(1e-15));
  }
  SUBCASE("one-touch: linear convergence of all three integrals") {
    std::vector<double> eps;
    for (double e = 1e-2; e >= 0.9e-5; e /= 10.0) eps.push_back(e);
    const auto rec = convergence_sweep<double>(SweepKind::OneTouch, eps);
    std::vector<double> rl, rm, rmp;
    for (const auto& r : rec) {
      rl.push_back(r.rel_L);
      rm.push_back(r.rel_M);
      rmp.push_back(r.rel_Mp);
    }
    CHECK(fit_loglog_slope<double>(eps, rl) == doctest::Approx(1.0).epsilon(0.1));
    CHECK(fit_loglog_slope<double>(eps, rm) == doctest::Approx(1.0).epsilon(0.1));
    CHECK(fit_loglog_slope<double>(eps, rmp) ==
          doctest::Approx(1.0).epsilon(0.1));
  }
  SUBCASE("two-touch: L and M linear, M' follows eps/log(1/eps)") {
    std::vector<double> eps;
    for (double e = 1e-2; e >= 0.9e-5; e /= 10.0) eps.push_back(e);
    const auto rec = convergence_sweep<double>(SweepKind::TwoTouch, eps);
    std::vector<double> rl, rm;
    for (const auto& r : rec) {
      rl.push_back(r.rel_L);
      rm.push_back(r.rel_M);
    }
    CHECK(fit_loglog_slope<double>(eps, rl) == doctest::Approx(1.0).epsilon(0.1));
    CHECK(fit_loglog_slope<double>(eps, rm) == doctest::Approx(1.0).epsilon(0.1));
    // one-point-calibrated eps/log(1/eps) model over two decades
    const double c0 =
        rec[2].rel_Mp / (rec[2].eps / std::log(1.0 / rec[2].eps));
    for (size_t i = 2; i < rec.size(); ++i) {
      const double model =
          c0 * rec[i].eps / std::log(1.0 / rec[i].eps);
      CHECK(std::abs(rec[i].rel_Mp - model) <= 0.2 * std::abs(model));
    }
  }
  SUBCASE("three-touch: M' follows eps/log(1/eps) against the edge model") {
    std::vector<double> eps;
    for (double e = 1e-3; e >= 0.9e-6; e /= 10.0) eps.push_back(e);
    const auto rec = convergence_sweep<double>(SweepKind::ThreeTouch, eps);
    const double c0 =
        rec[1].rel_Mp / (rec[1].eps / std::log(1.0 / rec[1].eps));
    for (size_t i = 1; i < rec.size(); ++i) {
      const double model =
          c0 * rec[i].eps / std::log(1.0 / rec[i].eps);
      CHECK(std::abs(rec[i].rel_Mp - model) <= 0.2 * std::abs(model));
    }
  }
}

TEST_CASE("slope fit: exact power law and noise-floor exclusion") {
  std::vector<double> eps, rel;
  for (double e = 1e-2; e >= 1e-6; e /= 10.0) {
    eps.push_back(e);
    rel.push_back(3.0 * e * e);
  }
  CHECK(fit_loglog_slope<double>(eps, rel) ==
        doctest::Approx(2.0).epsilon(1e-12));
  // points below the noise floor do not poison the fit
  rel.back() = 1e-18;
  eps.back() = 1e-10;
  CHECK(fit_loglog_slope<double>(eps, rel) ==
        doctest::Approx(2.0).epsilon(1e-6));
}
