#include "doctest.h"
#include "test_util.hpp"

using namespace glq;
using glq_test::V3;

namespace {

const ReductionOptions<double> kOpts{1e-24, 1e-10, 1e-14};

// Level-d integral of the reduction integrand G_d(R_d(s)) over the standard
// domain, by nested adaptive quadrature. Independent of reduce() except for
// the closed-form source one level up.
double domain_quad(const ReductionParams<double>& p, int leaf_case) {
  const QuadControl<double> ctl{1e-11, 0.0, 0.0, 4000};
  GapSet<double> gaps = p.inherited;
  const PbfCase c{leaf_case};
  const auto source = [&](const V3& r) {
    return pbf_source(p.d, p.family, c, r.norm(), gaps);
  };
  switch (p.d) {
    case 1:
      return adaptive_quadrature<double>(
          [&](double s) { return source(p.a[0] * s + p.e); }, 0.0, 1.0, ctl);
    case 2: {
      const auto inner = [&](double s1) {
        const double hi = p.domain == Domain2D::Square ? 1.0 : 1.0 - s1;
        return adaptive_quadrature<double>(
            [&](double s2) {
              return source(p.a[0] * s1 + p.a[1] * s2 + p.e);
            },
            0.0, hi, ctl);
      };
      return adaptive_quadrature<double>(inner, 0.0, 1.0, ctl);
    }
    case 3: {
      const auto inner2 = [&](double s1) {
        return adaptive_quadrature<double>(
            [&](double s2) {
              return adaptive_quadrature<double>(
                  [&](double s3) {
                    return source(p.a[0] * s1 + p.a[1] * s2 + p.a[2] * s3 +
                                  p.e);
                  },
                  0.0, 1.0, ctl);
            },
            0.0, 1.0 - s1, ctl);
      };
      return adaptive_quadrature<double>(inner2, 0.0, 1.0, ctl);
    }
    default: {
      const auto inner3 = [&](double s1, double s2) {
        return adaptive_quadrature<double>(
            [&](double s3) {
              return adaptive_quadrature<double>(
                  [&](double s4) {
                    return source(p.a[0] * s1 + p.a[1] * s2 + p.a[2] * s3 +
                                  p.a[3] * s4 + p.e);
                  },
                  0.0, 1.0 - s3, ctl);
            },
            0.0, 1.0, ctl);
      };
      const auto inner1 = [&](double s1) {
        return adaptive_quadrature<double>(
            [&](double s2) { return inner3(s1, s2); }, 0.0, 1.0 - s1, ctl);
      };
      return adaptive_quadrature<double>(inner1, 0.0, 1.0, ctl);
    }
  }
}

// The leaf case only matters for chain dispatch in pbf_source; any id that
// is admissible for the family works for the quadrature comparison.
int case_for(const ReductionParams<double>& p) {
  return p.family == KernelFamily::Primed ? 6 : 1;
}

}  // namespace

TEST_CASE("init_4d: parameter assembly") {
  const auto t = glq_test::unit_equilateral();

  SUBCASE("coincident pair") {
    const auto p = init_4d(t, t);
    CHECK(p.d == 4);
    CHECK((p.e).norm() == 0.0);
    CHECK((p.a[2] + p.a[0]).norm() == 0.0);
    CHECK((p.a[3] + p.a[1]).norm() == 0.0);
    CHECK((p.a[0] - t.l[0]).norm() == 0.0);
    CHECK((p.a[1] + t.l[2]).norm() == 0.0);
  }
  SUBCASE("benchmark pair 1 offset") {
    const auto [tx, ty] = glq_test::benchmark_pair(1);
    const auto p = init_4d(tx, ty);
    CHECK((p.e - V3(-1, 0, -1)).norm() == 0.0);
  }
  SUBCASE("jacobian identity") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 20; ++i) {
      const auto [tx, ty] = glq_test::random_separated_pair(rng);
      const auto p = init_4d(tx, ty);
      CHECK(p.a[0].cross(p.a[1]).norm() ==
            doctest::Approx(2.0 * tx.area).epsilon(1e-13));
    }
  }
}

TEST_CASE("expand_4d: weights and the coincident-pair structure") {
  const auto t = glq_test::unit_equilateral();
  const auto p = init_4d(t, t);
  const auto dec = decompose(p.e, p.coeffs(), kOpts.rank_tol);
  CHECK(dec.gap == 0.0);
  for (int i = 0; i < 4; ++i) CHECK(dec.s0[i] == 0.0);

  const auto faces = expand_4d(p, dec);
  REQUIRE(faces.count == 6);
  // only the two hypotenuse prisms carry weight
  CHECK(faces.items[0].weight == 0.0);
  CHECK(faces.items[1].weight == 1.0);
  CHECK(faces.items[2].weight == 0.0);
  CHECK(faces.items[3].weight == 0.0);
  CHECK(faces.items[4].weight == 1.0);
  CHECK(faces.items[5].weight == 0.0);

  // prism 2 carries (l1, -l3, -l2 | -l1); prism 5 is its sign flip
  const auto& c2 = faces.items[1].child;
  CHECK((c2.a[0] - t.l[0]).norm() == 0.0);
  CHECK((c2.a[1] + t.l[2]).norm() == 0.0);
  CHECK((c2.a[2] + t.l[1]).norm() == 0.0);
  CHECK((c2.e + t.l[0]).norm() == 0.0);
  const auto& c5 = faces.items[4].child;
  CHECK((c5.a[0] + c2.a[0]).norm() == 0.0);
  CHECK((c5.a[1] + c2.a[1]).norm() == 0.0);
  CHECK((c5.a[2] + c2.a[2]).norm() == 0.0);
  CHECK((c5.e + c2.e).norm() == 0.0);

  // U = 2 I_3(l1, -l3, -l2 | -l1)
  const double U = reduce(p, kOpts);
  CHECK(reduce(c2, kOpts) == doctest::Approx(U / 2.0).epsilon(1e-13));
}

TEST_CASE("reduce: matches direct quadrature level by level") {
  std::mt19937_64 rng(99);
  for (int n_pairs = 1; n_pairs <= 4; ++n_pairs) {
    const auto [tx, ty] = glq_test::random_separated_pair(rng);
    auto p4 = init_4d(tx, ty);
    const double U = reduce(p4, kOpts);
    CHECK(U == doctest::Approx(domain_quad(p4, case_for(p4))).epsilon(2e-9));

    auto dec4 = decompose(p4.e, p4.coeffs(), kOpts.rank_tol);
    if (dec4.gap <= kOpts.zero_tol) dec4.gap = 0.0;
    const auto prisms = expand_4d(p4, dec4);
    // one prism, then every face of it, then every edge of one face
    const auto& p3 = prisms.items[static_cast<size_t>(n_pairs % 6)].child;
    CHECK(reduce(p3, kOpts) ==
          doctest::Approx(domain_quad(p3, case_for(p3))).epsilon(2e-9));

    auto dec3 = decompose(p3.e, p3.coeffs(), kOpts.rank_tol);
    if (dec3.gap <= kOpts.zero_tol) dec3.gap = 0.0;
    const auto faces = expand_3d(p3, dec3);
    for (int k = 0; k < faces.count; ++k) {
      const auto& p2 = faces.items[static_cast<size_t>(k)].child;
      CHECK(reduce(p2, kOpts) ==
            doctest::Approx(domain_quad(p2, case_for(p2))).epsilon(2e-9));
    }

    const auto& p2 = faces.items[1].child;
    auto dec2 = decompose(p2.e, p2.coeffs(), kOpts.rank_tol);
    if (dec2.gap <= kOpts.zero_tol) dec2.gap = 0.0;
    const auto edges = expand_2d(p2, dec2);
    for (int k = 0; k < edges.count; ++k) {
      const auto& p1 = edges.items[static_cast<size_t>(k)].child;
      CHECK(eval_1d(p1, kOpts) ==
            doctest::Approx(domain_quad(p1, case_for(p1))).epsilon(2e-9));
    }
  }
}

TEST_CASE("reduce: primed family between parallel planes") {
  std::mt19937_64 rng(12);
  for (int it = 0; it < 3; ++it) {
    const auto tx = glq_test::random_triangle(rng);
    // receiver: a second random triangle flattened into a parallel plane at
    // distance 1.5 + it along the normal of tx
    const auto ty0 = glq_test::random_triangle(rng);
    const V3 base = tx.v[0] + tx.n * (1.5 + it);
    auto proj = [&](const V3& q) {
      return q - (q - base).dot(tx.n) * tx.n;
    };
    const auto ty = triangle_from_vertices(proj(ty0.v[0]), proj(ty0.v[1]),
                                           proj(ty0.v[2]));
    auto p = init_4d(tx, ty, KernelFamily::Primed);
    CHECK(reduce(p, kOpts) ==
          doctest::Approx(domain_quad(p, 6)).epsilon(2e-9));
  }
}

TEST_CASE("reduce: sign-flip invariance of the parameters") {
  std::mt19937_64 rng(8);
  for (int it = 0; it < 20; ++it) {
    const auto [tx, ty] = glq_test::random_separated_pair(rng);
    auto p = init_4d(tx, ty);
    auto q = p;
    for (auto& a : q.a) a = -a;
    q.e = -q.e;
    CHECK(reduce(p, kOpts) ==
          doctest::Approx(reduce(q, kOpts)).epsilon(1e-13));
  }
}

TEST_CASE("pair tree: leaf count bound and equivalence with reduce") {
  std::mt19937_64 rng(44);
  for (int it = 0; it < 25; ++it) {
    const auto [tx, ty] = glq_test::random_separated_pair(rng);
    PairReduction<double> tree(tx, ty, kOpts);
    const int n = tree.leaf_eval_count();
    CHECK(n < 240);
    CHECK(n > 0);
    // the tree total equals the recursive evaluation bit for bit
    auto p = init_4d(tx, ty);
    CHECK(tree.total(KernelFamily::Single) == reduce(p, kOpts));
  }
}

TEST_CASE("eval_1d: known closed forms and the divergence guard") {
  SUBCASE("perpendicular unit offset") {
    ReductionParams<double> p;
    p.d = 1;
    p.a = {V3(1, 0, 0), V3::Zero(), V3::Zero(), V3::Zero()};
    p.e = V3(0, 0, 1);
    p.family = KernelFamily::Single;
    // I_1 = F_1(P=1; h1=1) = asinh(1)/6, the s=0 endpoint carries no weight
    CHECK(eval_1d(p, kOpts) ==
          doctest::Approx(std::asinh(1.0) / 6.0).epsilon(1e-14));
  }
  SUBCASE("anti-collinear one-touch hypersingular edges") {
    // I_1(-l_y, l_x) with l_y = lambda l_x, lambda < 0: (1/l_y) log(1-lambda)
    const double lambda = -0.75, lx = 1.3;
    ReductionParams<double> p;
    p.d = 1;
    p.a = {V3(-lambda * lx, 0, 0), V3::Zero(), V3::Zero(), V3::Zero()};
    p.e = V3(lx, 0, 0);
    p.family = KernelFamily::Hat;
    const double ly = std::abs(lambda) * lx;
    CHECK(eval_1d(p, kOpts) ==
          doctest::Approx(std::log(1.0 - lambda) / ly).epsilon(1e-14));
  }
  SUBCASE("overlapping collinear edges diverge") {
    ReductionParams<double> p;
    p.d = 1;
    p.a = {V3(2, 0, 0), V3::Zero(), V3::Zero(), V3::Zero()};
    p.e = V3(-1, 0, 0);
    p.family = KernelFamily::Hat;
    CHECK_THROWS_AS(eval_1d(p, kOpts), DivergentEdgeIntegral);
  }
}
