#include "doctest.h"
#include "test_util.hpp"

using namespace glq;
using glq_test::V3;

namespace {

std::vector<Vec3<double>> vecs(std::initializer_list<V3> list) {
  return {list};
}

}  // namespace

TEST_CASE("orthogonalize: independent, dependent, and zero vectors") {
  const auto a = vecs({V3(1, 0, 0), V3(0, 1, 0)});
  const auto os = orthogonalize<double>(a);
  CHECK((os.u[0] - V3(1, 0, 0)).norm() == 0.0);
  CHECK((os.u[1] - V3(0, 1, 0)).norm() == 0.0);
  CHECK_FALSE(os.zero[0]);
  CHECK_FALSE(os.zero[1]);

  const auto dep = vecs({V3(1, 0, 0), V3(2, 0, 0)});
  const auto os2 = orthogonalize<double>(dep);
  CHECK(os2.zero[1]);
  CHECK(os2.u[1].norm() == 0.0);

  // coincident-triangle coefficient set: (l1, -l3, -l1, l3)
  const auto t = glq_test::unit_equilateral();
  const auto sa = vecs({t.l[0], -t.l[2], -t.l[0], t.l[2]});
  const auto os3 = orthogonalize<double>(sa);
  CHECK_FALSE(os3.zero[0]);
  CHECK_FALSE(os3.zero[1]);
  CHECK(os3.zero[2]);
  CHECK(os3.zero[3]);
}

TEST_CASE("orthogonalize: span reconstruction on random sets") {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 500; ++it) {
    const int d = 1 + static_cast<int>(rng() % 4);
    std::vector<Vec3<double>> a;
    double max2 = 0.0;
    for (int i = 0; i < d; ++i) {
      a.push_back(glq_test::random_point(rng, -1.0, 1.0));
      max2 = std::max(max2, a.back().squaredNorm());
    }
    const auto os = orthogonalize<double>(a);
    for (int i = 0; i < d; ++i) {
      // each a_i reconstructs from the u's with the stored coefficients
      V3 rec = V3::Zero();
      for (int k = 0; k <= i; ++k) rec += os.coef(k, i) * os.u[k];
      CHECK((rec - a[static_cast<size_t>(i)]).norm() <=
            1e-12 * std::sqrt(max2) * 10);
      for (int k = 0; k < i; ++k) {
        CHECK(std::abs(os.u[k].dot(os.u[i])) <= 1e-12 * max2 * 10);
      }
    }
  }
}

TEST_CASE("decompose: examples and orthogonality of the remainder") {
  SUBCASE("zero offset") {
    const auto a = vecs({V3(1, 2, 3), V3(0, 1, 0)});
    const auto dec = decompose<double>(V3::Zero(), a);
    CHECK(dec.s0[0] == 0.0);
    CHECK(dec.s0[1] == 0.0);
    CHECK(dec.gap == 0.0);
  }
  SUBCASE("coincident-triangle 3D step admits s = (-1, 0, 0)") {
    const auto t = glq_test::unit_equilateral();
    const auto a = vecs({t.l[0], -t.l[1], -t.l[2]});
    const auto dec = decompose<double>(-t.l[0], a);
    CHECK(dec.s0[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(std::abs(dec.s0[1]) < 1e-14);
    CHECK(std::abs(dec.s0[2]) < 1e-14);
    CHECK(dec.gap < 1e-15);
  }
  SUBCASE("pure perpendicular offset") {
    const auto a = vecs({V3(1, 0, 0), V3(0, 1, 0)});
    const auto dec = decompose<double>(V3(0, 0, 1), a);
    CHECK(dec.s0[0] == 0.0);
    CHECK(dec.s0[1] == 0.0);
    CHECK(dec.gap == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("random sets: e - sum s_i a_i is orthogonal to every a_i") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 10000; ++it) {
      const int d = 1 + static_cast<int>(rng() % 4);
      std::vector<Vec3<double>> a;
      for (int i = 0; i < d; ++i)
        a.push_back(glq_test::random_point(rng, -1.0, 1.0));
      if (it % 3 == 0 && d >= 2) a[1] = 0.7 * a[0];  // force rank deficiency
      const V3 e = glq_test::random_point(rng, -2.0, 2.0);
      const auto dec = decompose<double>(e, a);
      const double scale = e.norm() + 1.0;
      CHECK((dec.e_par + dec.e_perp - e).norm() <= 1e-14 * scale);
      for (int i = 0; i < d; ++i) {
        CHECK(std::abs(dec.e_perp.dot(a[static_cast<size_t>(i)])) <=
              1e-11 * scale);
      }
      CHECK(dec.gap == doctest::Approx(dec.e_perp.norm()).epsilon(1e-14));
    }
  }
}

TEST_CASE("classify_case: the admissible patterns") {
  const double tol = 1e-12;
  auto id = [&](double h1, double h2, double h3, double h4,
                KernelFamily f = KernelFamily::Single) {
    return classify_case(h1, h2, h3, h4, tol, f).id;
  };
  CHECK(id(1, 0, 0, 0) == 1);
  CHECK(id(0, 1, 0, 0) == 2);
  CHECK(id(1, 1, 0, 0) == 3);
  CHECK(id(1, 0, 1, 0) == 4);
  CHECK(id(0, 1, 1, 0) == 5);
  CHECK(id(1, 0, 0, 1) == 6);
  CHECK(id(0, 1, 0, 1) == 7);
  CHECK(id(0, 0, 0, 0, KernelFamily::Hat) == 8);
  // sub-threshold gaps snap to zero
  CHECK(id(1, 1e-15, 0, 0) == 1);

  CHECK_THROWS_AS(classify_case(1.0, 1.0, 1.0, 0.0, tol,
                                KernelFamily::Single),
                  InvalidGapPattern);  // three nonzero gaps
  CHECK_THROWS_AS(classify_case(0.0, 0.0, 1.0, 0.0, tol,
                                KernelFamily::Single),
                  InvalidGapPattern);  // h1 + h2 = 0 with h3 > 0
  CHECK_THROWS_AS(classify_case(0.0, 0.0, 1.0, 1.0, tol,
                                KernelFamily::Single),
                  InvalidGapPattern);  // h3 h4 != 0
  CHECK_THROWS_AS(classify_case(0.0, 0.0, 0.0, 0.0, tol,
                                KernelFamily::Single),
                  InvalidGapPattern);  // all zero outside the hat family
}
