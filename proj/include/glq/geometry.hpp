#pragma once

#include <algorithm>
#include <cmath>

#include "glq/common.hpp"

namespace glq {

// ---------------------------------------------------------------------------
// Triangle
// ---------------------------------------------------------------------------

// Flat triangle in R^3 with derived edge vectors, area and unit normal.
// Vertices keep the orientation they were supplied with; the normal follows
// the contour convention n = -(l1 x l3) / (2A).
template <class Scalar>
struct Triangle {
  using V = Vec3<Scalar>;

  std::array<V, 3> v;       // vertices
  std::array<V, 3> l;       // edges: l1 = v2-v1, l2 = v3-v2, l3 = v1-v3
  std::array<Scalar, 3> le; // edge lengths
  Scalar area;
  V n;                      // unit normal

  const V& vertex(int i) const { return v[i]; }
  const V& edge(int i) const { return l[i]; }
  Scalar edge_len(int i) const { return le[i]; }
  Scalar longest_edge() const { return std::max({le[0], le[1], le[2]}); }
  Scalar mean_edge() const { return (le[0] + le[1] + le[2]) / Scalar(3); }
};

template <class D1, class D2, class D3,
          class Scalar = typename D1::Scalar>
Triangle<Scalar> triangle_from_vertices(const Eigen::MatrixBase<D1>& v1,
                                        const Eigen::MatrixBase<D2>& v2,
                                        const Eigen::MatrixBase<D3>& v3,
                                        Scalar tol_geom = Scalar(1e-12)) {
  Triangle<Scalar> t;
  t.v = {v1.eval(), v2.eval(), v3.eval()};
  t.l = {v2 - v1, v3 - v2, v1 - v3};
  t.le = {t.l[0].norm(), t.l[1].norm(), t.l[2].norm()};

  const Vec3<Scalar> cr = t.l[0].cross(t.l[2]);
  const Scalar twoA = cr.norm();
  const Scalar lmax = t.longest_edge();
  if (!(twoA > tol_geom * lmax * lmax)) {
    throw DegenerateTriangle("triangle is degenerate (collinear vertices)");
  }
  t.area = twoA / Scalar(2);
  t.n = -cr / twoA;
  return t;
}

// ---------------------------------------------------------------------------
// Standard-triangle chart
// ---------------------------------------------------------------------------

// Affine chart mapping the standard triangle (0,0),(1,0),(0,1) onto the
// physical triangle: X(s,t) = origin + du*s + dv*t.
template <class Scalar>
struct ChartVectors {
  Vec3<Scalar> origin;  // X0 = v1
  Vec3<Scalar> du;      // Xs = v2 - v1
  Vec3<Scalar> dv;      // Xt = v3 - v1
};

template <class Scalar>
ChartVectors<Scalar> chart(const Triangle<Scalar>& t) {
  return {t.v[0], t.v[1] - t.v[0], t.v[2] - t.v[0]};
}

// ---------------------------------------------------------------------------
// Plane relations
// ---------------------------------------------------------------------------

template <class Scalar>
bool planes_parallel(const Triangle<Scalar>& tx, const Triangle<Scalar>& ty,
                     Scalar tol_parallel = Scalar(1e-12)) {
  return std::abs(Scalar(1) - std::abs(tx.n.dot(ty.n))) < tol_parallel;
}

// Signed distance from the plane of tx to the plane of ty, measured along
// the normal of tx. Requires parallel planes.
template <class Scalar>
Scalar signed_plane_distance(const Triangle<Scalar>& tx,
                             const Triangle<Scalar>& ty,
                             Scalar tol_parallel = Scalar(1e-12)) {
  if (!planes_parallel(tx, ty, tol_parallel)) {
    throw NotParallel("triangle planes are not parallel");
  }
  return tx.n.dot(ty.v[0] - tx.v[0]);
}

// ---------------------------------------------------------------------------
// Contact classification
// ---------------------------------------------------------------------------

enum class Touch { NoTouch, OneTouch, TwoTouch, ThreeTouch };

inline const char* to_string(Touch t) {
  switch (t) {
    case Touch::NoTouch: return "no-touch";
    case Touch::OneTouch: return "one-touch";
    case Touch::TwoTouch: return "two-touch";
    case Touch::ThreeTouch: return "three-touch";
  }
  return "?";
}

struct ContactClass {
  Touch kind = Touch::NoTouch;
  int n_matches = 0;
  // matched vertex index pairs (i on tx, j on ty), 0-based
  std::array<std::array<int, 2>, 3> matches{};

  // Edge connecting two vertex indices of one triangle: {0,1}->0, {1,2}->1,
  // {0,2}->2. Valid for the two-touch case.
  static int edge_of(int a, int b) {
    const int s = a + b;
    return s == 1 ? 0 : (s == 3 ? 1 : 2);
  }
};

template <class Scalar>
ContactClass contact_classification(const Triangle<Scalar>& tx,
                                    const Triangle<Scalar>& ty,
                                    Scalar tol_touch = Scalar(1e-12)) {
  const Scalar tol =
      tol_touch * Scalar(0.5) * (tx.mean_edge() + ty.mean_edge());
  ContactClass c;
  std::array<int, 3> y_used = {-1, -1, -1};
  for (int i = 0; i < 3; ++i) {
    int found = -1;
    for (int j = 0; j < 3; ++j) {
      if ((tx.v[i] - ty.v[j]).norm() <= tol) {
        if (found >= 0) {
          throw AmbiguousContact("vertex of tx matches two vertices of ty");
        }
        if (y_used[j] >= 0) {
          throw AmbiguousContact("vertex of ty matches two vertices of tx");
        }
        found = j;
        y_used[j] = i;
      }
    }
    if (found >= 0) {
      c.matches[c.n_matches++] = {i, found};
    }
  }
  switch (c.n_matches) {
    case 0: c.kind = Touch::NoTouch; break;
    case 1: c.kind = Touch::OneTouch; break;
    case 2: c.kind = Touch::TwoTouch; break;
    default: c.kind = Touch::ThreeTouch; break;
  }
  return c;
}

// True where edge i of tx and edge j of ty coincide as segments (either
// direction) under the touch tolerance.
template <class Scalar>
std::array<std::array<bool, 3>, 3> shared_edge_mask(
    const Triangle<Scalar>& tx, const Triangle<Scalar>& ty,
    Scalar tol_touch = Scalar(1e-12)) {
  const Scalar tol =
      tol_touch * Scalar(0.5) * (tx.mean_edge() + ty.mean_edge());
  std::array<std::array<bool, 3>, 3> mask{};
  for (int i = 0; i < 3; ++i) {
    const Vec3<Scalar>& xa = tx.v[i];
    const Vec3<Scalar> xb = tx.v[(i + 1) % 3];
    for (int j = 0; j < 3; ++j) {
      const Vec3<Scalar>& ya = ty.v[j];
      const Vec3<Scalar> yb = ty.v[(j + 1) % 3];
      const bool same = (xa - ya).norm() <= tol && (xb - yb).norm() <= tol;
      const bool flip = (xa - yb).norm() <= tol && (xb - ya).norm() <= tol;
      mask[i][j] = same || flip;
    }
  }
  return mask;
}

}  // namespace glq
