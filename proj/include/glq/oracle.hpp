#pragma once

#include <functional>
#include <numbers>
#include <vector>

#include "glq/potentials.hpp"
#include "glq/quadrature.hpp"

namespace glq {

// Independent verification: error-controlled quadrature of the defining
// integrals in their iterated standard-triangle form, the single-integral
// characterization of each PBF, and the touching-case convergence harness.

template <class Scalar>
struct QuadResult {
  Scalar value = Scalar(0);
  Scalar error_estimate = Scalar(0);
  std::int64_t evaluations = 0;
};

enum class WhichIntegral { L, M, LpX, LpY, LpZ, Mp };

// ---------------------------------------------------------------------------
// Reference quadrature of the pair integrals (regular configurations only)
// ---------------------------------------------------------------------------

template <class Scalar>
QuadResult<Scalar> quad_reference(const Triangle<Scalar>& tx,
                                  const Triangle<Scalar>& ty,
                                  WhichIntegral which,
                                  Scalar tol = Scalar(1e-10)) {
  const auto cx = chart(tx);
  const auto cy = chart(ty);

  const auto integrand = [&](Scalar s, Scalar t, Scalar u,
                             Scalar v) -> Scalar {
    const Vec3<Scalar> x = cx.origin + cx.du * s + cx.dv * t;
    const Vec3<Scalar> y = cy.origin + cy.du * u + cy.dv * v;
    const Vec3<Scalar> r = x - y;
    const Scalar rn = r.norm();
    switch (which) {
      case WhichIntegral::L:
        return Scalar(1) / rn;
      case WhichIntegral::M:
        return -tx.n.dot(r) / (rn * rn * rn);
      case WhichIntegral::LpX:
        return r.x() / (rn * rn * rn);
      case WhichIntegral::LpY:
        return r.y() / (rn * rn * rn);
      case WhichIntegral::LpZ:
        return r.z() / (rn * rn * rn);
      case WhichIntegral::Mp:
      default: {
        const Scalar r3 = rn * rn * rn;
        return tx.n.dot(ty.n) / r3 -
               Scalar(3) * tx.n.dot(r) * ty.n.dot(r) / (r3 * rn * rn);
      }
    }
  };

  QuadResult<Scalar> out;
  // per-level controls; inner levels run tighter so their noise stays below
  // the outer error estimates, and each level's target floors at the noise
  // the level below leaves in its integrand
  QuadControl<Scalar> c_u{tol, Scalar(0), tol / Scalar(4), 4000};
  QuadControl<Scalar> c_v{tol / Scalar(4), Scalar(0), tol / Scalar(16),
                          4000};
  QuadControl<Scalar> c_s{tol / Scalar(16), Scalar(0), tol / Scalar(64),
                          4000};
  QuadControl<Scalar> c_t{tol / Scalar(64), Scalar(0), Scalar(0), 4000};

  const auto inner_t = [&](Scalar s, Scalar u, Scalar v) {
    return adaptive_quadrature<Scalar>(
        [&](Scalar t) { return integrand(s, t, u, v); }, Scalar(0),
        Scalar(1) - s, c_t, nullptr, &out.evaluations);
  };
  const auto inner_s = [&](Scalar u, Scalar v) {
    return adaptive_quadrature<Scalar>(
        [&](Scalar s) { return inner_t(s, u, v); }, Scalar(0), Scalar(1),
        c_s);
  };
  const auto inner_v = [&](Scalar u) {
    return adaptive_quadrature<Scalar>(
        [&](Scalar v) { return inner_s(u, v); }, Scalar(0), Scalar(1) - u,
        c_v);
  };
  out.value = Scalar(4) * tx.area * ty.area *
              adaptive_quadrature<Scalar>(inner_v, Scalar(0), Scalar(1), c_u,
                                          &out.error_estimate);
  out.error_estimate *= Scalar(4) * tx.area * ty.area;
  out.error_estimate = std::max(out.error_estimate,
                                std::abs(out.value) * tol);
  return out;
}

// ---------------------------------------------------------------------------
// PBF oracle
// ---------------------------------------------------------------------------

namespace oracle_detail {

template <class Scalar>
int chain_top(KernelFamily f) {
  switch (f) {
    case KernelFamily::Tilde: return 3;
    case KernelFamily::Hat: return 2;
    default: return 4;
  }
}

template <class Scalar>
Scalar chain_kernel(KernelFamily f, Scalar R, const GapSet<Scalar>& g) {
  switch (f) {
    case KernelFamily::Primed: return Scalar(1) / (R * R * R);
    case KernelFamily::Tilde:
      return Scalar(1) / std::sqrt(R * R + g.h4 * g.h4);
    default: return Scalar(1) / R;  // Single, Hat
  }
}

// F_d by quadrature of its defining integral, with every level above d also
// integrated numerically (no closed forms anywhere in the chain). Inner
// levels run at a modest fixed tolerance: the evaluation count multiplies
// through the nest.
template <class Scalar>
Scalar nested_f(int d, KernelFamily f, Scalar P, const GapSet<Scalar>& g,
                Scalar level_tol, std::int64_t* evals) {
  const int top = chain_top<Scalar>(f);
  const Scalar hd = g.at(d);
  const auto gfun = [&](Scalar p) -> Scalar {
    const Scalar R = std::sqrt(p * p + hd * hd);
    if (d == top) return chain_kernel(f, R, g);
    return nested_f(d + 1, f, R, g, level_tol / Scalar(2), evals);
  };
  QuadControl<Scalar> ctl{std::max(level_tol, Scalar(1e-12)), Scalar(0),
                          d == top ? Scalar(0) : level_tol / Scalar(2), 200};
  const Scalar integral = adaptive_quadrature<Scalar>(
      [&](Scalar p) { return std::pow(p, Scalar(d - 1)) * gfun(p); },
      Scalar(0), P, ctl, nullptr, evals);
  return integral / std::pow(P, Scalar(d));
}

}  // namespace oracle_detail

// Quadrature of F_d(P) = P^{-d} Int_0^P p^{d-1} G_d(sqrt(p^2+h_d^2)) dp.
//   Level:  the source G_d is the next closed-form PBF up the chain (one
//           quadrature level; checks exactly one reduction step).
//   Nested: every level down to the kernel is integrated numerically, fully
//           independent of any closed form. Expensive; d = 1 only.
// Auto picks Nested at d == 1 and Level otherwise.
enum class OracleForm { Auto, Level, Nested };

template <class Scalar>
QuadResult<Scalar> pbf_oracle(int d, KernelFamily family, PbfCase c, Scalar P,
                              const GapSet<Scalar>& gaps,
                              Scalar tol = Scalar(1e-10),
                              OracleForm form = OracleForm::Auto) {
  if (!(P > Scalar(0))) throw NonPositiveP("pbf_oracle: P must be positive");
  QuadResult<Scalar> out;
  const bool nested =
      form == OracleForm::Nested || (form == OracleForm::Auto && d == 1);
  if (nested) {
    if (d != 1) {
      throw InadmissibleCombination("pbf_oracle: nested form is d = 1 only");
    }
    out.value =
        oracle_detail::nested_f(1, family, P, gaps, tol, &out.evaluations);
    out.error_estimate = std::abs(out.value) * tol * Scalar(8);
    return out;
  }
  const Scalar hd = gaps.at(d);
  QuadControl<Scalar> ctl{tol, Scalar(0), Scalar(0), 4000};
  const Scalar integral = adaptive_quadrature<Scalar>(
      [&](Scalar p) {
        const Scalar R = std::sqrt(p * p + hd * hd);
        return std::pow(p, Scalar(d - 1)) * pbf_source(d, family, c, R, gaps);
      },
      Scalar(0), P, ctl, &out.error_estimate, &out.evaluations);
  out.value = integral / std::pow(P, Scalar(d));
  out.error_estimate /= std::pow(P, Scalar(d));
  return out;
}

// ---------------------------------------------------------------------------
// Convergence sweeps for the touching cases
// ---------------------------------------------------------------------------

enum class SweepKind { OneTouch, TwoTouch, ThreeTouch };

inline const char* to_string(SweepKind k) {
  switch (k) {
    case SweepKind::OneTouch: return "one-touch";
    case SweepKind::TwoTouch: return "two-touch";
    case SweepKind::ThreeTouch: return "three-touch";
  }
  return "?";
}

template <class Scalar>
struct SweepRecord {
  Scalar eps;
  Scalar L, M, Mp;
  Scalar rel_L, rel_M, rel_Mp;  // (F - F0) / F0 against the limiting values
};

// Published limiting values for the unit equilateral benchmark geometries.
template <class Scalar>
struct SweepReference {
  Scalar L0, M0;
  // M' reference: constant for the one-touch case; for two-/three-touch the
  // reference carries the -n_edges * H11(eps) edge divergence.
  std::function<Scalar(Scalar)> Mp0;
};

template <class Scalar>
SweepReference<Scalar> sweep_reference(SweepKind kind) {
  // leading form of the offset common-edge integral, 2 l (log(2l/eps) - 1)
  // at l = 1
  const auto h11 = [](Scalar eps) {
    return Scalar(2) * std::log(Scalar(2) / eps) - Scalar(2);
  };
  switch (kind) {
    case SweepKind::OneTouch:
      return {Scalar(0.182526568122379), Scalar(0.055671118815334),
              [](Scalar) { return Scalar(0.063116905873345); }};
    case SweepKind::TwoTouch:
      return {Scalar(0.415922738854561), Scalar(0.706739910625218),
              [h11](Scalar eps) {
                return Scalar(2.857471441252689) - h11(eps);
              }};
    case SweepKind::ThreeTouch:
    default:
      return {Scalar(0.75) * std::log(Scalar(3)),
              std::numbers::pi_v<Scalar> * std::sqrt(Scalar(3)) / Scalar(2),
              [h11](Scalar eps) {
                return Scalar(6) * std::log(Scalar(3)) -
                       Scalar(3) * h11(eps);
              }};
  }
}

template <class Scalar>
std::pair<Triangle<Scalar>, Triangle<Scalar>> sweep_geometry(SweepKind kind,
                                                             Scalar eps) {
  using V = Vec3<Scalar>;
  const Scalar s3h = std::sqrt(Scalar(3)) / Scalar(2);
  const auto tx = triangle_from_vertices(
      V(0, 0, 0), V(1, 0, 0), V(Scalar(0.5), s3h, 0));
  std::array<V, 3> y0;
  switch (kind) {
    case SweepKind::OneTouch:
      y0 = {V(0, 0, 0), V(-1, 0, 0), V(Scalar(-0.5), 0, s3h)};
      break;
    case SweepKind::TwoTouch:
      y0 = {V(0, 0, 0), V(1, 0, 0), V(Scalar(0.5), 0, s3h)};
      break;
    case SweepKind::ThreeTouch:
    default:
      y0 = {V(0, 0, 0), V(1, 0, 0), V(Scalar(0.5), s3h, 0)};
      break;
  }
  const V dz(0, 0, eps);
  const auto ty = triangle_from_vertices(y0[0] + dz, y0[1] + dz,
                                                 y0[2] + dz);
  return {tx, ty};
}

template <class Scalar>
std::vector<SweepRecord<Scalar>> convergence_sweep(
    SweepKind kind, std::span<const Scalar> eps_list,
    const Tolerances<Scalar>& tol = {}) {
  const SweepReference<Scalar> ref = sweep_reference<Scalar>(kind);
  std::vector<SweepRecord<Scalar>> records;
  records.reserve(eps_list.size());
  for (const Scalar eps : eps_list) {
    const auto [tx, ty] = sweep_geometry(kind, eps);
    const GalerkinOutput<Scalar> g = galerkin_all(tx, ty, tol);
    SweepRecord<Scalar> r;
    r.eps = eps;
    r.L = g.L;
    r.M = g.M;
    r.Mp = g.Mp;
    r.rel_L = (g.L - ref.L0) / ref.L0;
    r.rel_M = (g.M - ref.M0) / ref.M0;
    const Scalar mp0 = ref.Mp0(eps);
    r.rel_Mp = (g.Mp - mp0) / mp0;
    records.push_back(r);
  }
  return records;
}

// Least-squares slope of log|rel| vs log(eps); points below the noise floor
// (1e3 ulps) are excluded. Returns NaN when fewer than 2 usable points.
template <class Scalar>
Scalar fit_loglog_slope(std::span<const Scalar> eps,
                        std::span<const Scalar> rel) {
  const Scalar floor_v =
      Scalar(1e3) * std::numeric_limits<Scalar>::epsilon();
  Scalar sx(0), sy(0), sxx(0), sxy(0);
  int n = 0;
  for (size_t i = 0; i < eps.size(); ++i) {
    const Scalar r = std::abs(rel[i]);
    if (r < floor_v) continue;
    const Scalar x = std::log(eps[i]);
    const Scalar y = std::log(r);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) return std::numeric_limits<Scalar>::quiet_NaN();
  return (Scalar(n) * sxy - sx * sy) / (Scalar(n) * sxx - sx * sx);
}

}  // namespace glq
