#pragma once

#include <optional>

#include "glq/geometry.hpp"
#include "glq/reduction.hpp"

namespace glq {

// Galerkin double surface integrals of the Laplace kernel G = 1/|x-y| over a
// pair of flat triangles:
//   L  = Int Int G                      (single layer)
//   M  = Int Int n_x . grad_x G         (double layer)
//   L' = Int grad_y Int G               (gradient of single layer)
//   M' = Int n_y . grad_y Int n_x . grad_x G
// No 1/(4 pi) normalization is applied anywhere.

enum class Branch { NonDegenerate, ParallelPlanes, Coplanar };

inline const char* to_string(Branch b) {
  switch (b) {
    case Branch::NonDegenerate: return "non-degenerate";
    case Branch::ParallelPlanes: return "parallel-planes";
    case Branch::Coplanar: return "coplanar";
  }
  return "?";
}

template <class Scalar>
struct GalerkinOutput {
  Scalar L = Scalar(0);
  Scalar M = Scalar(0);
  Vec3<Scalar> Lp = Vec3<Scalar>::Zero();
  Scalar Mp = Scalar(0);
  ContactClass contact;
  Branch branch = Branch::NonDegenerate;
  // True when shared-edge contributions to M' were zeroed: the returned M'
  // is the finite part that survives cancellation across adjacent panels.
  bool mp_regularized = false;
};

// Surface-gradient contour integrals reduced to the prism integrals of the
// pair tree: F_x = sum_i n_cxi F_xi and likewise for y.
template <class Scalar>
struct ContourFlux {
  Vec3<Scalar> Fx = Vec3<Scalar>::Zero();
  Vec3<Scalar> Fy = Vec3<Scalar>::Zero();
  std::array<Scalar, 3> Fxi{}, Fyi{};
  std::array<Vec3<Scalar>, 3> ncx{}, ncy{};
};

template <class Scalar>
struct EdgePairIntegrals {
  Eigen::Matrix<Scalar, 3, 3> H;  // H(i,j) over edge C_xi x C_yj
  std::array<std::array<bool, 3>, 3> masked{};
  bool any_masked = false;
};

// ---------------------------------------------------------------------------
// Pair evaluator
// ---------------------------------------------------------------------------

// Computes any subset of {L, M, L', M'} for one triangle pair; projection
// work is shared between the integrals through the materialized pair tree.
template <class Scalar>
class GalerkinEvaluator {
 public:
  GalerkinEvaluator(const Triangle<Scalar>& tx, const Triangle<Scalar>& ty,
                    const Tolerances<Scalar>& tol = {},
                    AuditSink<Scalar> sink = nullptr)
      : tx_(tx), ty_(ty), tol_(tol), sink_(sink) {
    const Scalar scale = std::max(tx.longest_edge(), ty.longest_edge());
    opts_.rank_tol = tol.rank;
    opts_.zero_tol = tol.gap_zero * scale;
    opts_.prune = tol.prune;

    contact_ = contact_classification(tx, ty, tol.touch);
    if (planes_parallel(tx, ty, tol.parallel)) {
      delta_ = tx.n.dot(ty.v[0] - tx.v[0]);
      branch_ = std::abs(delta_) <= opts_.zero_tol ? Branch::Coplanar
                                                   : Branch::ParallelPlanes;
    } else {
      branch_ = Branch::NonDegenerate;
    }
  }

  const ContactClass& contact() const { return contact_; }
  Branch branch() const { return branch_; }

  Scalar single_layer() {
    return Scalar(4) * tx_.area * ty_.area *
           tree().total(KernelFamily::Single, sink_);
  }

  ContourFlux<Scalar> contour_flux() {
    ContourFlux<Scalar> f;
    for (int i = 0; i < 3; ++i) {
      const Scalar I3y = tree().prism(i, KernelFamily::Tilde, sink_);
      const Scalar I3x = tree().prism(i + 3, KernelFamily::Tilde, sink_);
      f.Fyi[static_cast<size_t>(i)] =
          Scalar(2) * ty_.edge_len(i) * tx_.area * I3y;
      f.Fxi[static_cast<size_t>(i)] =
          Scalar(2) * tx_.edge_len(i) * ty_.area * I3x;
      f.ncx[static_cast<size_t>(i)] =
          tx_.edge(i).cross(tx_.n) / tx_.edge_len(i);
      f.ncy[static_cast<size_t>(i)] =
          ty_.edge(i).cross(ty_.n) / ty_.edge_len(i);
      f.Fx += f.ncx[static_cast<size_t>(i)] * f.Fxi[static_cast<size_t>(i)];
      f.Fy += f.ncy[static_cast<size_t>(i)] * f.Fyi[static_cast<size_t>(i)];
    }
    return f;
  }

  Scalar double_layer() {
    switch (branch_) {
      case Branch::Coplanar:
        // principal value of the inner integral vanishes in-plane
        return Scalar(0);
      case Branch::ParallelPlanes:
        return Scalar(4) * tx_.area * ty_.area * delta_ *
               tree().total(KernelFamily::Primed, sink_);
      case Branch::NonDegenerate:
      default: {
        const ContourFlux<Scalar> f = flux();
        const Scalar c = tx_.n.dot(ty_.n);
        const Scalar Lxp =
            (tx_.n.dot(f.Fy) - c * ty_.n.dot(f.Fx)) / (Scalar(1) - c * c);
        return -Lxp;
      }
    }
  }

  Vec3<Scalar> grad_single_layer() {
    // L' = -F_x + n_x L'_x, with L'_x = -M in every branch
    return -flux().Fx - tx_.n * double_layer();
  }

  EdgePairIntegrals<Scalar> edge_pair_integrals() {
    EdgePairIntegrals<Scalar> out;
    out.masked = shared_edge_mask(tx_, ty_, tol_.touch);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (out.masked[static_cast<size_t>(i)][static_cast<size_t>(j)]) {
          out.H(i, j) = Scalar(0);
          out.any_masked = true;
          continue;
        }
        ReductionParams<Scalar> p;
        p.d = 2;
        p.a = {tx_.edge(i), -ty_.edge(j), Vec3<Scalar>::Zero(),
               Vec3<Scalar>::Zero()};
        p.e = tx_.v[static_cast<size_t>(i)] - ty_.v[static_cast<size_t>(j)];
        p.family = KernelFamily::Hat;
        p.domain = Domain2D::Square;
        out.H(i, j) = tx_.edge_len(i) * ty_.edge_len(j) *
                      reduce(p, opts_, sink_);
      }
    }
    return out;
  }

  Scalar hypersingular() { return mp_from(edge_pair_integrals()); }

  GalerkinOutput<Scalar> all();

 private:
  Scalar mp_from(const EdgePairIntegrals<Scalar>& ep) const {
    CompensatedSum<Scalar> sum;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const Scalar c = tx_.edge(i).dot(ty_.edge(j)) /
                         (tx_.edge_len(i) * ty_.edge_len(j));
        sum.add(-c * ep.H(i, j));
      }
    }
    return sum.value();
  }

  PairReduction<Scalar>& tree() {
    if (!tree_) tree_.emplace(tx_, ty_, opts_);
    return *tree_;
  }
  const ContourFlux<Scalar>& flux() {
    if (!flux_) flux_ = contour_flux();
    return *flux_;
  }

  Triangle<Scalar> tx_, ty_;
  Tolerances<Scalar> tol_;
  AuditSink<Scalar> sink_;
  ReductionOptions<Scalar> opts_;
  ContactClass contact_;
  Branch branch_;
  Scalar delta_ = Scalar(0);
  std::optional<PairReduction<Scalar>> tree_;
  std::optional<ContourFlux<Scalar>> flux_;
};

// ---------------------------------------------------------------------------
// Self action (coincident triangles), closed forms
// ---------------------------------------------------------------------------

template <class Scalar>
GalerkinOutput<Scalar> self_action(const Triangle<Scalar>& t) {
  GalerkinOutput<Scalar> out;
  const Scalar p =
      (t.edge_len(0) + t.edge_len(1) + t.edge_len(2)) / Scalar(2);
  Scalar U(0), Mp(0);
  for (int j = 0; j < 3; ++j) {
    const Scalar lj = t.edge_len(j);
    const Scalar lg = std::log(p / (p - lj));
    U += lg / lj;
    Mp += lj * lg;
  }
  out.L = Scalar(4) * t.area * t.area * U / Scalar(3);
  out.M = Scalar(0);
  out.Lp.setZero();
  out.Mp = Scalar(2) * Mp;
  out.contact.kind = Touch::ThreeTouch;
  out.contact.n_matches = 3;
  out.contact.matches = {{{0, 0}, {1, 1}, {2, 2}}};
  out.branch = Branch::Coplanar;
  out.mp_regularized = true;
  return out;
}

template <class Scalar>
GalerkinOutput<Scalar> GalerkinEvaluator<Scalar>::all() {
  if (contact_.kind == Touch::ThreeTouch) {
    GalerkinOutput<Scalar> out = self_action(tx_);
    out.contact = contact_;
    return out;
  }
  GalerkinOutput<Scalar> out;
  out.contact = contact_;
  out.branch = branch_;
  out.L = single_layer();
  out.M = double_layer();
  out.Lp = -flux().Fx - tx_.n * out.M;
  const EdgePairIntegrals<Scalar> ep = edge_pair_integrals();
  out.Mp = mp_from(ep);
  out.mp_regularized = ep.any_masked;
  return out;
}

// ---------------------------------------------------------------------------
// Free-function surface
// ---------------------------------------------------------------------------

template <class Scalar>
Scalar single_layer(const Triangle<Scalar>& tx, const Triangle<Scalar>& ty,
                    const Tolerances<Scalar>& tol = {}) {
  return GalerkinEvaluator<Scalar>(tx, ty, tol).single_layer();
}

template <class Scalar>
ContourFlux<Scalar> contour_flux(const Triangle<Scalar>& tx,
                                 const Triangle<Scalar>& ty,
                                 const Tolerances<Scalar>& tol = {}) {
  return GalerkinEvaluator<Scalar>(tx, ty, tol).contour_flux();
}

template <class Scalar>
Scalar double_layer(const Triangle<Scalar>& tx, const Triangle<Scalar>& ty,
                    const Tolerances<Scalar>& tol = {}) {
  return GalerkinEvaluator<Scalar>(tx, ty, tol).double_layer();
}

template <class Scalar>
Vec3<Scalar> grad_single_layer(const Triangle<Scalar>& tx,
                               const Triangle<Scalar>& ty,
                               const Tolerances<Scalar>& tol = {}) {
  return GalerkinEvaluator<Scalar>(tx, ty, tol).grad_single_layer();
}

template <class Scalar>
EdgePairIntegrals<Scalar> edge_pair_integrals(
    const Triangle<Scalar>& tx, const Triangle<Scalar>& ty,
    const Tolerances<Scalar>& tol = {}) {
  return GalerkinEvaluator<Scalar>(tx, ty, tol).edge_pair_integrals();
}

template <class Scalar>
Scalar hypersingular(const Triangle<Scalar>& tx, const Triangle<Scalar>& ty,
                     const Tolerances<Scalar>& tol = {}) {
  return GalerkinEvaluator<Scalar>(tx, ty, tol).hypersingular();
}

template <class Scalar>
GalerkinOutput<Scalar> galerkin_all(const Triangle<Scalar>& tx,
                                    const Triangle<Scalar>& ty,
                                    const Tolerances<Scalar>& tol = {},
                                    AuditSink<Scalar> sink = nullptr) {
  return GalerkinEvaluator<Scalar>(tx, ty, tol, sink).all();
}

}  // namespace glq
