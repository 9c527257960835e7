#pragma once

#include <vector>

#include "glq/geometry.hpp"
#include "glq/pbf.hpp"
#include "glq/projection.hpp"

namespace glq {

// Recursive dimensionality reduction of the 4D pair integral: the product of
// two standard triangles is bounded by 6 right prisms, each prism by 3
// squares and 2 triangles, each of those by unit segments, where the PBFs of
// pbf.hpp are evaluated at the endpoints. Offsets are re-projected at every
// level; the perpendicular remainders h_d accumulate into the gap set that
// selects the PBF case.

enum class Domain2D { Square, StdTriangle };

template <class Scalar>
struct ReductionParams {
  int d = 4;  // dimension, equals the number of coefficient vectors
  std::array<Vec3<Scalar>, 4> a{};
  Vec3<Scalar> e = Vec3<Scalar>::Zero();
  GapSet<Scalar> inherited{};  // gaps fixed at levels > d
  KernelFamily family = KernelFamily::Single;
  Domain2D domain = Domain2D::Square;  // meaningful at d == 2

  std::span<const Vec3<Scalar>> coeffs() const {
    return {a.data(), static_cast<size_t>(d)};
  }
};

template <class Scalar>
struct ReductionOptions {
  Scalar rank_tol = Scalar(1e-24);   // squared, relative (Gram-Schmidt)
  Scalar zero_tol = Scalar(1e-10);   // absolute: gaps below snap to zero
  Scalar prune = Scalar(1e-14);      // drop children with |weight| below
};

// One gap tuple per 1D leaf evaluation; used by the lemma-audit tests.
template <class Scalar>
struct LeafRecord {
  KernelFamily family;
  int case_id;
  GapSet<Scalar> gaps;
};

template <class Scalar>
using AuditSink = std::vector<LeafRecord<Scalar>>*;

// ---------------------------------------------------------------------------
// Level initialization and face expansions
// ---------------------------------------------------------------------------

template <class Scalar>
ReductionParams<Scalar> init_4d(const Triangle<Scalar>& tx,
                                const Triangle<Scalar>& ty,
                                KernelFamily family = KernelFamily::Single) {
  const auto cx = chart(tx);
  const auto cy = chart(ty);
  ReductionParams<Scalar> p;
  p.d = 4;
  p.a = {cx.du, cx.dv, -cy.du, -cy.dv};
  p.e = cx.origin - cy.origin;
  p.family = family;
  return p;
}

template <class Scalar>
struct WeightedChild {
  Scalar weight;
  ReductionParams<Scalar> child;
};

template <class Scalar>
struct FaceExpansion {
  int count = 0;
  std::array<WeightedChild<Scalar>, 6> items{};

  void push(Scalar w, ReductionParams<Scalar> c) {
    items[static_cast<size_t>(count++)] = {w, std::move(c)};
  }
};

namespace reduction_detail {

template <class Scalar, class EExpr>
ReductionParams<Scalar> make_child(const ReductionParams<Scalar>& parent,
                                   const Decomposition<Scalar>& dec,
                                   std::array<Vec3<Scalar>, 4> a,
                                   const EExpr& e, Domain2D dom) {
  ReductionParams<Scalar> c;
  c.d = parent.d - 1;
  c.a = std::move(a);
  c.e = e;
  c.inherited = parent.inherited;
  c.inherited.set(parent.d, dec.gap);
  c.family = parent.family;
  c.domain = dom;
  return c;
}

}  // namespace reduction_detail

// The boundary of T_x (x) T_y: six right prisms, one per physical edge of
// the receiver (faces 1-3) and of the source (faces 4-6).
template <class Scalar>
FaceExpansion<Scalar> expand_4d(const ReductionParams<Scalar>& p,
                                const Decomposition<Scalar>& dec) {
  using reduction_detail::make_child;
  const auto& a = p.a;
  const auto& s = dec.s0;
  const Vec3<Scalar>& ep = dec.e_par;
  const Scalar one(1);
  const Domain2D sq = Domain2D::Square;

  FaceExpansion<Scalar> out;
  out.push(-s[3], make_child(p, dec, {a[0], a[1], a[2]}, ep, sq));
  out.push(one + s[2] + s[3],
           make_child(p, dec, {a[0], a[1], (a[3] - a[2]).eval()}, ep + a[2], sq));
  out.push(-s[2], make_child(p, dec, {a[0], a[1], a[3]}, ep, sq));
  out.push(-s[1], make_child(p, dec, {a[2], a[3], a[0]}, ep, sq));
  out.push(one + s[0] + s[1],
           make_child(p, dec, {a[2], a[3], (a[1] - a[0]).eval()}, ep + a[0], sq));
  out.push(-s[0], make_child(p, dec, {a[2], a[3], a[1]}, ep, sq));
  return out;
}

// Prism boundary: 3 rectangular faces (squares after standardization) plus
// the 2 triangular lids.
template <class Scalar>
FaceExpansion<Scalar> expand_3d(const ReductionParams<Scalar>& p,
                                const Decomposition<Scalar>& dec) {
  using reduction_detail::make_child;
  const auto& a = p.a;
  const auto& s = dec.s0;
  const Vec3<Scalar>& ep = dec.e_par;
  const Scalar one(1);

  FaceExpansion<Scalar> out;
  out.push(one + s[0] + s[1],
           make_child(p, dec, {(a[0] - a[1]).eval(), a[2], {}}, ep + a[1],
                      Domain2D::Square));
  out.push(-s[0], make_child(p, dec, {a[1], a[2], {}}, ep, Domain2D::Square));
  out.push(-s[1], make_child(p, dec, {a[0], a[2], {}}, ep, Domain2D::Square));
  out.push(one + s[2], make_child(p, dec, {a[0], a[1], {}}, ep + a[2],
                                  Domain2D::StdTriangle));
  out.push(-s[2],
           make_child(p, dec, {a[0], a[1], {}}, ep, Domain2D::StdTriangle));
  return out;
}

// Square: 4 edges; standard triangle: 3 edges.
template <class Scalar>
FaceExpansion<Scalar> expand_2d(const ReductionParams<Scalar>& p,
                                const Decomposition<Scalar>& dec) {
  using reduction_detail::make_child;
  const auto& a = p.a;
  const auto& s = dec.s0;
  const Vec3<Scalar>& ep = dec.e_par;
  const Scalar one(1);
  const Domain2D dom = Domain2D::Square;  // irrelevant at d == 1

  FaceExpansion<Scalar> out;
  if (p.domain == Domain2D::Square) {
    out.push(one + s[0], make_child(p, dec, {a[1], {}, {}}, ep + a[0], dom));
    out.push(-s[0], make_child(p, dec, {a[1], {}, {}}, ep, dom));
    out.push(one + s[1], make_child(p, dec, {a[0], {}, {}}, ep + a[1], dom));
    out.push(-s[1], make_child(p, dec, {a[0], {}, {}}, ep, dom));
  } else {
    out.push(-s[0], make_child(p, dec, {a[1], {}, {}}, ep, dom));
    out.push(-s[1], make_child(p, dec, {a[0], {}, {}}, ep, dom));
    out.push(one + s[0] + s[1],
             make_child(p, dec, {(a[0] - a[1]).eval(), {}, {}}, ep + a[1], dom));
  }
  return out;
}

// ---------------------------------------------------------------------------
// 1D endpoint evaluation
// ---------------------------------------------------------------------------

namespace reduction_detail {

// I_1 = (1+s10) F_1(P(1)) - s10 F_1(P(0)), P(s) = |s + s10| |a1|.
// Endpoint terms with vanishing coefficient are skipped; they are the only
// configurations where P can reach 0.
template <class Scalar>
Scalar leaf_value(KernelFamily family, Scalar s10, Scalar a1_norm,
                  const GapSet<Scalar>& gaps, const PbfCase& c, Scalar prune,
                  AuditSink<Scalar> sink) {
  if (sink) sink->push_back({family, c.id, gaps});
  if (c.id == 8 && s10 > Scalar(-1) + prune && s10 < -prune) {
    throw DivergentEdgeIntegral(
        "overlapping collinear edges: P vanishes inside the unit segment");
  }
  Scalar v(0);
  const Scalar w1 = Scalar(1) + s10;
  if (std::abs(w1) > prune) {
    v += w1 * pbf(1, family, c, std::abs(w1) * a1_norm, gaps);
  }
  if (std::abs(s10) > prune) {
    v -= s10 * pbf(1, family, c, std::abs(s10) * a1_norm, gaps);
  }
  return v;
}

}  // namespace reduction_detail

template <class Scalar>
Scalar eval_1d(const ReductionParams<Scalar>& p,
               const ReductionOptions<Scalar>& opts,
               AuditSink<Scalar> sink = nullptr) {
  const auto dec = decompose(p.e, p.coeffs(), opts.rank_tol);
  GapSet<Scalar> gaps;
  const PbfCase c =
      classify_case(dec.gap, p.inherited.h2, p.inherited.h3, p.inherited.h4,
                    opts.zero_tol, p.family, &gaps);
  return reduction_detail::leaf_value(p.family, dec.s0[0], p.a[0].norm(),
                                      gaps, c, opts.prune, sink);
}

// ---------------------------------------------------------------------------
// Full recursive reduction
// ---------------------------------------------------------------------------

template <class Scalar>
Scalar reduce(const ReductionParams<Scalar>& p,
              const ReductionOptions<Scalar>& opts,
              AuditSink<Scalar> sink = nullptr) {
  if (p.d == 1) return eval_1d(p, opts, sink);

  auto dec = decompose(p.e, p.coeffs(), opts.rank_tol);
  if (dec.gap <= opts.zero_tol) dec.gap = Scalar(0);

  FaceExpansion<Scalar> faces;
  switch (p.d) {
    case 4: faces = expand_4d(p, dec); break;
    case 3: faces = expand_3d(p, dec); break;
    default: faces = expand_2d(p, dec); break;
  }
  CompensatedSum<Scalar> sum;
  for (int k = 0; k < faces.count; ++k) {
    const auto& [w, child] = faces.items[static_cast<size_t>(k)];
    if (std::abs(w) <= opts.prune) continue;
    if (child.d == 1) {
      // a face that vanishes in exact arithmetic can survive pruning with a
      // rounding-level weight while its offset has collapsed to a gap
      // pattern the lemmas exclude; such phantoms are dropped, anything
      // with real weight still throws
      try {
        sum.add(w * eval_1d(child, opts, sink));
      } catch (const InvalidGapPattern&) {
        if (std::abs(w) > Scalar(1e3) * opts.prune) throw;
      }
      continue;
    }
    sum.add(w * reduce(child, opts, sink));
  }
  return sum.value();
}

// ---------------------------------------------------------------------------
// Materialized pair tree
// ---------------------------------------------------------------------------

// The expansion of one triangle pair, decomposed once and evaluated under
// any kernel family. Keeping the tree lets the single layer, the contour
// fluxes (per-prism, unweighted) and the parallel-plane double layer share
// all projection work.
template <class Scalar>
class PairReduction {
 public:
  PairReduction(const Triangle<Scalar>& tx, const Triangle<Scalar>& ty,
                const ReductionOptions<Scalar>& opts)
      : opts_(opts) {
    auto root = init_4d(tx, ty);
    dec4_ = decompose(root.e, root.coeffs(), opts.rank_tol);
    if (dec4_.gap <= opts.zero_tol) dec4_.gap = Scalar(0);

    const auto faces4 = expand_4d(root, dec4_);
    for (int j = 0; j < 6; ++j) {
      auto& prism = prisms_[static_cast<size_t>(j)];
      prism.weight = faces4.items[static_cast<size_t>(j)].weight;
      // prisms are kept even at zero weight: the fluxes read them directly
      build_prism(prism, faces4.items[static_cast<size_t>(j)].child);
    }
  }

  // Perpendicular gap of the 4D offset (nonzero only for parallel planes).
  Scalar gap4() const { return dec4_.gap; }
  const Decomposition<Scalar>& root_decomposition() const { return dec4_; }

  // Weighted sum over all six prisms: U for Single, U' for Primed.
  Scalar total(KernelFamily family, AuditSink<Scalar> sink = nullptr) const {
    CompensatedSum<Scalar> sum;
    for (const auto& prism : prisms_) {
      if (std::abs(prism.weight) <= opts_.prune) continue;
      sum.add(prism.weight * prism_value(prism, family, sink));
    }
    return sum.value();
  }

  // Unweighted 3D integral of prism j (0..5), e.g. under the Tilde family
  // for the contour fluxes.
  Scalar prism(int j, KernelFamily family,
               AuditSink<Scalar> sink = nullptr) const {
    return prism_value(prisms_[static_cast<size_t>(j)], family, sink);
  }

  // Magnitude of the weighted sum before cancellation: sum of |w * F_1| over
  // every endpoint term. The relative accuracy of total() is limited by
  // roundoff at this scale, which exceeds |total| when the expansion
  // coefficients are large (distant pairs).
  Scalar total_magnitude(KernelFamily family) const {
    Scalar mag(0);
    for (const auto& prism : prisms_) {
      if (std::abs(prism.weight) <= opts_.prune) continue;
      for (const auto& face : prism.faces) {
        for (const auto& leaf : face.leaves) {
          const PbfCase c{gap_pattern_id(leaf.gaps)};
          const Scalar wl =
              std::abs(prism.weight * face.weight * leaf.weight);
          const Scalar w1 = Scalar(1) + leaf.s10;
          if (std::abs(w1) > opts_.prune) {
            mag += wl * std::abs(w1 * pbf(1, family, c,
                                          std::abs(w1) * leaf.a1_norm,
                                          leaf.gaps));
          }
          if (std::abs(leaf.s10) > opts_.prune) {
            mag += wl * std::abs(leaf.s10 *
                                 pbf(1, family, c,
                                     std::abs(leaf.s10) * leaf.a1_norm,
                                     leaf.gaps));
          }
        }
      }
    }
    return mag;
  }

  // Number of leaf endpoint evaluations a full sweep performs.
  int leaf_eval_count() const {
    int n = 0;
    for (const auto& prism : prisms_) {
      if (std::abs(prism.weight) <= opts_.prune) continue;
      for (const auto& face : prism.faces) {
        for (const auto& leaf : face.leaves) {
          if (std::abs(Scalar(1) + leaf.s10) > opts_.prune) ++n;
          if (std::abs(leaf.s10) > opts_.prune) ++n;
        }
      }
    }
    return n;
  }

 private:
  struct Leaf {
    Scalar weight;
    Scalar s10;
    Scalar a1_norm;
    GapSet<Scalar> gaps;  // fully snapped
  };
  struct Face {
    Scalar weight;
    std::vector<Leaf> leaves;
  };
  struct Prism {
    Scalar weight = Scalar(0);
    std::vector<Face> faces;
  };

  void build_prism(Prism& prism, const ReductionParams<Scalar>& p3) {
    auto dec3 = decompose(p3.e, p3.coeffs(), opts_.rank_tol);
    if (dec3.gap <= opts_.zero_tol) dec3.gap = Scalar(0);
    const auto faces3 = expand_3d(p3, dec3);
    for (int k = 0; k < faces3.count; ++k) {
      const auto& [w2, p2] = faces3.items[static_cast<size_t>(k)];
      if (std::abs(w2) <= opts_.prune) continue;
      Face face;
      face.weight = w2;
      auto dec2 = decompose(p2.e, p2.coeffs(), opts_.rank_tol);
      if (dec2.gap <= opts_.zero_tol) dec2.gap = Scalar(0);
      const auto edges = expand_2d(p2, dec2);
      for (int m = 0; m < edges.count; ++m) {
        const auto& [w1, p1] = edges.items[static_cast<size_t>(m)];
        if (std::abs(w1) <= opts_.prune) continue;
        const auto dec1 = decompose(p1.e, p1.coeffs(), opts_.rank_tol);
        Leaf leaf;
        leaf.weight = w1;
        leaf.s10 = dec1.s0[0];
        leaf.a1_norm = p1.a[0].norm();
        try {
          classify_case(dec1.gap, p1.inherited.h2, p1.inherited.h3,
                        p1.inherited.h4, opts_.zero_tol,
                        KernelFamily::Single, &leaf.gaps);
        } catch (const InvalidGapPattern&) {
          // rounding phantom of an exactly-vanishing face (see reduce())
          if (std::abs(w1) > Scalar(1e3) * opts_.prune) throw;
          continue;
        }
        face.leaves.push_back(leaf);
      }
      prism.faces.push_back(std::move(face));
    }
  }

  Scalar prism_value(const Prism& prism, KernelFamily family,
                     AuditSink<Scalar> sink) const {
    CompensatedSum<Scalar> sum;
    for (const auto& face : prism.faces) {
      CompensatedSum<Scalar> fsum;
      for (const auto& leaf : face.leaves) {
        const PbfCase c{gap_pattern_id(leaf.gaps)};
        fsum.add(leaf.weight *
                 reduction_detail::leaf_value(family, leaf.s10, leaf.a1_norm,
                                              leaf.gaps, c, opts_.prune,
                                              sink));
      }
      sum.add(face.weight * fsum.value());
    }
    return sum.value();
  }

  ReductionOptions<Scalar> opts_;
  Decomposition<Scalar> dec4_;
  std::array<Prism, 6> prisms_;
};

}  // namespace glq
