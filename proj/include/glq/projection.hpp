#pragma once

#include <span>

#include "glq/common.hpp"

namespace glq {

// ---------------------------------------------------------------------------
// Rank-tolerant Gram-Schmidt
// ---------------------------------------------------------------------------

// Orthogonal (not normalized) set spanning the input vectors. A vector that
// lies in the span of its predecessors produces u_k = 0; the divisor |u_k|^2
// is replaced by 1 for such rows so the process runs through dependent sets.
template <class Scalar>
struct OrthoSet {
  int size = 0;
  std::array<Vec3<Scalar>, 4> u{};
  Eigen::Matrix<Scalar, 4, 4> coef;  // c(k,i): a_i = sum_{k<=i} c(k,i) u_k
  std::array<bool, 4> zero{};        // u_k treated as exactly zero
};

template <class Scalar>
OrthoSet<Scalar> orthogonalize(std::span<const Vec3<Scalar>> a,
                               Scalar rank_tol = Scalar(1e-24)) {
  OrthoSet<Scalar> os;
  os.size = static_cast<int>(a.size());
  os.coef.setZero();

  Scalar max_a2 = Scalar(0);
  for (const auto& ai : a) max_a2 = std::max(max_a2, ai.squaredNorm());
  const Scalar zero2 = rank_tol * max_a2;

  for (int i = 0; i < os.size; ++i) {
    Vec3<Scalar> u = a[static_cast<size_t>(i)];
    for (int k = 0; k < i; ++k) {
      const Scalar uk2 = os.zero[k] ? Scalar(1) : os.u[k].squaredNorm();
      const Scalar c = os.u[k].dot(a[static_cast<size_t>(i)]) / uk2;
      os.coef(k, i) = c;
      u -= c * os.u[k];
    }
    if (u.squaredNorm() <= zero2) {
      os.u[i].setZero();
      os.zero[i] = true;
      os.coef(i, i) = Scalar(0);
    } else {
      os.u[i] = u;
      os.zero[i] = false;
      os.coef(i, i) = Scalar(1);
    }
  }
  return os;
}

// ---------------------------------------------------------------------------
// Offset decomposition
// ---------------------------------------------------------------------------

// Split e into a part inside span(a_1..a_d) expressed as sum s0_i a_i and a
// perpendicular remainder of norm `gap`. Coefficients for dependent sets are
// one valid choice (zero rows of the triangular system get s0 = 0).
template <class Scalar>
struct Decomposition {
  int size = 0;
  std::array<Scalar, 4> s0{};
  Scalar gap = Scalar(0);
  Vec3<Scalar> e_par = Vec3<Scalar>::Zero();
  Vec3<Scalar> e_perp = Vec3<Scalar>::Zero();
};

template <class Scalar>
Decomposition<Scalar> decompose(const Vec3<Scalar>& e,
                                std::span<const Vec3<Scalar>> a,
                                const OrthoSet<Scalar>& os) {
  const int d = os.size;
  Decomposition<Scalar> dec;
  dec.size = d;

  // Upper-triangular system A(j,i) s0_i = b_j with A(j,i) = u_j . a_i,
  // rows of zero u_j drop out entirely.
  for (int j = d - 1; j >= 0; --j) {
    if (os.zero[j]) {
      dec.s0[j] = Scalar(0);
      continue;
    }
    Scalar rhs = os.u[j].dot(e);
    for (int i = j + 1; i < d; ++i) {
      rhs -= os.u[j].dot(a[static_cast<size_t>(i)]) * dec.s0[i];
    }
    dec.s0[j] = rhs / os.u[j].squaredNorm();
  }

  dec.e_par.setZero();
  for (int i = 0; i < d; ++i) dec.e_par += dec.s0[i] * a[static_cast<size_t>(i)];
  dec.e_perp = e - dec.e_par;
  dec.gap = dec.e_perp.norm();
  return dec;
}

template <class Scalar>
Decomposition<Scalar> decompose(const Vec3<Scalar>& e,
                                std::span<const Vec3<Scalar>> a,
                                Scalar rank_tol = Scalar(1e-24)) {
  return decompose(e, a, orthogonalize(a, rank_tol));
}

// ---------------------------------------------------------------------------
// Gap pattern classification
// ---------------------------------------------------------------------------

enum class KernelFamily { Single, Primed, Tilde, Hat };

inline const char* to_string(KernelFamily f) {
  switch (f) {
    case KernelFamily::Single: return "single";
    case KernelFamily::Primed: return "primed";
    case KernelFamily::Tilde: return "tilde";
    case KernelFamily::Hat: return "hat";
  }
  return "?";
}

template <class Scalar>
struct GapSet {
  Scalar h1 = Scalar(0), h2 = Scalar(0), h3 = Scalar(0), h4 = Scalar(0);

  Scalar at(int level) const {
    switch (level) {
      case 1: return h1;
      case 2: return h2;
      case 3: return h3;
      default: return h4;
    }
  }
  void set(int level, Scalar v) {
    switch (level) {
      case 1: h1 = v; break;
      case 2: h2 = v; break;
      case 3: h3 = v; break;
      default: h4 = v; break;
    }
  }
  // Norm of all gaps at levels >= d (the shift entering R_d^2 = P_d^2 + ...).
  Scalar norm_from(int d) const {
    Scalar s = Scalar(0);
    for (int k = d; k <= 4; ++k) s += at(k) * at(k);
    return std::sqrt(s);
  }
};

// Which of the admissible zero patterns of (h1,h2,h3,h4) is active.
struct PbfCase {
  int id = 0;  // 1..8
};

// Zero pattern -> case id; returns 0 for inadmissible patterns.
template <class Scalar>
int gap_pattern_id(const GapSet<Scalar>& g) {
  const bool z1 = g.h1 == Scalar(0), z2 = g.h2 == Scalar(0),
             z3 = g.h3 == Scalar(0), z4 = g.h4 == Scalar(0);
  if (z4 && z3 && z2 && !z1) return 1;
  if (z4 && z3 && z1 && !z2) return 2;
  if (z4 && z3 && !z2 && !z1) return 3;
  if (z4 && z2 && !z3 && !z1) return 4;
  if (z4 && z1 && !z3 && !z2) return 5;
  if (z3 && z2 && !z4 && !z1) return 6;
  if (z3 && z1 && !z4 && !z2) return 7;
  if (z1 && z2 && z3 && z4) return 8;
  return 0;
}

// Snap gaps below zero_tol (absolute, caller scales it) to exact zero and
// classify. Case 8 (all gaps zero) is only admissible for the hypersingular
// edge-edge family.
template <class Scalar>
PbfCase classify_case(Scalar h1, Scalar h2, Scalar h3, Scalar h4,
                      Scalar zero_tol, KernelFamily family,
                      GapSet<Scalar>* snapped = nullptr) {
  GapSet<Scalar> g{h1 <= zero_tol ? Scalar(0) : h1,
                   h2 <= zero_tol ? Scalar(0) : h2,
                   h3 <= zero_tol ? Scalar(0) : h3,
                   h4 <= zero_tol ? Scalar(0) : h4};
  if (snapped) *snapped = g;
  const int id = gap_pattern_id(g);
  if (id == 0 || (id == 8 && family != KernelFamily::Hat)) {
    throw InvalidGapPattern(std::string("inadmissible gap pattern (") +
                            std::to_string(double(g.h1)) + "," +
                            std::to_string(double(g.h2)) + "," +
                            std::to_string(double(g.h3)) + "," +
                            std::to_string(double(g.h4)) + ") for family " +
                            to_string(family));
  }
  return PbfCase{id};
}

}  // namespace glq
