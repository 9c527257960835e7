#pragma once

#include <cmath>

#include "glq/common.hpp"
#include "glq/projection.hpp"

namespace glq {

// Primitive boundary functions F_d for the four kernel chains:
//   Single  G_4 = 1/R        (single layer)
//   Primed  G_4 = 1/R^3      (double layer between parallel planes)
//   Tilde   G_3 = 1/sqrt(R^2+h4^2)  (contour fluxes; 3x Single after a gap swap)
//   Hat     G_2 = 1/R        (edge-edge integrals; 6x Single)
//
// Each F_d(P) solves P F' + d F = G_d(sqrt(P^2 + h_d^2)) with F regular at
// P = 0 whenever the gap shift is nonzero, which fixes
//   F_d(P) = P^{-d} Int_0^P p^{d-1} G_d(sqrt(p^2 + h_d^2)) dp.
// The closed forms below are evaluated literally except for a small-P branch:
// several brackets cancel to O(P^2) and lose ~ (h/P)^2 ulps, so below
// P < small_p_switch * h the three leading Taylor terms of the defining
// integral are used instead.

namespace pbf_detail {

// Direct formulas lose ~ (h/P)^2 ulps to bracket cancellation as P shrinks;
// below P = small_p_switch * h the four leading Taylor terms of the defining
// integral take over (truncation ~ (P/h)^8). Both sides of the switch sit
// near 1e-13 relative error.
inline constexpr double small_p_switch = 3e-2;

template <class S>
S safe_log(S x) {
  // Arguments are positive in exact arithmetic; the clamp only matters
  // within a few ulp of a singular configuration.
  return std::log(std::max(x, S(1e-300)));
}

enum class Chain { Single, Primed };

template <class S>
struct Derivs {
  S f, f1, f2, f3;
};

// ---- stable bracket kernels ------------------------------------------------
//
// The closed forms contain brackets that cancel to O(t^2) or O(t^3) as
// t = P/h -> 0 and would lose (1/t)^2 digits if subtracted literally. Each
// is evaluated through its Maclaurin series below t = 1/2 and directly above,
// which keeps every form near full precision for all arguments. The series
// coefficients combine binom(1/2,k) (from sqrt(1+t^2)) with the asinh series,
// both generated by the C(2k,k)/4^k recurrence.

template <class S, class Coef>
S bracket_series(S t, Coef coef) {
  const S t2 = t * t;
  S r(1);     // C(2k,k) / 4^k
  S tp = t2;  // t^{2k}
  S sum(0);
  for (int k = 1; k < 60; ++k) {
    r *= S(2 * k - 1) / S(2 * k);
    const S ck = (k % 2 ? S(1) : S(-1)) * r / S(2 * k - 1);
    const S rn = r * S(2 * k + 1) / S(2 * k + 2);
    const S ckn = (k % 2 ? S(-1) : S(1)) * rn / S(2 * k + 1);
    const S ak = (k % 2 ? S(-1) : S(1)) * r / S(2 * k + 1);
    const S term = coef(ck, ckn, ak) * tp;
    sum += term;
    if (std::abs(term) <= std::numeric_limits<S>::epsilon() * std::abs(sum))
      break;
    tp *= t2;
  }
  return sum;
}

// t sqrt(1+t^2) - asinh(t)  ~  (2/3) t^3
template <class S>
S bk_pr_asinh(S t) {
  if (t < S(0.5))
    return t * bracket_series(t, [](S c, S, S a) { return c - a; });
  return t * std::sqrt(S(1) + t * t) - std::asinh(t);
}

// t sqrt(1+t^2) - 3 asinh(t) + 4 (sqrt(1+t^2)-1)/t  ~  t^3 / 2
template <class S>
S bk_plane3(S t) {
  if (t < S(0.5)) {
    return t * bracket_series(
                   t, [](S c, S cn, S a) { return c - S(3) * a + S(4) * cn; });
  }
  const S w = std::sqrt(S(1) + t * t);
  return t * w - S(3) * std::asinh(t) + S(4) * (w - S(1)) / t;
}

// sqrt(1+t^2) - 2 + asinh(t)/t  ~  t^2 / 3
template <class S>
S bk_lateral2(S t) {
  if (t < S(0.5))
    return bracket_series(t, [](S c, S, S a) { return c + a; });
  return std::sqrt(S(1) + t * t) - S(2) + std::asinh(t) / t;
}

// sqrt(1+t^2) - 3 + 3 asinh(t)/t - 2 (sqrt(1+t^2)-1)/t^2  ~  t^2 / 4
template <class S>
S bk_plane2(S t) {
  if (t < S(0.5)) {
    return bracket_series(
        t, [](S c, S cn, S a) { return c + S(3) * a - S(2) * cn; });
  }
  const S w = std::sqrt(S(1) + t * t);
  return w - S(3) + S(3) * std::asinh(t) / t -
         S(2) * (w - S(1)) / (t * t);
}

// asinh(t) - 2 (sqrt(1+t^2)-1)/t  ~  t^3 / 12
template <class S>
S bk_primed3(S t) {
  if (t < S(0.5))
    return t * bracket_series(t, [](S, S cn, S a) { return a - S(2) * cn; });
  return std::asinh(t) - S(2) * (std::sqrt(S(1) + t * t) - S(1)) / t;
}

// (sqrt(1+t^2)-1)/t^2 - asinh(t)/t + 1/2  ~  t^2 / 24
template <class S>
S bk_primed2(S t) {
  if (t < S(0.5))
    return bracket_series(t, [](S, S cn, S a) { return cn - a; });
  const S w = std::sqrt(S(1) + t * t);
  return (w - S(1)) / (t * t) - std::asinh(t) / t + S(0.5);
}

// ---- closed forms (Single chain) -------------------------------------------

template <class S>
S f4_single(S P, S h4) {
  if (h4 == S(0)) return S(1) / (S(3) * P);
  const S R = std::sqrt(P * P + h4 * h4);
  // identical to ((P^2 - 2 h^2) R + 2 h^3) / (3 P^4)
  return (R + S(2) * h4) / (S(3) * (R + h4) * (R + h4));
}

template <class S>
S f3_single(S P, S h3, S h4) {
  if (h3 == S(0) && h4 == S(0)) return S(1) / (S(6) * P);
  if (h4 == S(0)) {
    // (P R3 - h3^2 log((P+R3)/h3)) / (6 P^3)
    const S t = P / h3;
    return bk_pr_asinh(t) / (S(6) * h3 * t * t * t);
  }
  // (P R4 - 3 h4^2 log((P+R4)/h4) + 4 h4^2 (R4-h4)/P) / (6 P^3)
  const S t = P / h4;
  return bk_plane3(t) / (S(6) * h4 * t * t * t);
}

template <class S>
S f2_single(S P, S h2, S h3, S h4) {
  const S P2 = P * P;
  if (h2 == S(0) && h3 == S(0) && h4 == S(0)) return S(1) / (S(6) * P);
  if (h3 == S(0) && h4 == S(0)) {
    const S R2 = std::sqrt(P2 + h2 * h2);
    return S(1) / (S(6) * (R2 + h2));  // (R2 - h2) / (6 P^2)
  }
  if (h2 == S(0) && h4 == S(0)) {
    // (R3 - 2 h3 + h3^2/P log((P+R3)/h3)) / (6 P^2)
    const S t = P / h3;
    return bk_lateral2(t) / (S(6) * h3 * t * t);
  }
  if (h4 == S(0)) {
    // (R3 - C5 + h3^2/R2 log((R2+R3)/h3)) / (6 P^2), grouped so the
    // cancellation against C5 = h + h3^2/h2 log((h2+h)/h3) happens in exact
    // P^2-proportional terms
    const S h = std::sqrt(h2 * h2 + h3 * h3);
    const S R2 = std::sqrt(P2 + h2 * h2);
    const S R3 = std::sqrt(P2 + h2 * h2 + h3 * h3);
    const S d2 = P2 / (R2 + h2);  // R2 - h2
    const S d3 = P2 / (R3 + h);   // R3 - h
    const S lg = safe_log((R2 + R3) / h3);
    const S bracket =
        d3 + h3 * h3 * (-d2 * lg / (R2 * h2) +
                        std::log1p((d2 + d3) / (h2 + h)) / h2);
    return bracket / (S(6) * P2);
  }
  if (h2 == S(0)) {
    // (R4 - 3 h4 + h4^2 (3/P log((P+R4)/h4) - 2 (R4-h4)/P^2)) / (6 P^2)
    const S t = P / h4;
    return bk_plane2(t) / (S(6) * h4 * t * t);
  }
  // (R4 - C7 + h4^2 (3/R2 log((R2+R4)/h4) - 2 (R4-h4)/R2^2)) / (6 P^2),
  // same exact grouping as case 5 plus a rational remainder
  const S h = std::sqrt(h2 * h2 + h4 * h4);
  const S R2 = std::sqrt(P2 + h2 * h2);
  const S R4 = std::sqrt(P2 + h2 * h2 + h4 * h4);
  const S d2 = P2 / (R2 + h2);  // R2 - h2
  const S d4 = P2 / (R4 + h);   // R4 - h
  const S lg = safe_log((R2 + R4) / h4);
  const S bracket =
      d4 +
      S(3) * h4 * h4 *
          (-d2 * lg / (R2 * h2) + std::log1p((d2 + d4) / (h2 + h)) / h2) +
      S(2) * h4 * h4 * P2 / ((R4 + h) * (h + h4) * (R4 + h4));
  return bracket / (S(6) * P2);
}

// ---- auxiliary Phi functions ----------------------------------------------

// rest2 is h^2 - eta^2 passed as the exact sum of the remaining squared gaps.
template <class S>
S phi1(S P, S h) {
  // log((P + R4)/h) / P
  return std::asinh(P / h) / P;
}

template <class S>
S phi2(S P, S eta, S h2sum, S rest2) {
  if (eta == S(0)) return S(0);
  const S R4 = std::sqrt(P * P + h2sum);
  return std::atan(eta * P / (h2sum + R4 * std::sqrt(rest2))) / P;
}

template <class S>
S phi3(S P, S h1, S h2sum, S rest2) {
  const S R1 = std::sqrt(P * P + h1 * h1);
  const S R4 = std::sqrt(P * P + h2sum);
  return safe_log((R1 + R4) / std::sqrt(rest2)) / R1;
}

template <class S>
S phi4(S P, S eta, S h2, S h) {
  if (eta == S(0)) return S(0);
  const S P2 = P * P;
  const S R2 = std::sqrt(P2 + h2 * h2);
  const S R4 = std::sqrt(P2 + h * h);
  // (eta^2/(P^2 h2)) (R2/h2 log((R2+R4)/eta) - log((h2+h)/eta)); the log
  // difference cancels to O(P^2), so it is grouped into exact
  // P^2-proportional pieces before the division
  const S d2 = P2 / (R2 + h2);  // R2 - h2
  const S d4 = P2 / (R4 + h);   // R4 - h
  const S bracket = d2 * safe_log((R2 + R4) / eta) / h2 +
                    std::log1p((d2 + d4) / (h2 + h));
  return eta * eta * bracket / (P2 * h2);
}

template <class S>
S f1_single(S P, const GapSet<S>& g) {
  const S h1 = g.h1, h2 = g.h2, h3 = g.h3, h4 = g.h4;
  const S hsq = h1 * h1 + h2 * h2 + h3 * h3 + h4 * h4;
  const S h = std::sqrt(hsq);
  if (h == S(0)) return safe_log(P) / (S(6) * P);  // case 8 (hat family only)
  const S R4 = std::sqrt(P * P + hsq);

  const bool z1 = h1 == S(0), z2 = h2 == S(0), z3 = h3 == S(0),
             z4 = h4 == S(0);
  if (z2 && z3 && z4) {  // #1
    return phi1(P, h) / S(6);
  }
  if (z1 && z3 && z4) {  // #2
    const S R2 = std::sqrt(P * P + h2 * h2);
    return (phi1(P, h) - S(1) / (R2 + h2)) / S(6);
  }
  if (z3 && z4) {  // #3
    return (phi1(P, h) - h2 / h1 * phi2(P, h1, hsq, h2 * h2)) / S(6);
  }
  if (z2 && z4) {  // #4
    const S r = h3 * h3 / (h1 * h1);
    return ((S(1) - r) * phi1(P, h) -
            S(2) * h3 / h1 * phi2(P, h1, hsq, h3 * h3) +
            r * phi3(P, h1, hsq, h3 * h3)) /
           S(6);
  }
  if (z1 && z4) {  // #5
    return (hsq / (h2 * h2) * phi1(P, h) - S(1) / (R4 + h) -
            phi4(P, h3, h2, h)) /
           S(6);
  }
  if (z2 && z3) {  // #6
    const S r = h4 * h4 / (h1 * h1);
    return ((S(1) - S(3) * r) * phi1(P, h) -
            (S(3) - r) * h4 / h1 * phi2(P, h1, hsq, h4 * h4) +
            S(3) * r * phi3(P, h1, hsq, h4 * h4) -
            r / (R4 + h4)) /
           S(6);
  }
  // #7
  const S r = h4 * h4 / (h2 * h2);
  return ((S(1) + S(3) * r) * phi1(P, h) -
          S(2) * h4 * h4 * h4 / (h2 * h2 * h2) * phi2(P, h2, hsq, h4 * h4) -
          S(3) * phi4(P, h4, h2, h) +
          (S(2) * h4 * h4 - h2 * h2) / (h2 * h2 * (R4 + h))) /
         S(6);
}

// ---- direct closed forms (Primed chain, patterns #6 and #7 only) ----------

template <class S>
S f4_primed(S P, S h4) {
  const S R = std::sqrt(P * P + h4 * h4);
  // identical to ((P^2 + 2 h^2)/R - 2 h) / P^4
  return S(1) / (R * (R + h4) * (R + h4));
}

template <class S>
S f3_primed(S P, S h4) {
  // (-2 P/(R4+h4) + log((P+R4)/h4)) / P^3
  const S t = P / h4;
  return bk_primed3(t) / (h4 * h4 * h4 * t * t * t);
}

template <class S>
S f2_primed(S P, S h2, S h4) {
  const S P2 = P * P;
  if (h2 == S(0)) {  // #6
    // (1/(R4+h4) - log((P+R4)/h4)/P + 1/(2 h4)) / P^2
    const S t = P / h4;
    return bk_primed2(t) / (h4 * h4 * h4 * t * t);
  }
  // #7: (1/(R4+h4) - 1/(h+h4) - log((R2+R4)/h4)/R2 + log((h2+h)/h4)/h2)/P^2,
  // grouped into exact P^2-proportional pieces
  const S h = std::sqrt(h2 * h2 + h4 * h4);
  const S R2 = std::sqrt(P2 + h2 * h2);
  const S R4 = std::sqrt(P2 + h2 * h2 + h4 * h4);
  const S d2 = P2 / (R2 + h2);  // R2 - h2
  const S d4 = P2 / (R4 + h);   // R4 - h
  const S bracket =
      -P2 / ((R4 + h) * (R4 + h4) * (h + h4)) +
      d2 * safe_log((R2 + R4) / h4) / (R2 * h2) -
      std::log1p((d2 + d4) / (h2 + h)) / h2;
  return bracket / P2;
}

template <class S>
S f1_primed(S P, const GapSet<S>& g) {
  const S h1 = g.h1, h2 = g.h2, h4 = g.h4;
  if (h1 > S(0)) {  // #6
    const S hsq = h1 * h1 + h4 * h4;
    const S R4 = std::sqrt(P * P + hsq);
    return (phi1(P, std::sqrt(hsq)) +
            (h1 * h1 - h4 * h4) / (S(2) * h1 * h4) *
                phi2(P, h1, hsq, h4 * h4) -
            phi3(P, h1, hsq, h4 * h4) + S(1) / (S(2) * (R4 + h4))) /
           (h1 * h1);
  }
  // #7
  const S hsq = h2 * h2 + h4 * h4;
  const S h = std::sqrt(hsq);
  const S R4 = std::sqrt(P * P + hsq);
  // (R2^2/(R4+h4) - h2^2/(h+h4)) / P^2 regrouped into its exact
  // P^2-independent form
  const S tail = S(1) / (R4 + h4) -
                 h2 * h2 / ((R4 + h) * (R4 + h4) * (h + h4));
  return -(phi1(P, h) - h4 / h2 * phi2(P, h2, hsq, h4 * h4) -
           h2 * h2 / (h4 * h4) * phi4(P, h4, h2, h) + tail) /
         (h2 * h2);
}

// ---- generic evaluation with the small-P series branch --------------------

template <class S>
S eval_direct(int d, Chain chain, S P, const GapSet<S>& g) {
  if (chain == Chain::Single) {
    switch (d) {
      case 4: return f4_single(P, g.h4);
      case 3: return f3_single(P, g.h3, g.h4);
      case 2: return f2_single(P, g.h2, g.h3, g.h4);
      default: return f1_single(P, g);
    }
  }
  switch (d) {
    case 4: return f4_primed(P, g.h4);
    case 3: return f3_primed(P, g.h4);
    case 2: return f2_primed(P, g.h2, g.h4);
    default: return f1_primed(P, g);
  }
}

template <class S>
S eval(int d, Chain chain, S P, const GapSet<S>& g);

// Value and first three derivatives of the level-d source G_d at argument R:
// the kernel when d is the top level of the chain, otherwise F_{d+1}. The
// derivatives follow from differentiating the defining ODE.
template <class S>
Derivs<S> source_derivs(int d, Chain chain, S R, const GapSet<S>& g) {
  if (d == 4) {
    const S R2 = R * R;
    if (chain == Chain::Single) {
      return {S(1) / R, -S(1) / R2, S(2) / (R2 * R), -S(6) / (R2 * R2)};
    }
    return {S(1) / (R2 * R), -S(3) / (R2 * R2), S(12) / (R2 * R2 * R),
            -S(60) / (R2 * R2 * R2)};
  }
  const int dn = d + 1;
  const S hn = g.at(dn);
  const S F = eval(dn, chain, R, g);
  const S Rn = std::sqrt(R * R + hn * hn);
  const Derivs<S> src = source_derivs(dn, chain, Rn, g);
  const S F1 = (src.f - S(dn) * F) / R;
  const S F2 = (src.f1 * R / Rn - S(dn + 1) * F1) / R;
  const S F3 = (src.f2 * R * R / (Rn * Rn) +
                src.f1 * hn * hn / (Rn * Rn * Rn) - S(dn + 2) * F2) /
               R;
  return {F, F1, F2, F3};
}

template <class S>
struct Taylor {
  S c0, c2, c4, c6;  // F_d(P) = c0 + c2 P^2 + c4 P^4 + c6 P^6 + O(P^8)
};

template <class S>
Taylor<S> taylor4(int d, Chain chain, const GapSet<S>& g) {
  const S h = g.at(d);
  if (h > S(0)) {
    const Derivs<S> D = source_derivs(d, chain, h, g);
    const S h2 = h * h, h3 = h2 * h;
    const S g0 = D.f;
    const S g2 = D.f1 / (S(2) * h);
    const S g4 = D.f2 / (S(8) * h2) - D.f1 / (S(8) * h3);
    const S g6 = D.f1 / (S(16) * h2 * h3) - D.f2 / (S(16) * h2 * h2) +
                 D.f3 / (S(48) * h3);
    return {g0 / S(d), g2 / S(d + 2), g4 / S(d + 4), g6 / S(d + 6)};
  }
  // zero gap at this level: push the expansion one level up
  const Taylor<S> t = taylor4(d + 1, chain, g);
  return {t.c0 / S(d), t.c2 / S(d + 2), t.c4 / S(d + 4), t.c6 / S(d + 6)};
}

template <class S>
S eval(int d, Chain chain, S P, const GapSet<S>& g) {
  const S heff = g.norm_from(d);
  if (heff > S(0) && P < S(small_p_switch) * heff) {
    const Taylor<S> t = taylor4(d, chain, g);
    const S P2 = P * P;
    return t.c0 + (t.c2 + (t.c4 + t.c6 * P2) * P2) * P2;
  }
  return eval_direct(d, chain, P, g);
}

inline bool admissible(int d, KernelFamily f, int id) {
  switch (f) {
    case KernelFamily::Single:
      return d >= 1 && d <= 4 && id >= 1 && id <= 7;
    case KernelFamily::Primed:
      return d >= 1 && d <= 4 && (id == 6 || id == 7);
    case KernelFamily::Tilde:
      return d >= 1 && d <= 3 && id >= 1 && id <= 7;
    case KernelFamily::Hat:
      return (d == 2 && id >= 1 && id <= 3) ||
             (d == 1 && (id <= 3 || id == 8));
  }
  return false;
}

// Map Tilde/Hat onto the Single chain: constant factor plus a gap shuffle
// (h4 takes the h3 slot for Tilde with nonzero h4; Hat never carries h3, h4).
template <class S>
std::pair<S, GapSet<S>> to_single(KernelFamily f, const GapSet<S>& g) {
  if (f == KernelFamily::Tilde) {
    if (g.h4 > S(0)) return {S(3), GapSet<S>{g.h1, g.h2, g.h4, S(0)}};
    return {S(3), g};
  }
  return {S(6), GapSet<S>{g.h1, g.h2, S(0), S(0)}};
}

}  // namespace pbf_detail

// ---------------------------------------------------------------------------
// Public surface
// ---------------------------------------------------------------------------

template <class Scalar>
Scalar pbf(int d, KernelFamily family, PbfCase c, Scalar P,
           const GapSet<Scalar>& gaps) {
  using namespace pbf_detail;
  if (!admissible(d, family, c.id)) {
    throw InadmissibleCombination(
        std::string("pbf: no F_") + std::to_string(d) + " for family " +
        to_string(family) + " case " + std::to_string(c.id));
  }
  if (!(P > Scalar(0))) throw NonPositiveP("pbf: P must be positive");
  switch (family) {
    case KernelFamily::Single:
      return eval(d, Chain::Single, P, gaps);
    case KernelFamily::Primed:
      return eval(d, Chain::Primed, P, gaps);
    default: {
      const auto [factor, mapped] = to_single(family, gaps);
      return factor * eval(d, Chain::Single, P, mapped);
    }
  }
}

// Right-hand side G_d(R) of the defining ODE at level d (the next PBF up the
// chain, or the kernel at the chain top).
template <class Scalar>
Scalar pbf_source(int d, KernelFamily family, PbfCase c, Scalar R,
                  const GapSet<Scalar>& gaps) {
  switch (family) {
    case KernelFamily::Single:
      if (d == 4) return Scalar(1) / R;
      break;
    case KernelFamily::Primed:
      if (d == 4) return Scalar(1) / (R * R * R);
      break;
    case KernelFamily::Tilde:
      if (d == 3) return Scalar(1) / std::sqrt(R * R + gaps.h4 * gaps.h4);
      break;
    case KernelFamily::Hat:
      if (d == 2) return Scalar(1) / R;
      if (d == 1 && c.id == 8) return Scalar(1) / R;  // 6 F_2 at zero gaps
      break;
  }
  return pbf(d + 1, family, c, R, gaps);
}

// |P F' + d F - G_d(sqrt(P^2+h_d^2))| with F' by central differences;
// test hook for the defining ODE.
template <class Scalar>
Scalar ode_residual(int d, KernelFamily family, PbfCase c, Scalar P,
                    const GapSet<Scalar>& gaps) {
  const Scalar step = Scalar(1e-6) * P;
  const Scalar fp =
      (pbf(d, family, c, P + step, gaps) - pbf(d, family, c, P - step, gaps)) /
      (Scalar(2) * step);
  const Scalar f = pbf(d, family, c, P, gaps);
  const Scalar hd = gaps.at(d);
  const Scalar R = std::sqrt(P * P + hd * hd);
  return std::abs(P * fp + Scalar(d) * f - pbf_source(d, family, c, R, gaps));
}

// The four auxiliary functions of the 1D forms. Phi2 pairs with the first
// nonzero of (h1, h2), Phi4 with the first nonzero of (h3, h4).
template <class Scalar>
struct PhiValues {
  Scalar phi1, phi2, phi3, phi4;
};

template <class Scalar>
PhiValues<Scalar> phi(Scalar P1, const GapSet<Scalar>& g) {
  using namespace pbf_detail;
  if (!(P1 > Scalar(0))) throw NonPositiveP("phi: P1 must be positive");
  const Scalar hsq =
      g.h1 * g.h1 + g.h2 * g.h2 + g.h3 * g.h3 + g.h4 * g.h4;
  const Scalar h = std::sqrt(hsq);
  const Scalar eta2 = g.h1 > Scalar(0) ? g.h1 : g.h2;
  const Scalar eta4 = g.h3 > Scalar(0) ? g.h3 : g.h4;
  PhiValues<Scalar> v;
  v.phi1 = phi1(P1, h);
  v.phi2 = phi2(P1, eta2, hsq, hsq - eta2 * eta2);
  v.phi3 = phi3(P1, g.h1, hsq, hsq - g.h1 * g.h1);
  v.phi4 = phi4(P1, eta4, g.h2, h);
  return v;
}

}  // namespace glq
