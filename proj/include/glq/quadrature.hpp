#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "glq/common.hpp"

namespace glq {

// Globally adaptive 1D quadrature on Gauss7/Kronrod15 pairs, worst-segment
// first. Small and dependency-free; used by the verification oracles.

template <class Scalar>
struct QuadControl {
  Scalar rel_tol = Scalar(1e-12);
  Scalar abs_tol = Scalar(0);
  // noise level of the integrand relative to its own magnitude; the error
  // target never drops below noise_rel * integral of |f|. Needed when f is
  // itself an inner adaptive quadrature and the outer value nearly cancels.
  Scalar noise_rel = Scalar(0);
  int max_segments = 4000;
};

namespace quad_detail {

// QUADPACK dqk15 nodes/weights on [-1, 1].
inline constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

template <class Scalar, class F>
void gk15(const F& f, Scalar a, Scalar b, Scalar& value, Scalar& error,
          std::int64_t& evals) {
  const Scalar c = (a + b) / Scalar(2);
  const Scalar h = (b - a) / Scalar(2);
  Scalar fv[15];
  for (int i = 0; i < 7; ++i) {
    const Scalar dx = h * Scalar(kXgk[i]);
    fv[i] = f(c - dx);
    fv[14 - i] = f(c + dx);
  }
  fv[7] = f(c);
  evals += 15;

  Scalar resk(0), resg(0);
  for (int i = 0; i < 7; ++i) {
    resk += Scalar(kWgk[i]) * (fv[i] + fv[14 - i]);
    if (i % 2 == 1) resg += Scalar(kWg[i / 2]) * (fv[i] + fv[14 - i]);
  }
  resk += Scalar(kWgk[7]) * fv[7];
  resg += Scalar(kWg[3]) * fv[7];

  value = resk * h;
  error = std::abs((resk - resg) * h);
}

}  // namespace quad_detail

template <class Scalar, class F>
Scalar adaptive_quadrature(const F& f, Scalar a, Scalar b,
                           const QuadControl<Scalar>& ctl,
                           Scalar* error_out = nullptr,
                           std::int64_t* evals_out = nullptr) {
  struct Segment {
    Scalar a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
  };

  std::int64_t evals = 0;
  std::vector<Segment> heap;
  heap.reserve(64);
  Scalar done_value(0), done_error(0);  // segments too narrow to split

  Segment s0{a, b, Scalar(0), Scalar(0)};
  quad_detail::gk15(f, a, b, s0.value, s0.error, evals);
  heap.push_back(s0);

  Scalar total = s0.value, total_err = s0.error;
  Scalar abs_total = std::abs(s0.value);
  int segments = 1;
  const auto converged = [&] {
    // the floor terms: error estimates plateau once the integrand itself is
    // only known to noise_rel (or ~1e2 ulp) of its magnitude
    const Scalar floor_rel = std::max(
        ctl.noise_rel,
        Scalar(100) * std::numeric_limits<Scalar>::epsilon());
    const Scalar goal =
        std::max({ctl.abs_tol, ctl.rel_tol * std::abs(total),
                  floor_rel * abs_total});
    return total_err <= goal;
  };
  while (!heap.empty() && !converged()) {
    if (segments >= ctl.max_segments) {
      if (evals_out) *evals_out += evals;
      throw ToleranceNotReached("adaptive quadrature: segment budget spent");
    }
    std::pop_heap(heap.begin(), heap.end());
    const Segment worst = heap.back();
    heap.pop_back();

    const Scalar width_floor =
        Scalar(64) * std::numeric_limits<Scalar>::epsilon() *
        (std::abs(worst.a) + std::abs(worst.b) + Scalar(1));
    if (worst.b - worst.a < width_floor) {
      done_value += worst.value;
      done_error += worst.error;
      continue;
    }

    const Scalar mid = (worst.a + worst.b) / Scalar(2);
    Segment left{worst.a, mid, Scalar(0), Scalar(0)};
    Segment right{mid, worst.b, Scalar(0), Scalar(0)};
    quad_detail::gk15(f, left.a, left.b, left.value, left.error, evals);
    quad_detail::gk15(f, right.a, right.b, right.value, right.error, evals);
    ++segments;

    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    abs_total += std::abs(left.value) + std::abs(right.value) -
                 std::abs(worst.value);

    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end());
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end());
  }

  // recompute the totals once for a tight result
  Scalar value = done_value, err = done_error;
  for (const auto& s : heap) {
    value += s.value;
    err += s.error;
  }
  if (error_out) *error_out = err;
  if (evals_out) *evals_out += evals;
  return value;
}

}  // namespace glq
