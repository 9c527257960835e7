#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace glq {

template <class Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateTriangle : Error {
  using Error::Error;
};
struct NotParallel : Error {
  using Error::Error;
};
struct AmbiguousContact : Error {
  using Error::Error;
};
struct InvalidGapPattern : Error {
  using Error::Error;
};
struct InadmissibleCombination : Error {
  using Error::Error;
};
struct NonPositiveP : Error {
  using Error::Error;
};
struct DivergentEdgeIntegral : Error {
  using Error::Error;
};
struct ToleranceNotReached : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Tolerances
// ---------------------------------------------------------------------------

// All thresholds are relative; the geometric scale they apply to is noted
// next to each member.
template <class Scalar>
struct Tolerances {
  // Degenerate triangle: 2A < geom * (longest edge)^2.
  Scalar geom = Scalar(1e-12);
  // Vertex match: |x_i - y_j| <= touch * (mean edge length).
  Scalar touch = Scalar(1e-12);
  // Parallel planes: |1 - |n_x . n_y|| < parallel.
  Scalar parallel = Scalar(1e-12);
  // Gap snapped to zero: h <= gap_zero * (longest edge of the pair).
  Scalar gap_zero = Scalar(1e-10);
  // Rank deficiency in Gram-Schmidt: |u_k|^2 <= rank * max_i |a_i|^2.
  Scalar rank = Scalar(1e-24);
  // Children with |weight| below prune are skipped.
  Scalar prune = Scalar(1e-14);
};

// ---------------------------------------------------------------------------
// Compensated accumulation (Neumaier)
// ---------------------------------------------------------------------------

template <class Scalar>
class CompensatedSum {
 public:
  void add(Scalar x) {
    const Scalar t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  Scalar value() const { return sum_ + comp_; }

 private:
  Scalar sum_ = Scalar(0);
  Scalar comp_ = Scalar(0);
};

}  // namespace glq
