#pragma once

namespace eqnn {

/// A feature vector (x1, x2) on the square [-1, 1]^2.
struct Point2 {
  double x1 = 0.0;
  double x2 = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

}  // namespace eqnn
