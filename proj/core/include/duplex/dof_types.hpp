// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <variant>
#include <vector>

namespace duplex {

// Achievable DoF pair (A->B, B->A). Coordinates are finite and >= 0; the
// positive-part clamp is applied by whoever builds the point.
struct DofPoint {
  double d_ab = 0.0;
  double d_ba = 0.0;

  // Throws std::invalid_argument on negative or non-finite coordinates.
  static DofPoint checked(double d_ab, double d_ba);

  friend bool operator==(const DofPoint&, const DofPoint&) = default;
};

// Convex first-quadrant polygon closed against both axes (downward closed).
// Vertices run counter-clockwise starting at the origin, without duplicates
// or collinear middle points. Degenerate regions (a single point or a
// segment on an axis) keep one or two vertices.
class DofRegion {
 public:
  DofRegion() : vertices_{DofPoint{}} {}

  // Validates the invariants above; throws std::invalid_argument otherwise.
  static DofRegion from_vertices(std::vector<DofPoint> vertices, double tol = 1e-9);

  const std::vector<DofPoint>& vertices() const noexcept { return vertices_; }

  // max over the region of ux*d_ab + uy*d_ba.
  double support(double ux, double uy) const noexcept;
  double max_sum() const noexcept { return support(1.0, 1.0); }

 private:
  explicit DofRegion(std::vector<DofPoint> v) : vertices_(std::move(v)) {}
  friend DofRegion convex_hull(const std::vector<DofPoint>& points);

  std::vector<DofPoint> vertices_;
};

// Power coupling exponent gamma = log P_B / log P_A (or log P_R / log P_A).
class PowerCoupling {
 public:
  // Relay scenarios restrict gamma to (0, 1].
  explicit PowerCoupling(double gamma_exp, bool relay = false);
  double gamma() const noexcept { return gamma_; }

 private:
  double gamma_;
};

struct TwoWay {
  int n_a = 1;
  int n_b = 1;
};

struct TwoHop {
  int n_a = 1;
  int n_r = 1;
  int n_b = 1;
};

struct TwoWayTwoHop {
  int n_a = 1;
  int n_r = 1;
  int n_b = 1;
};

using ScenarioSpec = std::variant<TwoWay, TwoHop, TwoWayTwoHop>;

// Throws std::invalid_argument when any antenna count is < 1.
void validate(const ScenarioSpec& net);

}  // namespace duplex
