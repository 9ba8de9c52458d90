#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "handlebody/moebius.hpp"

namespace hb {

/// Geodesic of the disk model, stored by its two ideal endpoints so that
/// diameters need no special casing in the boundary predicates.  The carrier
/// (Euclidean circle orthogonal to the unit circle, or a diameter) is cached.
struct Geodesic {
  double theta1 = 0.0, theta2 = kPi;  // radians in [0, 2*pi)
  bool diameter = true;
  Complex center{0.0, 0.0};  // carrier circle when not a diameter
  double radius = 0.0;

  Geodesic() = default;
  Geodesic(double t1, double t2);

  DiskPoint endpoint1() const { return DiskPoint::boundary(theta1); }
  DiskPoint endpoint2() const { return DiskPoint::boundary(theta2); }
  /// Unit direction of the diameter (valid when diameter == true).
  Complex direction() const { return std::polar(1.0, theta1); }

  /// Signed Euclidean side value: 0 on the carrier, sign distinguishes the
  /// two half-planes.  Positive on the side containing the origin (for a
  /// diameter the sign of the cross product with the direction).
  double side_value(Complex z) const;

  /// Same geodesic as an unordered endpoint pair, chordal tolerance.
  bool same_line(const Geodesic& other, double tol = kGeomTol) const;

  Geodesic reversed() const { return Geodesic(theta2, theta1); }
};

/// Arc of a geodesic between two points on it (interior or ideal).
struct GeodesicSegment {
  Geodesic carrier;
  DiskPoint a, b;
};

/// Counterclockwise arc of the unit circle.
struct BoundaryInterval {
  double start = 0.0, end = 0.0;  // ccw from start to end
  double length() const;
  bool contains(double theta, double tol = 0.0) const;
  double midpoint() const;
};

// --------------------------------------------------------- classification

enum class MapKind { Hyperbolic, Elliptic, Parabolic, Identity };

struct IsometryClass {
  MapKind kind = MapKind::Identity;
  Complex trace{2.0, 0.0};
  std::vector<DiskPoint> fixed_points;
  std::optional<Geodesic> axis;          // hyperbolic: repelling -> attracting
  std::optional<double> translation_length;
  std::optional<double> rotation_angle;  // elliptic, folded into (0, pi]
};

/// Trace classification of a preserving disk map.  Raises NonDiskMap if m
/// does not preserve the unit circle within kGeomTol.
IsometryClass classify(const MoebiusMap& m);

Geodesic axis_of(const MoebiusMap& m);  // shorthand, hyperbolic maps only

// ---------------------------------------------------------- constructions

/// Unique geodesic whose closure contains both points.  Raises Coincident.
Geodesic geodesic_through(const DiskPoint& z, const DiskPoint& w);

/// Reflection (inversion) in a geodesic: a reversing involution.
MoebiusMap reflect_in(const Geodesic& line);
/// Half-turn about an interior point: the preserving elliptic of order two.
MoebiusMap reflect_in(const DiskPoint& point);
/// Reflection in the unit circle itself, z -> 1/conj(z).
MoebiusMap reflect_in_boundary();

/// Raises Intersecting / Asymptotic when no common perpendicular exists.
Geodesic common_perpendicular(const Geodesic& g1, const Geodesic& g2);

struct GeodesicCrossing {
  DiskPoint point;
  double angle;  // unsigned, in (0, pi/2]
};

/// Interior crossing point and angle, or nullopt for disjoint/asymptotic.
std::optional<GeodesicCrossing> intersection(const Geodesic& g1,
                                             const Geodesic& g2);

enum class SeparationKind { BoundsDomain, Separates, NotDisjoint };

struct SeparationResult {
  SeparationKind kind;
  int index = -1;  // offending line for Separates (0-based)
};

/// "No one separates the other two": the stopping-configuration predicate.
SeparationResult bounds_domain(const Geodesic& g1, const Geodesic& g2,
                               const Geodesic& g3);

// ---------------------------------------------------------------- helpers

/// Hyperbolic distance from a point to a geodesic (half the distance to the
/// reflected image).
double point_line_dist(const DiskPoint& z, const Geodesic& g);

/// Preserving map taking g onto the real diameter with endpoint1 -> -1 and
/// endpoint2 -> +1.
MoebiusMap straighten(const Geodesic& g);

/// Point of g at signed arc length t from the point of g nearest `from`,
/// positive toward endpoint2.
DiskPoint walk_along(const Geodesic& g, const DiskPoint& from, double t);

/// Point at distance s from g, on the perpendicular through the point of g
/// at arc length tau from `anchor` (anchor must lie on g); side = +-1 picks
/// the half-plane by the sign convention of Geodesic::side_value.
DiskPoint equidistant_point(const Geodesic& g, const DiskPoint& anchor,
                            double tau, double s, int side);

/// Fixed geodesic of a reversing involution (roots of the boundary
/// fixed-point equation).  Raises StoppingViolated if there is none.
Geodesic fixed_line_of_reversing_involution(const MoebiusMap& m);

/// Interior fixed point of an elliptic of order two.
DiskPoint fixed_point_of_halfturn(const MoebiusMap& m);

/// Hyperbolic translation with the given axis and signed length (positive
/// toward endpoint2 of the axis).
MoebiusMap translation_along(const Geodesic& axis, double length);

/// Sample parameter-uniform points of a segment (by hyperbolic arc length).
std::vector<DiskPoint> sample_segment(const GeodesicSegment& seg, int n);

double normalize_angle(double t);           // into [0, 2*pi)
double ccw_delta(double from, double to);   // into [0, 2*pi)

}  // namespace hb
