#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace hb {

using Complex = std::complex<double>;

// Tolerances used throughout: algebraic identities (normalization, tags)
// are held to kAlgTol, geometric coincidences to kGeomTol.
inline constexpr double kAlgTol = 1e-12;
inline constexpr double kGeomTol = 1e-9;
inline constexpr double kPi = 3.14159265358979323846;

enum class ErrorCode {
  NonDiskMap,
  NotInterior,
  Coincident,
  Intersecting,
  Asymptotic,
  NotFreeDiscrete,
  DescentTimeout,
  StoppingViolated,
  FrameMismatch,
  CycleFailure,
  LocateTimeout,
  BadLabel,
  BadBoundaryElement,
  HomomorphismFailure,
  Schema,
  Determinant,
  NotHyperbolic,
  CheckFailure,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& msg);

// ------------------------------------------------------------------ points

enum class PointKind { Interior, Boundary, Exterior, Infinity };

/// A point of the extended plane tagged by its position relative to the
/// unit circle.  Boundary points keep |z| == 1 exactly.
struct DiskPoint {
  Complex z{0.0, 0.0};
  PointKind kind = PointKind::Interior;

  static DiskPoint interior(Complex z);
  static DiskPoint boundary(double theta);
  static DiskPoint boundary_unit(Complex near_unit);
  static DiskPoint exterior(Complex z);
  static DiskPoint infinity();
  /// Tag from the modulus alone (kAlgTol band around |z| == 1).
  static DiskPoint from_value(Complex z);

  double angle() const;  // boundary points: arg z in [0, 2*pi)
  bool is_interior() const { return kind == PointKind::Interior; }
  bool is_boundary() const { return kind == PointKind::Boundary; }
  bool is_infinity() const { return kind == PointKind::Infinity; }
};

/// Chordal metric on the Riemann sphere (diameter 2), total on DiskPoint.
double chordal_dist(const DiskPoint& a, const DiskPoint& b);

/// Hyperbolic metric of the unit disk.  Raises NotInterior unless both
/// arguments are interior points.
double dist(const DiskPoint& z, const DiskPoint& w);
double dist(Complex z, Complex w);

// ------------------------------------------------------------------- maps

enum class Orientation { Preserving, Reversing };

enum class CircleBehavior { PreservesSides, SwapsSides, NotCircleMap };

/// Unit-determinant 2x2 complex matrix with an orientation flag.  A
/// preserving map acts as z -> (az+b)/(cz+d), a reversing one acts on
/// conj(z) instead.  Normalization fixes det = 1 and Re(a+d) >= 0 (with a
/// deterministic tie-break for traceless maps).
class MoebiusMap {
 public:
  MoebiusMap();  // identity
  MoebiusMap(Complex a, Complex b, Complex c, Complex d,
             Orientation orientation = Orientation::Preserving);

  static MoebiusMap identity() { return MoebiusMap(); }

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  Complex c() const { return c_; }
  Complex d() const { return d_; }
  Orientation orientation() const { return orientation_; }
  bool preserving() const { return orientation_ == Orientation::Preserving; }

  Complex det() const { return a_ * d_ - b_ * c_; }
  Complex trace() const { return a_ + d_; }

  MoebiusMap inverse() const;
  DiskPoint apply(const DiskPoint& p) const;
  Complex apply_value(Complex z) const;  // may return inf

  /// Behavior relative to the unit circle, within kGeomTol.
  CircleBehavior circle_behavior() const;

  bool is_identity(double tol = kGeomTol) const;

  friend MoebiusMap operator*(const MoebiusMap& m, const MoebiusMap& n);

 private:
  struct AlreadyUnit {};
  MoebiusMap(Complex a, Complex b, Complex c, Complex d, Orientation o,
             AlreadyUnit);
  void normalize(bool rescale);
  Complex a_, b_, c_, d_;
  Orientation orientation_;
};

MoebiusMap compose(const MoebiusMap& m, const MoebiusMap& n);  // m after n

/// Entrywise max-norm distance min(|M-N|, |M+N|); flags must match.
bool projective_eq(const MoebiusMap& m, const MoebiusMap& n,
                   double tol = kGeomTol);
double projective_gap(const MoebiusMap& m, const MoebiusMap& n);

}  // namespace hb
