#include "handlebody/moebius.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hb {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonDiskMap: return "NON_DISK_MAP";
    case ErrorCode::NotInterior: return "NOT_INTERIOR";
    case ErrorCode::Coincident: return "COINCIDENT";
    case ErrorCode::Intersecting: return "INTERSECTING";
    case ErrorCode::Asymptotic: return "ASYMPTOTIC";
    case ErrorCode::NotFreeDiscrete: return "NOT_FREE_DISCRETE";
    case ErrorCode::DescentTimeout: return "DESCENT_TIMEOUT";
    case ErrorCode::StoppingViolated: return "STOPPING_VIOLATED";
    case ErrorCode::FrameMismatch: return "FRAME_MISMATCH";
    case ErrorCode::CycleFailure: return "CYCLE_FAILURE";
    case ErrorCode::LocateTimeout: return "LOCATE_TIMEOUT";
    case ErrorCode::BadLabel: return "BAD_LABEL";
    case ErrorCode::BadBoundaryElement: return "BAD_BOUNDARY_ELEMENT";
    case ErrorCode::HomomorphismFailure: return "HOMOMORPHISM_FAILURE";
    case ErrorCode::Schema: return "SCHEMA";
    case ErrorCode::Determinant: return "DETERMINANT";
    case ErrorCode::NotHyperbolic: return "NOT_HYPERBOLIC";
    case ErrorCode::CheckFailure: return "CHECK_FAILURE";
  }
  return "UNKNOWN";
}

void raise(ErrorCode code, const std::string& msg) {
  throw Error(code, std::string(error_code_name(code)) + ": " + msg);
}

// ------------------------------------------------------------------ points

DiskPoint DiskPoint::interior(Complex z) {
  if (std::abs(z) >= 1.0) raise(ErrorCode::NotInterior, "interior() with |z| >= 1");
  return {z, PointKind::Interior};
}

DiskPoint DiskPoint::boundary(double theta) {
  return {std::polar(1.0, theta), PointKind::Boundary};
}

DiskPoint DiskPoint::boundary_unit(Complex near_unit) {
  double m = std::abs(near_unit);
  if (m < kAlgTol) raise(ErrorCode::Schema, "boundary_unit() near zero");
  return {near_unit / m, PointKind::Boundary};
}

DiskPoint DiskPoint::exterior(Complex z) { return {z, PointKind::Exterior}; }

DiskPoint DiskPoint::infinity() {
  return {Complex(std::numeric_limits<double>::infinity(), 0.0),
          PointKind::Infinity};
}

DiskPoint DiskPoint::from_value(Complex z) {
  if (std::isinf(z.real()) || std::isinf(z.imag()) || std::abs(z) > 1e15)
    return infinity();
  double m = std::abs(z);
  if (std::abs(m - 1.0) < kAlgTol) return boundary_unit(z);
  if (m < 1.0) return {z, PointKind::Interior};
  return {z, PointKind::Exterior};
}

double DiskPoint::angle() const {
  double t = std::arg(z);
  if (t < 0) t += 2 * kPi;
  return t;
}

double chordal_dist(const DiskPoint& a, const DiskPoint& b) {
  const bool ia = a.is_infinity(), ib = b.is_infinity();
  if (ia && ib) return 0.0;
  if (ia) return 2.0 / std::sqrt(1.0 + std::norm(b.z));
  if (ib) return 2.0 / std::sqrt(1.0 + std::norm(a.z));
  return 2.0 * std::abs(a.z - b.z) /
         std::sqrt((1.0 + std::norm(a.z)) * (1.0 + std::norm(b.z)));
}

double dist(Complex z, Complex w) {
  double r = std::abs((z - w) / (1.0 - std::conj(z) * w));
  r = std::min(r, 1.0 - 1e-16);
  return 2.0 * std::atanh(r);
}

double dist(const DiskPoint& z, const DiskPoint& w) {
  if (!z.is_interior() || !w.is_interior())
    raise(ErrorCode::NotInterior, "dist() requires interior points");
  return dist(z.z, w.z);
}

// ------------------------------------------------------------------- maps

MoebiusMap::MoebiusMap()
    : a_(1.0), b_(0.0), c_(0.0), d_(1.0), orientation_(Orientation::Preserving) {}

MoebiusMap::MoebiusMap(Complex a, Complex b, Complex c, Complex d,
                       Orientation orientation)
    : a_(a), b_(b), c_(c), d_(d), orientation_(orientation) {
  normalize(true);
}

MoebiusMap::MoebiusMap(Complex a, Complex b, Complex c, Complex d,
                       Orientation orientation, AlreadyUnit)
    : a_(a), b_(b), c_(c), d_(d), orientation_(orientation) {
  // Products and inverses of unit-determinant matrices are unit-determinant
  // exactly; recomputing det here only injects cancellation error when the
  // entries are large, so rescaling is skipped.
  normalize(false);
}

void MoebiusMap::normalize(bool rescale) {
  if (rescale) {
    Complex det = a_ * d_ - b_ * c_;
    if (std::abs(det) < kAlgTol)
      raise(ErrorCode::Determinant, "singular matrix");
    Complex s = std::sqrt(det);
    a_ /= s; b_ /= s; c_ /= s; d_ /= s;
  }
  // Fix the projective sign: Re(tr) >= 0, deterministic tie-break at 0.
  Complex tr = a_ + d_;
  bool flip = false;
  if (tr.real() < -kAlgTol) {
    flip = true;
  } else if (std::abs(tr.real()) <= kAlgTol) {
    if (tr.imag() < -kAlgTol) {
      flip = true;
    } else if (std::abs(tr.imag()) <= kAlgTol) {
      const double probe[6] = {a_.real(), a_.imag(), b_.real(),
                               b_.imag(), c_.real(), c_.imag()};
      for (double v : probe) {
        if (v > kAlgTol) break;
        if (v < -kAlgTol) { flip = true; break; }
      }
    }
  }
  if (flip) { a_ = -a_; b_ = -b_; c_ = -c_; d_ = -d_; }
}

MoebiusMap MoebiusMap::inverse() const {
  if (preserving())
    return MoebiusMap(d_, -b_, -c_, a_, Orientation::Preserving, AlreadyUnit{});
  // (M . conj)^-1 = conj(M^-1) . conj
  return MoebiusMap(std::conj(d_), -std::conj(b_), -std::conj(c_),
                    std::conj(a_), Orientation::Reversing, AlreadyUnit{});
}

Complex MoebiusMap::apply_value(Complex z) const {
  if (!preserving()) z = std::conj(z);
  const double inf = std::numeric_limits<double>::infinity();
  if (std::isinf(z.real()) || std::isinf(z.imag()) || std::abs(z) > 1e15) {
    if (std::abs(c_) < kAlgTol) return Complex(inf, 0.0);
    return a_ / c_;
  }
  Complex den = c_ * z + d_;
  if (std::abs(den) < kAlgTol * std::max(1.0, std::abs(z)))
    return Complex(inf, 0.0);
  return (a_ * z + b_) / den;
}

DiskPoint MoebiusMap::apply(const DiskPoint& p) const {
  Complex w = apply_value(p.is_infinity() ? Complex(std::numeric_limits<double>::infinity(), 0.0)
                                          : p.z);
  CircleBehavior cb = circle_behavior();
  if (cb == CircleBehavior::NotCircleMap) return DiskPoint::from_value(w);
  // Circle maps: propagate the tag, so boundary points stay boundary and
  // interior images never drift across the unit circle numerically.
  PointKind k = p.kind;
  if (cb == CircleBehavior::SwapsSides) {
    if (k == PointKind::Interior) k = PointKind::Exterior;
    else if (k == PointKind::Exterior) k = PointKind::Interior;
    else if (k == PointKind::Infinity) k = PointKind::Interior;
  }
  if (std::isinf(w.real()) || std::isinf(w.imag()) || std::abs(w) > 1e15)
    return DiskPoint::infinity();
  if (k == PointKind::Boundary) return DiskPoint::boundary_unit(w);
  if (k == PointKind::Interior && std::abs(w) >= 1.0)
    w *= (1.0 - 1e-16) / std::abs(w);  // clamp roundoff at the circle
  return {w, k};
}

CircleBehavior MoebiusMap::circle_behavior() const {
  // Maps preserving the unit circle have d = +-conj(a), c = +-conj(b) with
  // matching signs; + preserves the two sides, - swaps them.
  double keep = std::max(std::abs(d_ - std::conj(a_)), std::abs(c_ - std::conj(b_)));
  double swap = std::max(std::abs(d_ + std::conj(a_)), std::abs(c_ + std::conj(b_)));
  if (keep < kGeomTol) return CircleBehavior::PreservesSides;
  if (swap < kGeomTol) return CircleBehavior::SwapsSides;
  return CircleBehavior::NotCircleMap;
}

bool MoebiusMap::is_identity(double tol) const {
  if (!preserving()) return false;
  return projective_eq(*this, MoebiusMap::identity(), tol);
}

MoebiusMap operator*(const MoebiusMap& m, const MoebiusMap& n) {
  // Matrix part of m . n; reversing m conjugates n's entries.
  Complex na = n.a_, nb = n.b_, nc = n.c_, nd = n.d_;
  if (!m.preserving()) {
    na = std::conj(na); nb = std::conj(nb);
    nc = std::conj(nc); nd = std::conj(nd);
  }
  Orientation o = (m.orientation_ == n.orientation_) ? Orientation::Preserving
                                                     : Orientation::Reversing;
  return MoebiusMap(m.a_ * na + m.b_ * nc, m.a_ * nb + m.b_ * nd,
                    m.c_ * na + m.d_ * nc, m.c_ * nb + m.d_ * nd, o,
                    AlreadyUnit{});
}

MoebiusMap compose(const MoebiusMap& m, const MoebiusMap& n) { return m * n; }

double projective_gap(const MoebiusMap& m, const MoebiusMap& n) {
  auto entry_gap = [](const MoebiusMap& x, const MoebiusMap& y, double sign) {
    return std::max({std::abs(x.a() - sign * y.a()), std::abs(x.b() - sign * y.b()),
                     std::abs(x.c() - sign * y.c()), std::abs(x.d() - sign * y.d())});
  };
  return std::min(entry_gap(m, n, 1.0), entry_gap(m, n, -1.0));
}

bool projective_eq(const MoebiusMap& m, const MoebiusMap& n, double tol) {
  if (m.orientation() != n.orientation()) return false;
  return projective_gap(m, n) < tol;
}

}  // namespace hb
