#include "handlebody/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hb {

double normalize_angle(double t) {
  t = std::fmod(t, 2 * kPi);
  if (t < 0) t += 2 * kPi;
  return t;
}

double ccw_delta(double from, double to) { return normalize_angle(to - from); }

namespace {

bool angles_coincide(double a, double b, double tol = kGeomTol) {
  // chord metric avoids wraparound artifacts at 0/2pi
  return std::abs(std::polar(1.0, a) - std::polar(1.0, b)) < tol;
}

std::pair<Complex, Complex> solve_quadratic(Complex qa, Complex qb, Complex qc) {
  // qa z^2 + qb z + qc = 0, |qa| assumed nonzero
  Complex disc = std::sqrt(qb * qb - 4.0 * qa * qc);
  Complex q = (std::abs(qb + disc) > std::abs(qb - disc)) ? -(qb + disc) / 2.0
                                                          : -(qb - disc) / 2.0;
  Complex r1 = q / qa;
  Complex r2 = (std::abs(q) > kAlgTol) ? qc / q : -qb / qa - r1;
  return {r1, r2};
}

}  // namespace

// ---------------------------------------------------------------- Geodesic

Geodesic::Geodesic(double t1, double t2) {
  theta1 = normalize_angle(t1);
  theta2 = normalize_angle(t2);
  if (angles_coincide(theta1, theta2, kAlgTol))
    raise(ErrorCode::Coincident, "geodesic needs two distinct ideal endpoints");
  double s = std::sin(theta2 - theta1);
  if (std::abs(s) < kAlgTol) {
    diameter = true;  // antipodal endpoints
    center = Complex(0, 0);
    radius = 0;
    return;
  }
  diameter = false;
  center = Complex((std::sin(theta2) - std::sin(theta1)) / s,
                   (std::cos(theta1) - std::cos(theta2)) / s);
  radius = std::sqrt(std::max(std::norm(center) - 1.0, 0.0));
}

double Geodesic::side_value(Complex z) const {
  if (diameter) {
    Complex dir = direction();
    return dir.real() * z.imag() - dir.imag() * z.real();
  }
  return std::norm(z - center) - radius * radius;
}

bool Geodesic::same_line(const Geodesic& other, double tol) const {
  return (angles_coincide(theta1, other.theta1, tol) &&
          angles_coincide(theta2, other.theta2, tol)) ||
         (angles_coincide(theta1, other.theta2, tol) &&
          angles_coincide(theta2, other.theta1, tol));
}

double BoundaryInterval::length() const { return ccw_delta(start, end); }

bool BoundaryInterval::contains(double theta, double tol) const {
  double d = ccw_delta(start, theta);
  return d <= length() + tol || d >= 2 * kPi - tol;
}

double BoundaryInterval::midpoint() const {
  return normalize_angle(start + 0.5 * length());
}

// ---------------------------------------------------------- classification

IsometryClass classify(const MoebiusMap& m) {
  if (!m.preserving())
    throw std::invalid_argument("classify() expects a preserving map");
  if (m.circle_behavior() != CircleBehavior::PreservesSides)
    raise(ErrorCode::NonDiskMap, "map does not preserve the unit disk");

  IsometryClass out;
  out.trace = m.trace();
  if (m.is_identity()) {
    out.kind = MapKind::Identity;
    return out;
  }

  const double t = std::abs(out.trace.real());
  const Complex qa = m.c(), qb = m.d() - m.a(), qc = -m.b();

  if (std::abs(t - 2.0) < kGeomTol) {
    out.kind = MapKind::Parabolic;
    Complex z = (std::abs(qa) > kAlgTol)
                    ? -qb / (2.0 * qa)
                    : Complex(std::numeric_limits<double>::infinity(), 0);
    out.fixed_points.push_back(std::isinf(z.real()) ? DiskPoint::infinity()
                                                    : DiskPoint::boundary_unit(z));
    return out;
  }

  if (t < 2.0) {
    out.kind = MapKind::Elliptic;
    out.rotation_angle = 2.0 * std::acos(std::clamp(t / 2.0, 0.0, 1.0));
    if (std::abs(qa) < kAlgTol) {
      out.fixed_points.push_back(DiskPoint::interior(
          std::abs(qb) > kAlgTol ? -qc / qb : Complex(0, 0)));
      out.fixed_points.push_back(DiskPoint::infinity());
    } else {
      auto [r1, r2] = solve_quadratic(qa, qb, qc);
      if (std::abs(r1) > std::abs(r2)) std::swap(r1, r2);
      out.fixed_points.push_back(DiskPoint::from_value(r1));
      out.fixed_points.push_back(DiskPoint::from_value(r2));
    }
    return out;
  }

  out.kind = MapKind::Hyperbolic;
  out.translation_length = 2.0 * std::acosh(t / 2.0);
  // disk-preserving hyperbolic maps never fix infinity, so qa != 0
  auto [r1, r2] = solve_quadratic(qa, qb, qc);
  DiskPoint f1 = DiskPoint::boundary_unit(r1);
  DiskPoint f2 = DiskPoint::boundary_unit(r2);
  // attracting fixed point has |derivative| < 1, i.e. |c z + d| > 1
  double g1 = std::abs(m.c() * f1.z + m.d());
  DiskPoint rep = (g1 > 1.0) ? f2 : f1;
  DiskPoint att = (g1 > 1.0) ? f1 : f2;
  out.fixed_points.push_back(rep);
  out.fixed_points.push_back(att);
  out.axis = Geodesic(rep.angle(), att.angle());
  return out;
}

Geodesic axis_of(const MoebiusMap& m) {
  IsometryClass ic = classify(m);
  if (ic.kind != MapKind::Hyperbolic)
    raise(ErrorCode::NotHyperbolic, "axis_of() requires a hyperbolic map");
  return *ic.axis;
}

// ---------------------------------------------------------- constructions

Geodesic geodesic_through(const DiskPoint& z, const DiskPoint& w) {
  if (z.is_infinity() || w.is_infinity() ||
      (!z.is_interior() && !z.is_boundary()) ||
      (!w.is_interior() && !w.is_boundary()))
    raise(ErrorCode::NotInterior, "geodesic_through() needs points of the closed disk");
  if (chordal_dist(z, w) < 1e-12)
    raise(ErrorCode::Coincident, "geodesic_through() with coincident points");

  const Complex p = z.z, q = w.z;
  // Re(conj(c) x) = (1+|x|^2)/2 for both points; degenerate <=> diameter.
  double det = p.real() * q.imag() - p.imag() * q.real();
  if (std::abs(det) < 1e-12) {
    Complex dir = p - q;
    double t = std::arg(dir);
    return Geodesic(t, t + kPi);
  }
  double c1 = 0.5 * (1.0 + std::norm(p));
  double c2 = 0.5 * (1.0 + std::norm(q));
  Complex c((c1 * q.imag() - c2 * p.imag()) / det,
            (c2 * p.real() - c1 * q.real()) / det);
  double r = std::sqrt(std::max(std::norm(c) - 1.0, 1e-300));
  Complex u1 = (Complex(1.0, r)) / std::conj(c);
  Complex u2 = (Complex(1.0, -r)) / std::conj(c);
  return Geodesic(std::arg(u1), std::arg(u2));
}

MoebiusMap reflect_in(const Geodesic& line) {
  if (line.diameter) {
    // z -> e^{2 i theta} conj(z)
    return MoebiusMap(std::polar(1.0, line.theta1), 0.0, 0.0,
                      std::polar(1.0, -line.theta1), Orientation::Reversing);
  }
  const Complex c = line.center;
  const double r = line.radius;
  const Complex ir(0.0, r);
  return MoebiusMap(c / ir, (r * r - std::norm(c)) / ir, 1.0 / ir,
                    -std::conj(c) / ir, Orientation::Reversing);
}

MoebiusMap reflect_in(const DiskPoint& point) {
  if (!point.is_interior())
    raise(ErrorCode::NotInterior, "half-turn needs an interior point");
  const Complex x = point.z;
  const double s2 = 1.0 - std::norm(x);
  const Complex i(0.0, 1.0);
  return MoebiusMap(i * (1.0 + std::norm(x)) / s2, -2.0 * i * x / s2,
                    2.0 * i * std::conj(x) / s2, -i * (1.0 + std::norm(x)) / s2);
}

MoebiusMap reflect_in_boundary() {
  return MoebiusMap(0.0, Complex(0, -1), Complex(0, -1), 0.0,
                    Orientation::Reversing);
}

Geodesic common_perpendicular(const Geodesic& g1, const Geodesic& g2) {
  for (double s : {g1.theta1, g1.theta2})
    for (double t : {g2.theta1, g2.theta2})
      if (angles_coincide(s, t))
        raise(ErrorCode::Asymptotic, "geodesics share an ideal endpoint");
  MoebiusMap h = reflect_in(g1) * reflect_in(g2);
  IsometryClass ic = classify(h);
  switch (ic.kind) {
    case MapKind::Hyperbolic:
      return *ic.axis;
    case MapKind::Elliptic:
      raise(ErrorCode::Intersecting, "geodesics cross; no common perpendicular");
    default:
      raise(ErrorCode::Asymptotic, "geodesics are asymptotic");
  }
}

std::optional<GeodesicCrossing> intersection(const Geodesic& g1,
                                             const Geodesic& g2) {
  if (g1.same_line(g2)) return std::nullopt;
  for (double s : {g1.theta1, g1.theta2})
    for (double t : {g2.theta1, g2.theta2})
      if (angles_coincide(s, t)) return std::nullopt;
  MoebiusMap h = reflect_in(g1) * reflect_in(g2);
  IsometryClass ic = classify(h);
  if (ic.kind != MapKind::Elliptic) return std::nullopt;
  // rotation angle of R1 R2 is twice the angle between the lines
  double angle = *ic.rotation_angle / 2.0;  // already folded into (0, pi/2]
  DiskPoint p = ic.fixed_points.front();
  return GeodesicCrossing{p, angle};
}

SeparationResult bounds_domain(const Geodesic& g1, const Geodesic& g2,
                               const Geodesic& g3) {
  const Geodesic* g[3] = {&g1, &g2, &g3};
  // shared endpoints or crossings
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      for (double s : {g[i]->theta1, g[i]->theta2})
        for (double t : {g[j]->theta1, g[j]->theta2})
          if (angles_coincide(s, t)) return {SeparationKind::NotDisjoint, -1};
      // interleaving endpoints <=> the geodesics cross
      auto inside = [&](double x) {
        return ccw_delta(g[i]->theta1, x) < ccw_delta(g[i]->theta1, g[i]->theta2);
      };
      if (inside(g[j]->theta1) != inside(g[j]->theta2))
        return {SeparationKind::NotDisjoint, -1};
    }
  for (int i = 0; i < 3; ++i) {
    auto inside = [&](double x) {
      return ccw_delta(g[i]->theta1, x) < ccw_delta(g[i]->theta1, g[i]->theta2);
    };
    bool side[4];
    int k = 0;
    for (int j = 0; j < 3; ++j) {
      if (j == i) continue;
      side[k++] = inside(g[j]->theta1);
      side[k++] = inside(g[j]->theta2);
    }
    if (!(side[0] == side[1] && side[1] == side[2] && side[2] == side[3]))
      return {SeparationKind::Separates, i};
  }
  return {SeparationKind::BoundsDomain, -1};
}

// ---------------------------------------------------------------- helpers

double point_line_dist(const DiskPoint& z, const Geodesic& g) {
  DiskPoint image = reflect_in(g).apply(z);
  return 0.5 * dist(z, image);
}

MoebiusMap straighten(const Geodesic& g) {
  double delta = ccw_delta(g.theta1, g.theta2);
  double mu = g.theta1 + delta / 2.0;
  double psi = delta / 2.0;  // endpoints at -psi, +psi after rotation
  MoebiusMap rot(std::polar(1.0, -mu / 2.0), 0.0, 0.0, std::polar(1.0, mu / 2.0));
  double cp = std::cos(psi);
  double n = (std::abs(cp) < 1e-14) ? 0.0 : (1.0 - std::sin(psi)) / cp;
  MoebiusMap shift(1.0, -n, -n, 1.0);
  // quarter turn sending +-i to +-1
  MoebiusMap quarter(std::polar(1.0, -kPi / 4.0), 0.0, 0.0, std::polar(1.0, kPi / 4.0));
  return quarter * shift * rot;
}

namespace {

double tanh_coordinate(const MoebiusMap& phi, const DiskPoint& p) {
  Complex w = phi.apply(p).z;
  if (std::abs(w.imag()) < 1e-13) return w.real();
  // foot of the perpendicular from w onto the real diameter
  // kappa(z) = i(1+z)/(1-z) maps the diameter to the imaginary axis of H
  Complex kw = Complex(0, 1) * (1.0 + w) / (1.0 - w);
  double m = std::abs(kw);  // foot in H is i*m
  return (m - 1.0) / (m + 1.0);  // kappa^{-1}(i m)
}

}  // namespace

DiskPoint walk_along(const Geodesic& g, const DiskPoint& from, double t) {
  MoebiusMap phi = straighten(g);
  double xi0 = tanh_coordinate(phi, from);
  double tau = 2.0 * std::atanh(std::clamp(xi0, -1.0 + 1e-16, 1.0 - 1e-16));
  double xi = std::tanh((tau + t) / 2.0);
  return phi.inverse().apply(DiskPoint::interior(Complex(xi, 0.0)));
}

DiskPoint equidistant_point(const Geodesic& g, const DiskPoint& anchor,
                            double tau, double s, int side) {
  MoebiusMap phi = straighten(g);
  double xi0 = tanh_coordinate(phi, anchor);
  double tau0 = 2.0 * std::atanh(std::clamp(xi0, -1.0 + 1e-16, 1.0 - 1e-16));
  double xi = std::tanh((tau0 + tau) / 2.0);
  double h = std::tanh(s / 2.0);
  MoebiusMap inv = phi.inverse();
  for (double sgn : {1.0, -1.0}) {
    Complex ih(0.0, sgn * h);
    Complex w = (Complex(xi, 0) + ih) / (1.0 + xi * ih);
    DiskPoint cand = inv.apply(DiskPoint::interior(w));
    if (s == 0.0) return cand;
    if ((g.side_value(cand.z) > 0) == (side > 0)) return cand;
  }
  raise(ErrorCode::BadLabel, "equidistant_point: side selection failed");
}

Geodesic fixed_line_of_reversing_involution(const MoebiusMap& m) {
  if (m.preserving() || !(m * m).is_identity())
    raise(ErrorCode::StoppingViolated, "not a reversing involution");
  // On |z| = 1 the map reads z -> (a + b z)/(c + d z); fixed points solve
  // d z^2 + (c - b) z - a = 0.
  if (std::abs(m.d()) < kAlgTol)
    raise(ErrorCode::StoppingViolated, "degenerate reversing involution");
  auto [r1, r2] = solve_quadratic(m.d(), m.c() - m.b(), -m.a());
  if (std::abs(std::abs(r1) - 1.0) > 1e-6 || std::abs(std::abs(r2) - 1.0) > 1e-6)
    raise(ErrorCode::StoppingViolated, "reversing involution has no fixed line");
  return Geodesic(std::arg(r1), std::arg(r2));
}

DiskPoint fixed_point_of_halfturn(const MoebiusMap& m) {
  if (!m.preserving() || !(m * m).is_identity() ||
      std::abs(m.trace().real()) > kGeomTol)
    raise(ErrorCode::StoppingViolated, "not an order-two elliptic");
  if (std::abs(m.c()) < kAlgTol) {
    Complex z = (std::abs(m.d() - m.a()) > kAlgTol) ? m.b() / (m.d() - m.a())
                                                    : Complex(0, 0);
    return DiskPoint::interior(z);
  }
  auto [r1, r2] = solve_quadratic(m.c(), m.d() - m.a(), -m.b());
  Complex z = (std::abs(r1) <= std::abs(r2)) ? r1 : r2;
  if (std::abs(z) >= 1.0)
    raise(ErrorCode::StoppingViolated, "half-turn fixed point not interior");
  return DiskPoint::interior(z);
}

MoebiusMap translation_along(const Geodesic& axis, double length) {
  MoebiusMap phi = straighten(axis);
  double ch = std::cosh(length / 2.0), sh = std::sinh(length / 2.0);
  MoebiusMap t(ch, sh, sh, ch);
  return phi.inverse() * t * phi;
}

std::vector<DiskPoint> sample_segment(const GeodesicSegment& seg, int n) {
  MoebiusMap phi = straighten(seg.carrier);
  double xa = tanh_coordinate(phi, seg.a);
  double xb = tanh_coordinate(phi, seg.b);
  double ta = 2.0 * std::atanh(std::clamp(xa, -1.0 + 1e-16, 1.0 - 1e-16));
  double tb = 2.0 * std::atanh(std::clamp(xb, -1.0 + 1e-16, 1.0 - 1e-16));
  MoebiusMap inv = phi.inverse();
  std::vector<DiskPoint> out;
  out.reserve(std::max(n, 1));
  for (int k = 0; k < n; ++k) {
    double u = (n == 1) ? 0.5 : double(k) / double(n - 1);
    double xi = std::tanh(((1 - u) * ta + u * tb) / 2.0);
    out.push_back(inv.apply(DiskPoint::interior(Complex(xi, 0.0))));
  }
  return out;
}

}  // namespace hb
