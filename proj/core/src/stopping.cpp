#include "handlebody/stopping.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <queue>

namespace hb {

const char* case_name(CaseTag t) {
  return t == CaseTag::Disjoint ? "disjoint" : "intersecting";
}

const char* move_name(NielsenMove m) {
  switch (m) {
    case NielsenMove::InvertFirst: return "invert_first";
    case NielsenMove::InvertSecond: return "invert_second";
    case NielsenMove::Swap: return "swap";
    case NielsenMove::MulSecond: return "second_to_first_second";
    case NielsenMove::MulSecondInv: return "second_to_first_second_inv";
    case NielsenMove::MulFirst: return "first_to_first_second";
  }
  return "?";
}

std::pair<MoebiusMap, MoebiusMap> apply_move(
    const std::pair<MoebiusMap, MoebiusMap>& pair, NielsenMove move) {
  const MoebiusMap& A = pair.first;
  const MoebiusMap& B = pair.second;
  switch (move) {
    case NielsenMove::InvertFirst: return {A.inverse(), B};
    case NielsenMove::InvertSecond: return {A, B.inverse()};
    case NielsenMove::Swap: return {B, A};
    case NielsenMove::MulSecond: return {A, A * B};
    case NielsenMove::MulSecondInv: return {A, A * B.inverse()};
    case NielsenMove::MulFirst: return {A * B, B};
  }
  return pair;
}

MoebiusMap commutator(const MoebiusMap& X, const MoebiusMap& Y) {
  return X * Y * X.inverse() * Y.inverse();
}

namespace {

double raw_commutator_trace(const MoebiusMap& C, const MoebiusMap& D) {
  // The product of the four normalized matrices; sign flips of C or D
  // cancel, so the trace is canonical.
  Complex a = C.a(), b = C.b(), c = C.c(), d = C.d();
  Complex e = D.a(), f = D.b(), g = D.c(), h = D.d();
  // M = C D C^-1 D^-1 computed entrywise
  auto mul = [](const Complex m[4], const Complex n[4], Complex out[4]) {
    out[0] = m[0] * n[0] + m[1] * n[2];
    out[1] = m[0] * n[1] + m[1] * n[3];
    out[2] = m[2] * n[0] + m[3] * n[2];
    out[3] = m[2] * n[1] + m[3] * n[3];
  };
  Complex M1[4] = {a, b, c, d}, M2[4] = {e, f, g, h};
  Complex M3[4] = {d, -b, -c, a}, M4[4] = {h, -f, -g, e};
  Complex t1[4], t2[4], t3[4];
  mul(M1, M2, t1);
  mul(t1, M3, t2);
  mul(t2, M4, t3);
  return (t3[0] + t3[3]).real();
}

void require_hyperbolic(const MoebiusMap& m, const char* who) {
  if (!m.preserving())
    raise(ErrorCode::NotHyperbolic, std::string(who) + " is orientation-reversing");
  IsometryClass ic = classify(m);
  if (ic.kind != MapKind::Hyperbolic)
    raise(ErrorCode::NotHyperbolic, std::string(who) + " is not hyperbolic");
}

struct IntersectingData {
  DiskPoint p, pA, pB;
  MoebiusMap Ep, EpA, EpB;
};

// p = Ax_A ^ Ax_B; E_{p_A} = E_p A and E_{p_B} = E_p B from the
// factorizations A = E_p E_{p_A}, B = E_p E_{p_B}.
IntersectingData intersecting_points(const MoebiusMap& A, const MoebiusMap& B) {
  Geodesic axA = axis_of(A), axB = axis_of(B);
  auto cross = intersection(axA, axB);
  if (!cross)
    raise(ErrorCode::FrameMismatch, "axes do not intersect");
  IntersectingData out;
  out.p = cross->point;
  out.Ep = reflect_in(out.p);
  out.EpA = out.Ep * A;
  out.EpB = out.Ep * B;
  out.pA = fixed_point_of_halfturn(out.EpA);
  out.pB = fixed_point_of_halfturn(out.EpB);
  return out;
}

bool triangle_non_obtuse(double a, double b, double c) {
  // hyperbolic law of cosines; "acute" is open, so allow a kGeomTol margin
  auto cos_angle = [](double opp, double s1, double s2) {
    return (std::cosh(s1) * std::cosh(s2) - std::cosh(opp)) /
           (std::sinh(s1) * std::sinh(s2));
  };
  return cos_angle(a, b, c) > -kGeomTol && cos_angle(b, a, c) > -kGeomTol &&
         cos_angle(c, a, b) > -kGeomTol;
}

}  // namespace

std::pair<CaseTag, double> commutator_case(const MoebiusMap& C,
                                           const MoebiusMap& D) {
  require_hyperbolic(C, "first generator");
  require_hyperbolic(D, "second generator");
  double tr = raw_commutator_trace(C, D);
  if (std::abs(tr) <= 2.0 + kGeomTol)
    raise(ErrorCode::NotFreeDiscrete,
          "commutator trace in [-2, 2]: elliptic or parabolic element");
  return {tr > 2.0 ? CaseTag::Disjoint : CaseTag::Intersecting, tr};
}

bool stopping_test(const MoebiusMap& A, const MoebiusMap& B, CaseTag tag) {
  try {
    if (tag == CaseTag::Disjoint) {
      Geodesic axA = axis_of(A), axB = axis_of(B);
      Geodesic L = common_perpendicular(axA, axB);
      MoebiusMap RL = reflect_in(L);
      Geodesic LA = fixed_line_of_reversing_involution(RL * A);
      Geodesic LB = fixed_line_of_reversing_involution(RL * B);
      return bounds_domain(L, LA, LB).kind == SeparationKind::BoundsDomain;
    }
    IntersectingData d = intersecting_points(A, B);
    double dA = dist(d.p, d.pA);
    double dB = dist(d.p, d.pB);
    double dAB = dist(d.pA, d.pB);
    if (dA > dB + kGeomTol || dB > dAB + kGeomTol) return false;
    return triangle_non_obtuse(dAB, dA, dB);
  } catch (const Error&) {
    return false;
  }
}

StoppingResult nielsen_search(const MoebiusMap& C, const MoebiusMap& D) {
  auto [tag, raw_tr] = commutator_case(C, D);
  (void)raw_tr;

  using Pair = std::pair<MoebiusMap, MoebiusMap>;
  struct Node {
    Pair pair;
    double sum;
    std::vector<NielsenMove> path;
    std::uint64_t seq;
  };
  auto trace_sum = [](const Pair& p) {
    return std::abs(p.first.trace().real()) + std::abs(p.second.trace().real());
  };
  auto cmp = [](const Node& x, const Node& y) {
    if (x.sum != y.sum) return x.sum > y.sum;
    return x.seq > y.seq;  // deterministic FIFO among ties
  };
  std::priority_queue<Node, std::vector<Node>, decltype(cmp)> queue(cmp);
  std::vector<Pair> visited;
  auto seen = [&](const Pair& p) {
    for (const Pair& q : visited)
      if (projective_eq(p.first, q.first) && projective_eq(p.second, q.second))
        return true;
    return false;
  };

  const NielsenMove kMoves[6] = {
      NielsenMove::InvertFirst,  NielsenMove::InvertSecond, NielsenMove::Swap,
      NielsenMove::MulSecond,    NielsenMove::MulSecondInv, NielsenMove::MulFirst};

  std::uint64_t seq = 0;
  Pair start{C, D};
  queue.push({start, trace_sum(start), {}, seq++});
  visited.push_back(start);

  const std::size_t kIterationCap = 100000;
  std::size_t iter = 0;
  std::vector<std::pair<double, double>> history;

  while (!queue.empty()) {
    if (++iter > kIterationCap)
      raise(ErrorCode::DescentTimeout, "nielsen_search iteration cap");
    Node node = queue.top();
    queue.pop();
    history.emplace_back(std::abs(node.pair.first.trace().real()),
                         std::abs(node.pair.second.trace().real()));
    if (stopping_test(node.pair.first, node.pair.second, tag)) {
      StoppingResult res;
      res.A = node.pair.first;
      res.B = node.pair.second;
      res.moves = node.path;
      res.trace_history = std::move(history);
      res.frame = stopping_frame(res.A, res.B, tag);
      return res;
    }
    for (NielsenMove m : kMoves) {
      Pair next;
      try {
        next = apply_move(node.pair, m);
      } catch (const Error&) {
        continue;  // numerically degenerate product, far from minimal anyway
      }
      double s = trace_sum(next);
      // The descent is monotone: never take a trace-increasing step.
      if (s > node.sum + kGeomTol) continue;
      // Every Nielsen image of a free hyperbolic pair is hyperbolic; a
      // smaller trace signals numerical blowup along a conjugation chain.
      if (std::abs(next.first.trace().real()) <= 2.0 + kGeomTol ||
          std::abs(next.second.trace().real()) <= 2.0 + kGeomTol)
        continue;
      auto magnitude = [](const MoebiusMap& x) {
        return std::max({std::abs(x.a()), std::abs(x.b()), std::abs(x.c()),
                         std::abs(x.d())});
      };
      if (magnitude(next.first) > 1e8 || magnitude(next.second) > 1e8) continue;
      if (seen(next)) continue;
      visited.push_back(next);
      auto path = node.path;
      path.push_back(m);
      queue.push({std::move(next), s, std::move(path), seq++});
    }
  }
  raise(ErrorCode::DescentTimeout, "nielsen_search exhausted its move space");
}

StoppingFrame stopping_frame(const MoebiusMap& A, const MoebiusMap& B,
                             CaseTag tag) {
  StoppingFrame frame;
  frame.tag = tag;
  if (tag == CaseTag::Disjoint) {
    DisjointFrame f;
    f.axA = axis_of(A);
    f.axB = axis_of(B);
    f.axAinvB = axis_of(A.inverse() * B);
    f.axABinv = axis_of(A * B.inverse());
    f.L = common_perpendicular(f.axA, f.axB);
    MoebiusMap RL = reflect_in(f.L);
    f.LA = fixed_line_of_reversing_involution(RL * A);
    f.LB = fixed_line_of_reversing_involution(RL * B);
    auto apply_line = [](const MoebiusMap& m, const Geodesic& g) {
      return Geodesic(m.apply(g.endpoint1()).angle(),
                      m.apply(g.endpoint2()).angle());
    };
    f.LAbar = apply_line(A, f.LA);
    f.LBbar = apply_line(B, f.LB);

    if (!projective_eq(A, RL * reflect_in(f.LA)) ||
        !projective_eq(B, RL * reflect_in(f.LB)))
      raise(ErrorCode::StoppingViolated, "reflection factorization failed");
    if (bounds_domain(f.L, f.LA, f.LB).kind != SeparationKind::BoundsDomain)
      raise(ErrorCode::StoppingViolated, "reflection lines do not bound a domain");
    frame.disjoint = std::move(f);
    return frame;
  }

  IntersectingFrame f;
  IntersectingData d = intersecting_points(A, B);
  f.p = d.p;
  f.pA = d.pA;
  f.pB = d.pB;
  f.Ep = d.Ep;
  f.EpA = d.EpA;
  f.EpB = d.EpB;
  f.pAbar = A.apply(f.pA);
  f.pBbar = B.apply(f.pB);
  f.axA = axis_of(A);
  f.axB = axis_of(B);
  f.axBinvAinv = axis_of(commutator(B.inverse(), A.inverse()));
  f.axAinvB = axis_of(commutator(A.inverse(), B));
  f.axABinv = axis_of(commutator(A, B.inverse()));
  f.axBA = axis_of(commutator(B, A));
  f.MA = common_perpendicular(f.axBinvAinv, f.axAinvB);
  f.MB = common_perpendicular(f.axBinvAinv, f.axABinv);
  f.MAbar = common_perpendicular(f.axBA, f.axABinv);
  f.MBbar = common_perpendicular(f.axBA, f.axAinvB);

  if (!projective_eq(A, f.Ep * f.EpA) || !projective_eq(B, f.Ep * f.EpB))
    raise(ErrorCode::StoppingViolated, "half-turn factorization failed");
  if (point_line_dist(f.pA, f.MA) > kGeomTol ||
      point_line_dist(f.pB, f.MB) > kGeomTol ||
      point_line_dist(f.pAbar, f.MAbar) > kGeomTol ||
      point_line_dist(f.pBbar, f.MBbar) > kGeomTol)
    raise(ErrorCode::StoppingViolated, "half-turn points miss their M-lines");
  double dA = dist(f.p, f.pA), dB = dist(f.p, f.pB), dAB = dist(f.pA, f.pB);
  if (!triangle_non_obtuse(dAB, dA, dB))
    raise(ErrorCode::StoppingViolated, "stopping triangle is obtuse");
  frame.intersecting = std::move(f);
  return frame;
}

}  // namespace hb
