#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "handlebody/geodesic.hpp"

namespace hb {

enum class CaseTag { Disjoint, Intersecting };

const char* case_name(CaseTag t);

/// Reflection-line frame for stopping generators with disjoint axes:
/// A = R_L R_{L_A}, B = R_L R_{L_B}, and the lines bound a domain.
struct DisjointFrame {
  Geodesic L, LA, LB;
  Geodesic LAbar, LBbar;  // A(L_A), B(L_B)
  Geodesic axA, axB, axAinvB, axABinv;
};

/// Half-turn frame for stopping generators with intersecting axes:
/// A = E_p E_{p_A}, B = E_p E_{p_B}; the M-lines are the mutual
/// perpendiculars of the commutator axes and carry the half-turn points.
struct IntersectingFrame {
  DiskPoint p, pA, pB;
  DiskPoint pAbar, pBbar;  // A(p_A), B(p_B)
  MoebiusMap Ep, EpA, EpB;
  Geodesic MA, MB, MAbar, MBbar;
  Geodesic axA, axB;
  Geodesic axBinvAinv;  // Ax_[B^-1,A^-1]
  Geodesic axAinvB;     // Ax_[A^-1,B]
  Geodesic axABinv;     // Ax_[A,B^-1]
  Geodesic axBA;        // Ax_[B,A]
};

struct StoppingFrame {
  CaseTag tag;
  std::optional<DisjointFrame> disjoint;
  std::optional<IntersectingFrame> intersecting;
};

enum class NielsenMove {
  InvertFirst,   // (A,B) -> (A^-1, B)
  InvertSecond,  // (A,B) -> (A, B^-1)
  Swap,          // (A,B) -> (B, A)
  MulSecond,     // (A,B) -> (A, AB)
  MulSecondInv,  // (A,B) -> (A, AB^-1)
  MulFirst,      // (A,B) -> (AB, B)
};

const char* move_name(NielsenMove m);

std::pair<MoebiusMap, MoebiusMap> apply_move(
    const std::pair<MoebiusMap, MoebiusMap>& pair, NielsenMove move);

struct StoppingResult {
  MoebiusMap A, B;
  std::vector<NielsenMove> moves;
  std::vector<std::pair<double, double>> trace_history;
  StoppingFrame frame;
};

/// Commutator [C,D] = C D C^-1 D^-1: raw trace (before any projective sign
/// normalization, which the commutator does not need) and the case tag.
/// Raises NotFreeDiscrete when |Re tr| <= 2 + kGeomTol.
std::pair<CaseTag, double> commutator_case(const MoebiusMap& C,
                                           const MoebiusMap& D);

/// True when (A, B) already satisfies the case's stopping condition.
bool stopping_test(const MoebiusMap& A, const MoebiusMap& B, CaseTag tag);

/// Best-first descent over the Nielsen moves, ordered by Re tr A + Re tr B,
/// until the stopping condition holds.  The move log replays from (C, D) to
/// the returned pair.
StoppingResult nielsen_search(const MoebiusMap& C, const MoebiusMap& D);

/// Case-specific frame of a stopping pair.  Raises StoppingViolated when the
/// frame invariants fail at kGeomTol.
StoppingFrame stopping_frame(const MoebiusMap& A, const MoebiusMap& B,
                             CaseTag tag);

MoebiusMap commutator(const MoebiusMap& X, const MoebiusMap& Y);

}  // namespace hb
