#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rkdual/subdivision.hpp"

namespace rkdual {

/// A chain of a derived complex: coefficient per chain id.
using Chain = std::map<ChainId, Integer>;

/// eps(Q) = [Q0,Q1][Q1,Q2]...[Q(q-1),Qq], with Q0 and Qq carrying the given
/// signs relative to their lexicographic orientations and the intermediate
/// entries oriented arbitrarily (lexicographically here; the choice cancels).
/// For q = 0 this is first_sign * last_sign, which is 1 when both endpoints
/// are the same basis element. Throws Error on a non-incident step.
int epsilon_sign(const DerivedComplex& d, ChainId q, int first_sign, int last_sign);

/// c(t (x) s*) = (-1)^{dim s} sum over Q in D(s,t)_q of eps(Q) Q, endpoints
/// oriented by `orientation` (per-simplex signs; empty = lexicographic).
Chain cap_product(const DerivedComplex& kp, SimplexId tau, SimplexId sigma, std::span<const int> orientation = {});

struct CapReport {
  bool full_identity = true;  // d c = c d on Delta K (x)_R Delta^* K
  bool first_face = true;     // d^0 c(t (x) s*) = c(dt (x) s*)
  bool last_face = true;      // (-1)^p d^p c(t (x) s*) = (-1)^{dim t} c(t (x) ds*)
  bool middle_faces = true;   // d^i c(t (x) s*) = 0 for 0 < i < p
  bool pairing = true;        // flags with equal i-th face come in pairs of opposite sign
  std::size_t flags_checked = 0;
  std::vector<std::string> failures;
  bool passed() const { return full_identity && first_face && last_face && middle_faces && pairing; }
};

CapReport verify_cap_chain_map(const SimplicialComplex& k, const Ring& ring, std::span<const int> orientation = {});

/// C_X : C(X_K) -> Delta X'. On [T_s] of degree q: (-1)^{dim s} sum over the
/// q-simplices Q of D_s T of eps(Q) Q, with Q0 = T oriented from b*X and the
/// last entry oriented so that it pushes forward to the basis element s.
RKMap c_x_map(const KSpace& ks, const OrientationPair& o, const Ring& ring);

/// Empty when c_X o (1 (x) pi^*) = C_X o pi_{Delta X, Delta^* K}.
std::optional<std::string> cap_factorization_defect(const KSpace& ks, const OrientationPair& o, const Ring& ring);

struct FundamentalReport {
  std::size_t cells = 0;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

/// Every top simplex of D_s T appears in C_X([T_s]) with coefficient +-1,
/// nothing else appears, and the boundary lies in the inner + outer boundary.
FundamentalReport verify_fundamental_cycles(const KSpace& ks, const OrientationPair& o, const Ring& ring);

struct EquivalenceReport {
  DiagonalReport cap;        // C_X
  DiagonalReport composite;  // C_X o Phi_X : T Delta^* X -> Delta X'
  DiagonalReport dual;       // e o T(C_X Phi_X) : T Delta X' -> Delta^* X
  bool passed() const { return cap.passed() && composite.passed() && dual.passed(); }
};

EquivalenceReport verify_equivalences(const KSpace& ks, const Ring& ring, Exec exec = Exec::serial);

}  // namespace rkdual
