#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rkdual/tensor.hpp"

namespace rkdual {

/// D(s, K): chains of K' whose last entry has s as a face. Sorted ids of kp.
std::vector<ChainId> dual_cone(const DerivedComplex& kp, SimplexId sigma);
/// D(s, t): chains of D(s, K) whose first entry is a face of t.
std::vector<ChainId> dual_cell(const DerivedComplex& kp, SimplexId sigma, SimplexId tau);
/// D_s T: chains S0 > ... > Sp of X' with S0 <= T and s <= pi(Sp).
std::vector<ChainId> dual_block(const KSpace& ks, const DerivedComplex& xp, SimplexId T, SimplexId sigma);

struct CellKey {
  SimplexId T = 0;
  SimplexId sigma = 0;
  friend auto operator<=>(const CellKey&, const CellKey&) = default;
};

struct DualCell {
  CellKey key;
  int dimension = 0;                    // dim T - dim sigma
  std::vector<ChainId> simplices;       // D_s T
  std::vector<ChainId> inner_boundary;  // union of D_r T over s < r
  std::vector<ChainId> outer_boundary;  // union of D_s S over S < T
};

/// X_K: one cell per pair s <= pi(T), ordered by (dimension, T, s).
struct BallComplex {
  KSpace ks;
  DerivedComplex xp;
  std::vector<DualCell> cells;
  std::map<CellKey, std::size_t> index;

  const DualCell& cell(CellKey k) const { return cells.at(index.at(k)); }
  /// "(a,b|a)": vertices of T, then vertices of s.
  std::string name(CellKey k) const;
  long euler_characteristic() const;
};

BallComplex ball_complex(const KSpace& ks);

struct BallReport {
  std::vector<std::string> failures;
  std::map<int, std::size_t> census;  // cells per dimension
  long euler_cells = 0;
  long euler_derived = 0;
  long euler_base = 0;
  bool passed() const { return failures.empty(); }
};

/// Dimension, purity, boundary = inner + outer, interior partition, Euler
/// characteristics, and emptiness of D_s T for s not below pi(T).
BallReport verify_ball_complex(const BallComplex& bc, Exec exec = Exec::serial);

/// Oriented bases (bK, b*X): signs relative to lexicographic orientations.
struct OrientationPair {
  std::vector<int> k_sign;
  std::vector<int> x_sign;

  /// Lexicographic bK; b*X adjusted so pi_*(T) = (-1)^{dim s} s.
  static OrientationPair canonical(const KSpace& ks);
  /// Same adjustment over an arbitrary bK.
  static OrientationPair adjusted(const KSpace& ks, std::vector<int> k_sign);
};

/// Empty when pi_*(T) = (-1)^{dim s} s for every nondegenerate T.
std::optional<std::string> orientation_defect(const KSpace& ks, const OrientationPair& o);

class InvalidOrientation : public Error {
 public:
  using Error::Error;
};

/// C(X_K) = Delta X (x)_K Delta^* K with basis [T_r] = T (x) r*.
struct CellularComplex {
  KSpace ks;
  OrientationPair orientation;
  TensorComplex tensor;
  std::vector<std::vector<CellKey>> keys;  // per degree offset, per generator

  const RKComplex& complex() const { return tensor.complex; }
  CellKey key(GenRef g) const {
    return keys.at(static_cast<std::size_t>(g.degree - complex().min_degree())).at(g.index);
  }
};

/// Throws InvalidOrientation when the adjustment identity fails.
CellularComplex cellular_chain_complex(const KSpace& ks, const OrientationPair& o, const Ring& ring);

/// Rebuilds the boundary from the cell display
///   d[T_r] = sum_{S<T} [T,S][S_r] + (-1)^{1+|T_r|} sum_{r<s} [s,r][T_s]
/// and compares it with the tensor differential; also checks that every
/// coefficient is +-1 exactly on codimension-one faces of the ball complex.
std::vector<std::string> check_boundary_display(const CellularComplex& c, const BallComplex& bc);

/// Phi_X = eps_{Delta X} (x) 1 : T Delta^* X -> C(X_K).
RKMap phi(const KSpace& ks, const OrientationPair& o, const Ring& ring);

/// A simplicial map f : X -> Y with pi_Y o f = pi_X.
struct KSpaceMap {
  KSpace source;
  KSpace target;
  SimplicialMap f;
};

/// Throws Error when the control maps do not commute.
KSpaceMap validate_kspace_map(KSpace source, KSpace target, SimplicialMap f);

/// f_* : Delta X -> Delta Y in the oriented bases.
RKMap induced_delta_map(const KSpaceMap& f, const OrientationPair& os, const OrientationPair& ot, const Ring& ring);
/// f_K = f_* (x) 1 : C(X_K) -> C(Y_K).
RKMap induced_ball_map(const KSpaceMap& f, const OrientationPair& os, const OrientationPair& ot, const Ring& ring);

struct NaturalityReport {
  bool square = false;          // Phi_Y o T(f*) = f_K o Phi_X
  bool blocks = false;          // f'(D_s S) = D_s f(S) for every cell
  bool cells_to_cells = false;  // f_K sends [T_r] to +-[f(T)_r] or 0
  bool passed() const { return square && blocks && cells_to_cells; }
};

NaturalityReport check_naturality(const KSpaceMap& f, const Ring& ring);

}  // namespace rkdual
