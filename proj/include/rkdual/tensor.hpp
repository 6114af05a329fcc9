#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rkdual/rk.hpp"

namespace rkdual {

/// Basis element x (x) y of a tensor complex: x from the left factor, y from
/// the right factor.
struct TensorPair {
  GenRef left;
  GenRef right;
  friend auto operator<=>(const TensorPair&, const TensorPair&) = default;
};

/// A tensor product together with the pair behind every generator.
struct TensorComplex {
  RKComplex left;   // over K^op
  RKComplex right;  // over K
  RKComplex complex;
  std::vector<std::vector<TensorPair>> pairs;  // per degree offset from complex.min_degree()
  std::map<TensorPair, GenRef> index;

  const TensorPair& at(GenRef g) const;
  std::optional<GenRef> find(const TensorPair& p) const;
};

/// C (x)_K D: pairs with label(x) >= label(y), labelled by label(y), with the
/// ordinary tensor differential projected onto those pairs.
TensorComplex tensor_K(const RKComplex& c, const RKComplex& d);
/// C (x)_R D: every pair, labelled by label(y).
TensorComplex tensor_R(const RKComplex& c, const RKComplex& d);

/// The diagonal projection C (x)_R D -> C (x)_K D.
RKMap pi_projection(const TensorComplex& r, const TensorComplex& k);

/// g (x) h between two tensor complexes of the same kind, with the Koszul
/// sign (g (x) h)(x (x) y) = (-1)^{|h||x|} g(x) (x) h(y). Pairs missing from
/// the target are dropped (the quotient map for (x)_K).
RKMap tensor_map(const TensorComplex& source, const TensorComplex& target, const RKMap& g, const RKMap& h);

/// Psi : Hom(D, C*) -> (C (x)_K D)*, E_{y, x*} -> (-1)^{|x||y|} (x (x) y)*.
RKMap psi_iso(const RKComplex& c, const RKComplex& d);

/// Hom(D, C) -> Hom(D, C') by post-composition with a degree-0 map g.
RKMap hom_post(const HomComplex& from, const HomComplex& to, const RKMap& g);

/// Delta^* K for the K-space (K, 1), lexicographic orientations.
RKComplex codelta_K(const SimplicialComplex& k, const Ring& ring);

/// TC = C* (x)_K Delta^* K. Pairs are (x*, s*).
using DualityResult = TensorComplex;

DualityResult duality(const RKComplex& c);
/// Tf = f* (x) 1 : TD -> TC for f : C -> D.
RKMap duality(const RKMap& f);

/// E_C : Hom(Delta^* K, C) (x)_K Delta^* K -> C, f (x) s* -> f(s*).
struct Evaluation {
  HomComplex hom;
  TensorComplex domain;
  RKMap map;
};
Evaluation evaluation(const RKComplex& c);

/// e_C : T^2 C -> C, the unique map with E_C = e_C o (Psi_C (x) 1).
RKMap e_transform(const RKComplex& c);

/// Per-label cone test of a degree-0 (R,K) chain map.
struct DiagonalReport {
  struct Entry {
    SimplexId sigma;
    bool acyclic;
  };
  std::vector<Entry> entries;
  bool passed() const;
  std::vector<SimplexId> failures() const;
};

DiagonalReport check_diagonal_equivalence(const RKMap& f, Exec exec = Exec::serial);

/// Cone test of every e_C(s, s).
DiagonalReport verify_e_equivalence(const RKComplex& c, Exec exec = Exec::serial);

/// For C concentrated on one label S: degree m -> sign in
/// e_C((c* (x) S*)* (x) S*) = sign * eps_C(c**). 0 marks a degree where the
/// generators disagree.
std::map<int, int> case_one_signs(const RKComplex& c);

/// The generators of C labelled s, with the induced differential. A
/// subcomplex when no generator of C has a label above s.
RKComplex label_piece(const RKComplex& c, SimplexId s);

/// Filtration 0 -> C' -> C -> C'' -> 0 with C' = C(S), S a label of maximal
/// dimension among nonzero pieces.
struct FiltrationReport {
  SimplexId S = 0;
  bool exact = false;
  bool dual_exact = false;      // T applied to the sequence
  bool left_square = false;     // e_C o T^2 i = i o e_C'
  bool right_square = false;    // e_C'' o T^2 j = j o e_C
  bool passed() const { return exact && dual_exact && left_square && right_square; }
};
std::optional<FiltrationReport> check_filtration_step(const RKComplex& c);

}  // namespace rkdual
