#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rkdual/chain.hpp"
#include "rkdual/simplicial.hpp"

namespace rkdual {

/// Which order on the simplices of K the support condition uses.
enum class Order { over_K, over_K_op };

inline Order opposite(Order o) { return o == Order::over_K ? Order::over_K_op : Order::over_K; }

/// A basis element of an (R,K) module: exactly one label, plus a stable
/// display name used in reports.
struct Generator {
  SimplexId label;
  std::string name;
};

/// Position of a generator: its degree and index within that degree.
struct GenRef {
  int degree = 0;
  std::size_t index = 0;
  friend auto operator<=>(const GenRef&, const GenRef&) = default;
};

/// (R,K) chain complex: free modules with K-labelled bases and differentials
/// whose component from label s to label t vanishes unless t >= s (t <= s
/// over K^op). Immutable; copies share storage.
class RKComplex {
 public:
  /// Validates shapes and the support condition; throws Error.
  RKComplex(SimplicialComplex k, Order order, Ring ring, int lo, std::vector<std::vector<Generator>> gens,
            std::vector<Matrix> diffs);

  const SimplicialComplex& K() const { return data_->k; }
  Order order() const { return data_->order; }
  const Ring& ring() const { return data_->ring; }
  int min_degree() const { return data_->lo; }
  int max_degree() const { return data_->lo + static_cast<int>(data_->gens.size()) - 1; }
  std::size_t rank(int q) const { return generators(q).size(); }
  std::size_t total_rank() const;
  std::span<const Generator> generators(int q) const;
  const Generator& generator(GenRef g) const { return generators(g.degree)[g.index]; }
  /// d_q : C_q -> C_{q-1}
  Matrix differential(int q) const;

  /// Support rule for a component from a source label to a target label.
  bool allows(SimplexId target_label, SimplexId source_label) const;

  ChainComplex underlying() const;
  RKComplex with_ring(const Ring& ring) const;
  std::optional<int> first_nonzero_square(Exec exec = Exec::serial) const;

 private:
  struct Data {
    SimplicialComplex k;
    Order order;
    Ring ring;
    int lo;
    std::vector<std::vector<Generator>> gens;
    std::vector<Matrix> diffs;
  };
  std::shared_ptr<const Data> data_;
};

/// Degree-d map of (R,K) complexes, f_q : C_q -> D_{q+d}, each component
/// satisfying the support condition.
class RKMap {
 public:
  RKMap(RKComplex source, RKComplex target, int degree, std::map<int, Matrix> components);

  const RKComplex& source() const { return source_; }
  const RKComplex& target() const { return target_; }
  int degree() const { return degree_; }
  Matrix component(int q) const;

  /// f(t,s) = 0 for t != s.
  bool is_diagonal() const;
  ChainMap underlying() const;

 private:
  RKComplex source_;
  RKComplex target_;
  int degree_;
  std::map<int, Matrix> components_;
};

RKMap identity(const RKComplex& c);
/// g o f
RKMap compose(const RKMap& g, const RKMap& f);
bool is_chain_map(const RKMap& f);
/// Same map, same bases, target complex replaced (e.g. after a base change).
bool maps_equal(const RKMap& a, const RKMap& b);

/// True iff {s : r <= s <= t} is contained in S for all r, t in S.
bool is_full(const SimplicialComplex& k, std::span<const SimplexId> subset);

/// C(S) as an R-complex: generators with labels in S (in order), differential
/// restricted to components between labels of S. Throws Error unless S is full.
ChainComplex assemble(const RKComplex& c, std::span<const SimplexId> subset);
/// Generators of degree q whose label is in the subset, in basis order.
std::vector<std::size_t> positions_with_labels(const RKComplex& c, int q, std::span<const SimplexId> subset);

/// Diagonal component f(s,s): C(s) -> D(s) as a map of R-complexes.
ChainMap diagonal_component(const RKMap& f, SimplexId sigma);

/// C*: (C*)_{-q}(s) = C_q(s)^*, d_{-q} = (-1)^{q+1} (d_{q+1})^T, over the
/// opposite order. Generator i of (C*)_{-q} is the dual of generator i of C_q.
RKComplex dual_star(const RKComplex& c);
/// f*: D* -> C*, (f*)_{-q} = (-1)^{|f| q} (f_{q-|f|})^T.
RKMap dual_star(const RKMap& f);
/// epsilon_C : C** -> C, multiplication by (-1)^q on double-dual generators.
RKMap epsilon(const RKComplex& c);

/// Hom_{(R,K)}(C, D) over K^op. The generator for (source, target) is the
/// elementary map x -> y with label(y) >= label(x); its label is label(x).
struct HomComplex {
  RKComplex complex;
  struct Elementary {
    GenRef source;  // x in C
    GenRef target;  // y in D
  };
  std::vector<std::vector<Elementary>> basis;  // per degree offset from min_degree
  const Elementary& at(GenRef g) const;
};

HomComplex hom_rk(const RKComplex& c, const RKComplex& d);

/// 0 -> C' -> C -> C'' -> 0 with diagonal i, j and each level exact.
struct ShortExactSequence {
  RKMap i;
  RKMap j;
};

/// Empty when exact; otherwise a description of the first defect.
std::optional<std::string> exactness_defect(const ShortExactSequence& s);
/// Same test for maps of R-complexes.
std::optional<std::string> exactness_defect(const ChainMap& i, const ChainMap& j);

/// The three geometric complexes of a K-space.
struct DeltaComplexes {
  RKComplex delta;    // Delta X over K^op, labels pi(S)
  RKComplex codelta;  // Delta^* X = *(Delta X) over K
  RKComplex derived;  // Delta X' over K, labels pi(last entry of the chain)
  DerivedComplex subdivision;
};

/// orientation: per-simplex sign of the basis of Delta X (empty = lexicographic).
DeltaComplexes delta_complexes(const KSpace& ks, const Ring& ring, std::span<const int> orientation = {});
RKComplex delta_complex(const KSpace& ks, const Ring& ring, std::span<const int> orientation = {});
/// Display name of a simplex with an orientation sign ("<b,a>" for -<a,b>).
std::string oriented_name(const SimplicialComplex& x, SimplexId s, int sign);

struct ClemReport {
  bool passed = true;
  std::vector<std::string> failures;
};

/// For maximal S: Delta^*(closure of S) assembled over st(s) is acyclic for
/// every s != S, and is R.S^* in degree -dim S for s = S.
ClemReport check_lemma_clem(const SimplicialComplex& k, SimplexId maximal, const Ring& ring);

}  // namespace rkdual
