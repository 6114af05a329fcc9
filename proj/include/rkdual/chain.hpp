#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "rkdual/matrix.hpp"
#include "rkdual/smith.hpp"

namespace rkdual {

/// Raised when a would-be chain complex has d o d != 0.
class NotAComplex : public Error {
 public:
  NotAComplex(int degree, const std::string& what) : Error(what), degree_(degree) {}
  /// Degree q with d_{q-1} o d_q != 0.
  int degree() const { return degree_; }

 private:
  int degree_;
};

/// Bounded complex of finitely generated free modules with explicit bases.
/// Immutable; copies share storage.
class ChainComplex {
 public:
  ChainComplex() : ChainComplex(Ring::integers(), 0, {}, {}) {}
  /// ranks[i] is the rank in degree lo+i; diffs[i] : C_{lo+i} -> C_{lo+i-1}.
  ChainComplex(Ring ring, int lo, std::vector<std::size_t> ranks, std::vector<Matrix> diffs);

  const Ring& ring() const { return data_->ring; }
  int min_degree() const { return data_->lo; }
  int max_degree() const { return data_->lo + static_cast<int>(data_->ranks.size()) - 1; }
  std::size_t rank(int q) const;
  /// d_q : C_q -> C_{q-1}; a correctly shaped zero matrix outside the range.
  Matrix differential(int q) const;

  /// Same complex, coefficients interpreted in another ring.
  ChainComplex with_ring(const Ring& ring) const;

  /// First degree q with d_{q-1} d_q != 0 in the ring, if any.
  std::optional<int> first_nonzero_square(Exec exec = Exec::serial) const;

 private:
  struct Data {
    Ring ring;
    int lo;
    std::vector<std::size_t> ranks;
    std::vector<Matrix> diffs;
  };
  std::shared_ptr<const Data> data_;
};

struct HomologyGroup {
  std::size_t betti = 0;
  /// Non-unit invariant factors (always empty over a field).
  std::vector<Integer> torsion;
  bool is_zero() const { return betti == 0 && torsion.empty(); }
  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

/// Homology in every degree of the complex's range. Throws NotAComplex.
std::map<int, HomologyGroup> homology(const ChainComplex& c);

bool is_acyclic(const ChainComplex& c);

/// Map of bounded free complexes, f_q : C_q -> D_{q+degree}.
struct ChainMap {
  ChainComplex source;
  ChainComplex target;
  int degree = 0;
  std::map<int, Matrix> components;  // keyed by source degree; missing = 0

  Matrix component(int q) const;
};

bool is_chain_map(const ChainMap& f);

/// Mapping cone of a degree-0 chain map: cone_q = C_{q-1} + D_q,
/// d(c, y) = (-d c, f c + d y).
ChainComplex mapping_cone(const ChainMap& f);

/// True iff the mapping cone of f has zero homology in every degree.
/// Throws Error when f is not a chain map.
bool is_cone_acyclic(const ChainMap& f);

ChainMap identity_map(const ChainComplex& c);

}  // namespace rkdual
