#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rkdual/chain.hpp"

namespace rkdual {

using VertexId = std::uint32_t;
using SimplexId = std::uint32_t;

/// Finite abstract simplicial complex. Vertices are ordered by name;
/// simplices are numbered by (dimension, lexicographic vertex list), so ids
/// grow with dimension. Immutable; copies share storage.
class SimplicialComplex {
 public:
  struct Face {
    SimplexId face;
    int sign;  // incidence number relative to lexicographic orientations
  };

  SimplicialComplex();
  /// Closure of the given simplices. Every listed vertex becomes a 0-simplex.
  static SimplicialComplex from_simplices(std::vector<std::string> vertices,
                                          const std::vector<std::vector<std::string>>& simplices);
  static SimplicialComplex full_simplex(const std::vector<std::string>& vertices);
  static SimplicialComplex simplex_boundary(const std::vector<std::string>& vertices);

  std::size_t size() const { return data_->simplices.size(); }
  std::size_t num_vertices() const { return data_->vertex_names.size(); }
  int dimension() const;
  const std::string& vertex_name(VertexId v) const { return data_->vertex_names.at(v); }
  std::optional<VertexId> vertex(std::string_view name) const;

  int dim(SimplexId s) const { return static_cast<int>(data_->simplices.at(s).size()) - 1; }
  std::span<const VertexId> vertices(SimplexId s) const { return data_->simplices.at(s); }
  /// Looks up a simplex by vertex set (any order).
  std::optional<SimplexId> find(std::vector<VertexId> vertices) const;
  SimplexId vertex_simplex(VertexId v) const { return data_->vertex_simplex.at(v); }

  const std::vector<Face>& boundary(SimplexId s) const { return data_->boundary.at(s); }
  const std::vector<SimplexId>& cofaces(SimplexId s) const { return data_->cofaces.at(s); }
  /// All faces, including s itself, in id order.
  const std::vector<SimplexId>& closure(SimplexId s) const { return data_->closure.at(s); }
  /// st(s): all simplices having s as a face, in id order.
  const std::vector<SimplexId>& star(SimplexId s) const { return data_->star.at(s); }
  /// a <= b in the face order.
  bool is_face(SimplexId a, SimplexId b) const;
  std::vector<SimplexId> of_dim(int q) const;

  /// "{a,b}" for the vertex set.
  std::string name(SimplexId s) const;
  long euler_characteristic() const;

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b);

 private:
  struct Data {
    std::vector<std::string> vertex_names;
    std::vector<std::vector<VertexId>> simplices;
    std::map<std::vector<VertexId>, SimplexId> index;
    std::vector<SimplexId> vertex_simplex;
    std::vector<std::vector<Face>> boundary;
    std::vector<std::vector<SimplexId>> cofaces;
    std::vector<std::vector<SimplexId>> closure;
    std::vector<std::vector<SimplexId>> star;
  };
  explicit SimplicialComplex(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  std::shared_ptr<const Data> data_;
};

/// Sign of the permutation sorting a sequence of distinct keys.
int permutation_sign(std::vector<std::uint32_t> seq);

/// A simplex with a chosen orientation: sign relative to its lexicographic
/// vertex order.
struct OrientedSimplex {
  SimplicialComplex complex;
  SimplexId simplex = 0;
  int sign = 1;

  /// Orientation given by an ordered vertex list; odd permutations negate.
  static OrientedSimplex from_vertices(const SimplicialComplex& k, const std::vector<std::string>& ordered);
  OrientedSimplex negated() const { return {complex, simplex, -sign}; }
};

/// Coefficient of b in the boundary of a (alternating-sum convention).
/// Throws Error when a and b live in different complexes.
int incidence_number(const OrientedSimplex& a, const OrientedSimplex& b);

/// Simplicial chain complex with one generator per simplex. orientation[s] is
/// the sign of the basis element relative to the lexicographic orientation;
/// empty means all lexicographic.
ChainComplex chain_complex(const SimplicialComplex& x, const Ring& ring, std::span<const int> orientation = {});

class InvalidSimplicialMap : public Error {
 public:
  using Error::Error;
};

class SimplicialMap {
 public:
  /// Throws InvalidSimplicialMap naming the first simplex (in id order)
  /// whose image is not a simplex of the target.
  SimplicialMap(SimplicialComplex source, SimplicialComplex target, std::vector<VertexId> assignment);
  static SimplicialMap from_names(SimplicialComplex source, SimplicialComplex target,
                                  const std::map<std::string, std::string>& assignment);
  static SimplicialMap identity(const SimplicialComplex& k);

  const SimplicialComplex& source() const { return source_; }
  const SimplicialComplex& target() const { return target_; }
  VertexId operator()(VertexId v) const { return assignment_.at(v); }
  const std::vector<VertexId>& assignment() const { return assignment_; }

  /// Image simplex (as a vertex set).
  SimplexId image(SimplexId s) const { return image_.at(s); }
  bool is_nondegenerate(SimplexId s) const;
  /// f_*(s) = sign * image(s) on lexicographic orientations; 0 when degenerate.
  int push_sign(SimplexId s) const;

  /// this o g
  SimplicialMap after(const SimplicialMap& g) const;
  friend bool operator==(const SimplicialMap& a, const SimplicialMap& b);

 private:
  SimplicialComplex source_;
  SimplicialComplex target_;
  std::vector<VertexId> assignment_;
  std::vector<SimplexId> image_;
};

/// A simplicial map pi: X -> K, the control data for everything downstream.
struct KSpace {
  SimplicialComplex X;
  SimplicialComplex K;
  SimplicialMap pi;

  static KSpace identity(const SimplicialComplex& k);
};

KSpace validate_kspace(const SimplicialComplex& x, const SimplicialComplex& k,
                       const std::map<std::string, std::string>& assignment);

using ChainId = std::uint32_t;

/// Barycentric subdivision X'. A p-simplex is a strictly decreasing chain
/// S0 > S1 > ... > Sp of simplices of X; the canonical basis element
/// <S0,...,Sp> is oriented in that order.
class DerivedComplex {
 public:
  explicit DerivedComplex(SimplicialComplex base);

  const SimplicialComplex& base() const { return data_->base; }
  std::size_t size() const { return data_->chains.size(); }
  int dim(ChainId c) const { return static_cast<int>(data_->chains.at(c).size()) - 1; }
  int dimension() const;
  const std::vector<SimplexId>& chain(ChainId c) const { return data_->chains.at(c); }
  std::optional<ChainId> find(const std::vector<SimplexId>& chain) const;
  /// Chains of length p+1, in id order; the position is the basis index.
  const std::vector<ChainId>& of_dim(int p) const;
  /// Index of c within of_dim(dim(c)).
  std::size_t basis_index(ChainId c) const { return data_->basis_index.at(c); }

  /// The subdivision as an abstract complex on the vertex set of simplices of X.
  const SimplicialComplex& prime() const { return data_->prime; }
  /// Simplex of prime() spanned by chain c.
  SimplexId prime_simplex(ChainId c) const { return data_->prime_simplex.at(c); }

  /// d<S0..Sp> = sum_i (-1)^i <S0..^Si..Sp>, columns = of_dim(p), rows = of_dim(p-1).
  Matrix boundary(int p) const;
  ChainComplex chain_complex(const Ring& ring) const;
  long euler_characteristic() const;
  std::string name(ChainId c) const;

 private:
  struct Data {
    SimplicialComplex base;
    std::vector<std::vector<SimplexId>> chains;
    std::map<std::vector<SimplexId>, ChainId> index;
    std::vector<std::vector<ChainId>> by_dim;
    std::vector<std::size_t> basis_index;
    SimplicialComplex prime;
    std::vector<SimplexId> prime_simplex;
  };
  std::shared_ptr<const Data> data_;
};

DerivedComplex barycentric_subdivision(const SimplicialComplex& x);

/// pi': X' -> K', barycenter of S to barycenter of pi(S), on prime complexes.
SimplicialMap derived_map(const KSpace& ks, const DerivedComplex& xp, const DerivedComplex& kp);

}  // namespace rkdual
