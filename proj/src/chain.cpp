#include "rkdual/chain.hpp"

#include <sstream>

namespace rkdual {

ChainComplex::ChainComplex(Ring ring, int lo, std::vector<std::size_t> ranks, std::vector<Matrix> diffs) {
  if (ranks.size() != diffs.size()) throw Error("chain complex: ranks and differentials differ in length");
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    const std::size_t below = i == 0 ? 0 : ranks[i - 1];
    if (diffs[i].rows() != below || diffs[i].cols() != ranks[i]) {
      std::ostringstream os;
      os << "chain complex: differential in degree " << lo + static_cast<int>(i) << " has shape "
         << diffs[i].rows() << "x" << diffs[i].cols() << ", expected " << below << "x" << ranks[i];
      throw Error(os.str());
    }
  }
  data_ = std::make_shared<const Data>(Data{ring, lo, std::move(ranks), std::move(diffs)});
}

std::size_t ChainComplex::rank(int q) const {
  if (q < min_degree() || q > max_degree()) return 0;
  return data_->ranks[static_cast<std::size_t>(q - min_degree())];
}

Matrix ChainComplex::differential(int q) const {
  if (q < min_degree() || q > max_degree()) return Matrix(rank(q - 1), rank(q));
  return data_->diffs[static_cast<std::size_t>(q - min_degree())];
}

ChainComplex ChainComplex::with_ring(const Ring& ring) const {
  return ChainComplex(ring, data_->lo, data_->ranks, data_->diffs);
}

std::optional<int> ChainComplex::first_nonzero_square(Exec exec) const {
  for (int q = min_degree() + 1; q <= max_degree(); ++q)
    if (!multiply(differential(q - 1), differential(q), exec).is_zero(ring())) return q;
  return std::nullopt;
}

std::map<int, HomologyGroup> homology(const ChainComplex& c) {
  if (auto bad = c.first_nonzero_square()) {
    std::ostringstream os;
    os << "d o d != 0: d_" << *bad - 1 << " o d_" << *bad << " is nonzero";
    throw NotAComplex(*bad, os.str());
  }
  const Ring& ring = c.ring();
  std::map<int, SmithForm> snf;
  for (int q = c.min_degree(); q <= c.max_degree() + 1; ++q) snf[q] = smith_normal_form(c.differential(q), ring);
  std::map<int, HomologyGroup> out;
  for (int q = c.min_degree(); q <= c.max_degree(); ++q) {
    HomologyGroup h;
    h.betti = c.rank(q) - snf[q].rank - snf[q + 1].rank;
    for (const auto& f : snf[q + 1].factors)
      if (!ring.is_unit(f)) h.torsion.push_back(f);
    out[q] = std::move(h);
  }
  return out;
}

bool is_acyclic(const ChainComplex& c) {
  for (const auto& [q, h] : homology(c))
    if (!h.is_zero()) return false;
  return true;
}

Matrix ChainMap::component(int q) const {
  auto it = components.find(q);
  if (it != components.end()) return it->second;
  return Matrix(target.rank(q + degree), source.rank(q));
}

bool is_chain_map(const ChainMap& f) {
  const Ring& ring = f.target.ring();
  const int lo = std::min(f.source.min_degree(), f.target.min_degree() - f.degree);
  const int hi = std::max(f.source.max_degree(), f.target.max_degree() - f.degree) + 1;
  const bool odd = f.degree % 2 != 0;
  for (int q = lo; q <= hi; ++q) {
    // d f = (-1)^{|f|} f d
    Matrix lhs = multiply(f.target.differential(q + f.degree), f.component(q));
    Matrix rhs = multiply(f.component(q - 1), f.source.differential(q));
    if (!(odd ? lhs + rhs : lhs - rhs).is_zero(ring)) return false;
  }
  return true;
}

ChainComplex mapping_cone(const ChainMap& f) {
  if (f.degree != 0) throw Error("mapping cone: map must have degree 0");
  const int lo = std::min(f.source.min_degree() + 1, f.target.min_degree());
  const int hi = std::max(f.source.max_degree() + 1, f.target.max_degree());
  std::vector<std::size_t> ranks;
  std::vector<Matrix> diffs;
  for (int q = lo; q <= hi; ++q) {
    const std::size_t src_top = f.source.rank(q - 1), tgt_top = f.target.rank(q);
    const std::size_t src_bot = q == lo ? 0 : f.source.rank(q - 2);
    const std::size_t tgt_bot = q == lo ? 0 : f.target.rank(q - 1);
    Matrix d(src_bot + tgt_bot, src_top + tgt_top);
    if (q != lo) {
      d.place(f.source.differential(q - 1).negated(), 0, 0);
      d.place(f.component(q - 1), src_bot, 0);
      d.place(f.target.differential(q), src_bot, src_top);
    }
    ranks.push_back(src_top + tgt_top);
    diffs.push_back(std::move(d));
  }
  return ChainComplex(f.target.ring(), lo, std::move(ranks), std::move(diffs));
}

bool is_cone_acyclic(const ChainMap& f) {
  if (!is_chain_map(f)) throw Error("cone acyclicity: not a chain map");
  return is_acyclic(mapping_cone(f));
}

ChainMap identity_map(const ChainComplex& c) {
  ChainMap f{c, c, 0, {}};
  for (int q = c.min_degree(); q <= c.max_degree(); ++q) f.components[q] = Matrix::identity(c.rank(q));
  return f;
}

}  // namespace rkdual
