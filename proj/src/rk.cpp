#include "rkdual/rk.hpp"

#include <algorithm>
#include <sstream>

namespace rkdual {

namespace {

std::vector<std::vector<Generator>> reversed_duals(const RKComplex& c) {
  std::vector<std::vector<Generator>> gens;
  for (int q = c.max_degree(); q >= c.min_degree(); --q) {
    std::vector<Generator> level;
    for (const auto& g : c.generators(q)) level.push_back({g.label, g.name + "*"});
    gens.push_back(std::move(level));
  }
  return gens;
}

bool contains(std::span<const SimplexId> sorted, SimplexId s) {
  return std::binary_search(sorted.begin(), sorted.end(), s);
}

}  // namespace

RKComplex::RKComplex(SimplicialComplex k, Order order, Ring ring, int lo, std::vector<std::vector<Generator>> gens,
                     std::vector<Matrix> diffs) {
  if (gens.size() != diffs.size()) throw Error("(R,K) complex: generators and differentials differ in length");
  for (const auto& level : gens)
    for (const auto& g : level)
      if (g.label >= k.size()) throw Error("(R,K) complex: generator label outside K");
  data_ = std::make_shared<const Data>(Data{std::move(k), order, ring, lo, std::move(gens), std::move(diffs)});
  for (std::size_t i = 0; i < data_->gens.size(); ++i) {
    const int q = lo + static_cast<int>(i);
    const Matrix& d = data_->diffs[i];
    if (d.rows() != rank(q - 1) || d.cols() != rank(q)) {
      std::ostringstream os;
      os << "(R,K) complex: differential in degree " << q << " has shape " << d.rows() << "x" << d.cols()
         << ", expected " << rank(q - 1) << "x" << rank(q);
      throw Error(os.str());
    }
    for (std::size_t r = 0; r < d.rows(); ++r)
      for (const auto& [c, v] : d.row(r))
        if (!allows(generators(q - 1)[r].label, generators(q)[c].label))
          throw Error("(R,K) complex: differential violates the support condition at " + generators(q)[c].name +
                      " -> " + generators(q - 1)[r].name);
  }
}

std::size_t RKComplex::total_rank() const {
  std::size_t n = 0;
  for (const auto& level : data_->gens) n += level.size();
  return n;
}

std::span<const Generator> RKComplex::generators(int q) const {
  if (q < min_degree() || q > max_degree()) return {};
  return data_->gens[static_cast<std::size_t>(q - min_degree())];
}

Matrix RKComplex::differential(int q) const {
  if (q < min_degree() || q > max_degree()) return Matrix(rank(q - 1), rank(q));
  return data_->diffs[static_cast<std::size_t>(q - min_degree())];
}

bool RKComplex::allows(SimplexId target_label, SimplexId source_label) const {
  return order() == Order::over_K ? K().is_face(source_label, target_label) : K().is_face(target_label, source_label);
}

ChainComplex RKComplex::underlying() const {
  std::vector<std::size_t> ranks;
  for (const auto& level : data_->gens) ranks.push_back(level.size());
  return ChainComplex(ring(), min_degree(), std::move(ranks), data_->diffs);
}

RKComplex RKComplex::with_ring(const Ring& ring) const {
  return RKComplex(K(), order(), ring, min_degree(), data_->gens, data_->diffs);
}

std::optional<int> RKComplex::first_nonzero_square(Exec exec) const {
  return underlying().first_nonzero_square(exec);
}

RKMap::RKMap(RKComplex source, RKComplex target, int degree, std::map<int, Matrix> components)
    : source_(std::move(source)), target_(std::move(target)), degree_(degree), components_(std::move(components)) {
  if (!(source_.K() == target_.K()) || source_.order() != target_.order())
    throw Error("(R,K) map: source and target are over different posets");
  for (const auto& [q, m] : components_) {
    if (m.rows() != target_.rank(q + degree_) || m.cols() != source_.rank(q)) {
      std::ostringstream os;
      os << "(R,K) map: component in degree " << q << " has shape " << m.rows() << "x" << m.cols() << ", expected "
         << target_.rank(q + degree_) << "x" << source_.rank(q);
      throw Error(os.str());
    }
    const auto tgt = target_.generators(q + degree_);
    const auto src = source_.generators(q);
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (const auto& [c, v] : m.row(r))
        if (!target_.allows(tgt[r].label, src[c].label))
          throw Error("(R,K) map: component " + src[c].name + " -> " + tgt[r].name +
                      " violates the support condition");
  }
}

Matrix RKMap::component(int q) const {
  auto it = components_.find(q);
  if (it != components_.end()) return it->second;
  return Matrix(target_.rank(q + degree_), source_.rank(q));
}

bool RKMap::is_diagonal() const {
  for (const auto& [q, m] : components_) {
    const auto tgt = target_.generators(q + degree_);
    const auto src = source_.generators(q);
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (const auto& [c, v] : m.row(r))
        if (tgt[r].label != src[c].label && !target_.ring().is_zero(v)) return false;
  }
  return true;
}

ChainMap RKMap::underlying() const {
  return ChainMap{source_.underlying(), target_.underlying(), degree_, components_};
}

RKMap identity(const RKComplex& c) {
  std::map<int, Matrix> comps;
  for (int q = c.min_degree(); q <= c.max_degree(); ++q) comps[q] = Matrix::identity(c.rank(q));
  return RKMap(c, c, 0, std::move(comps));
}

RKMap compose(const RKMap& g, const RKMap& f) {
  if (!(f.target().K() == g.source().K())) throw Error("compose: maps are over different posets");
  std::map<int, Matrix> comps;
  for (int q = f.source().min_degree(); q <= f.source().max_degree(); ++q)
    comps[q] = multiply(g.component(q + f.degree()), f.component(q));
  return RKMap(f.source(), g.target(), f.degree() + g.degree(), std::move(comps));
}

bool is_chain_map(const RKMap& f) { return is_chain_map(f.underlying()); }

bool maps_equal(const RKMap& a, const RKMap& b) {
  if (a.degree() != b.degree()) return false;
  const int lo = std::min(a.source().min_degree(), b.source().min_degree());
  const int hi = std::max(a.source().max_degree(), b.source().max_degree());
  for (int q = lo; q <= hi; ++q)
    if (!a.component(q).equals(b.component(q), a.target().ring())) return false;
  return true;
}

bool is_full(const SimplicialComplex& k, std::span<const SimplexId> subset) {
  std::vector<SimplexId> s(subset.begin(), subset.end());
  std::sort(s.begin(), s.end());
  for (SimplexId r : s)
    for (SimplexId t : s) {
      if (!k.is_face(r, t)) continue;
      for (SimplexId mid : k.closure(t))
        if (k.is_face(r, mid) && !contains(s, mid)) return false;
    }
  return true;
}

std::vector<std::size_t> positions_with_labels(const RKComplex& c, int q, std::span<const SimplexId> subset) {
  std::vector<SimplexId> s(subset.begin(), subset.end());
  std::sort(s.begin(), s.end());
  std::vector<std::size_t> out;
  const auto gens = c.generators(q);
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (contains(s, gens[i].label)) out.push_back(i);
  return out;
}

ChainComplex assemble(const RKComplex& c, std::span<const SimplexId> subset) {
  if (!is_full(c.K(), subset)) throw Error("assemble: subset is not full");
  std::vector<std::size_t> ranks;
  std::vector<Matrix> diffs;
  for (int q = c.min_degree(); q <= c.max_degree(); ++q) {
    auto cols = positions_with_labels(c, q, subset);
    auto rows = positions_with_labels(c, q - 1, subset);
    ranks.push_back(cols.size());
    diffs.push_back(q == c.min_degree() ? Matrix(0, cols.size()) : c.differential(q).select(rows, cols));
  }
  return ChainComplex(c.ring(), c.min_degree(), std::move(ranks), std::move(diffs));
}

ChainMap diagonal_component(const RKMap& f, SimplexId sigma) {
  const SimplexId only[] = {sigma};
  ChainMap out{assemble(f.source(), only), assemble(f.target(), only), f.degree(), {}};
  for (int q = f.source().min_degree(); q <= f.source().max_degree(); ++q)
    out.components[q] = f.component(q).select(positions_with_labels(f.target(), q + f.degree(), only),
                                               positions_with_labels(f.source(), q, only));
  return out;
}

RKComplex dual_star(const RKComplex& c) {
  std::vector<Matrix> diffs;
  for (int m = -c.max_degree(); m <= -c.min_degree(); ++m) {
    // d_m = (-1)^{q+1} (d_{q+1})^T with q = -m
    const int q = -m;
    Matrix d = c.differential(q + 1).transpose();
    diffs.push_back(q % 2 == 0 ? d.negated() : d);
  }
  if (c.max_degree() < c.min_degree()) return RKComplex(c.K(), opposite(c.order()), c.ring(), 0, {}, {});
  return RKComplex(c.K(), opposite(c.order()), c.ring(), -c.max_degree(), reversed_duals(c), std::move(diffs));
}

RKMap dual_star(const RKMap& f) {
  const RKComplex src = dual_star(f.target());
  const RKComplex tgt = dual_star(f.source());
  const int k = f.degree();
  std::map<int, Matrix> comps;
  for (int m = src.min_degree(); m <= src.max_degree(); ++m) {
    Matrix t = f.component(-m - k).transpose();
    comps[m] = (k * m) % 2 != 0 ? t.negated() : t;
  }
  return RKMap(src, tgt, k, std::move(comps));
}

RKMap epsilon(const RKComplex& c) {
  const RKComplex cc = dual_star(dual_star(c));
  std::map<int, Matrix> comps;
  for (int q = c.min_degree(); q <= c.max_degree(); ++q) {
    Matrix id = Matrix::identity(c.rank(q));
    comps[q] = q % 2 != 0 ? id.negated() : id;
  }
  return RKMap(cc, c, 0, std::move(comps));
}

const HomComplex::Elementary& HomComplex::at(GenRef g) const {
  return basis.at(static_cast<std::size_t>(g.degree - complex.min_degree())).at(g.index);
}

HomComplex hom_rk(const RKComplex& c, const RKComplex& d) {
  if (!(c.K() == d.K()) || c.order() != d.order()) throw Error("Hom: complexes are over different posets");
  const int lo = d.min_degree() - c.max_degree();
  const int hi = d.max_degree() - c.min_degree();
  std::vector<std::vector<HomComplex::Elementary>> basis;
  std::vector<std::vector<Generator>> gens;
  std::vector<std::map<std::pair<GenRef, GenRef>, std::size_t>> index;
  for (int p = lo; p <= hi; ++p) {
    std::vector<HomComplex::Elementary> level;
    std::vector<Generator> level_gens;
    std::map<std::pair<GenRef, GenRef>, std::size_t> level_index;
    for (int q = c.min_degree(); q <= c.max_degree(); ++q) {
      const auto xs = c.generators(q);
      const auto ys = d.generators(q + p);
      for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < ys.size(); ++j) {
          if (!c.allows(ys[j].label, xs[i].label)) continue;
          GenRef x{q, i}, y{q + p, j};
          level_index[{x, y}] = level.size();
          level.push_back({x, y});
          level_gens.push_back({xs[i].label, "[" + xs[i].name + " -> " + ys[j].name + "]"});
        }
    }
    basis.push_back(std::move(level));
    gens.push_back(std::move(level_gens));
    index.push_back(std::move(level_index));
  }
  if (hi < lo) return {RKComplex(c.K(), opposite(c.order()), c.ring(), 0, {}, {}), {}};

  // d(f) = d^D f - (-1)^{|f|} f d^C
  std::vector<Matrix> diffs;
  for (int p = lo; p <= hi; ++p) {
    const auto& level = basis[static_cast<std::size_t>(p - lo)];
    Matrix m(p == lo ? 0 : basis[static_cast<std::size_t>(p - 1 - lo)].size(), level.size());
    if (p != lo) {
      const auto& below = index[static_cast<std::size_t>(p - 1 - lo)];
      for (std::size_t col = 0; col < level.size(); ++col) {
        const auto [x, y] = level[col];
        const Matrix dd = d.differential(y.degree);  // D_{y} -> D_{y-1}
        for (std::size_t r = 0; r < dd.rows(); ++r) {
          Integer v = dd.at(r, y.index);
          if (sgn(v) != 0) m.add(below.at({x, GenRef{y.degree - 1, r}}), col, v);
        }
        const Matrix dc = c.differential(x.degree + 1);  // C_{x+1} -> C_x
        for (const auto& [src, v] : dc.row(x.index)) {
          Integer coef = p % 2 == 0 ? Integer(-v) : Integer(v);
          m.add(below.at({GenRef{x.degree + 1, src}, y}), col, coef);
        }
      }
    }
    diffs.push_back(std::move(m));
  }
  return {RKComplex(c.K(), opposite(c.order()), c.ring(), lo, std::move(gens), std::move(diffs)), std::move(basis)};
}

std::optional<std::string> exactness_defect(const ChainMap& i, const ChainMap& j) {
  const Ring& ring = i.target.ring();
  if (i.degree != 0 || j.degree != 0) return "maps must have degree 0";
  if (!is_chain_map(i) || !is_chain_map(j)) return "not chain maps";
  const int lo = std::min({i.source.min_degree(), i.target.min_degree(), j.target.min_degree()});
  const int hi = std::max({i.source.max_degree(), i.target.max_degree(), j.target.max_degree()});
  auto all_units = [&](const SmithForm& s) {
    return std::all_of(s.factors.begin(), s.factors.end(), [&](const Integer& f) { return ring.is_unit(f); });
  };
  for (int q = lo; q <= hi; ++q) {
    const Matrix iq = i.component(q), jq = j.component(q);
    std::ostringstream where;
    where << " in degree " << q;
    if (!multiply(jq, iq).is_zero(ring)) return "j o i != 0" + where.str();
    const SmithForm si = smith_normal_form(iq, ring), sj = smith_normal_form(jq, ring);
    if (si.rank != iq.cols() || !all_units(si)) return "i is not a split monomorphism" + where.str();
    if (sj.rank != jq.rows() || !all_units(sj)) return "j is not surjective" + where.str();
    if (si.rank + sj.rank != i.target.rank(q)) return "image of i differs from kernel of j" + where.str();
  }
  return std::nullopt;
}

std::optional<std::string> exactness_defect(const ShortExactSequence& s) {
  if (!s.i.is_diagonal() || !s.j.is_diagonal()) return "maps are not diagonal in the labels";
  for (SimplexId sigma = 0; sigma < s.i.target().K().size(); ++sigma)
    if (auto defect = exactness_defect(diagonal_component(s.i, sigma), diagonal_component(s.j, sigma)))
      return *defect + " at label " + s.i.target().K().name(sigma);
  return std::nullopt;
}

std::string oriented_name(const SimplicialComplex& x, SimplexId s, int sign) {
  std::vector<std::string> names;
  for (VertexId v : x.vertices(s)) names.push_back(x.vertex_name(v));
  if (sign < 0 && names.size() >= 2) std::swap(names[0], names[1]);
  std::string out = "<";
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? "," : "") + names[i];
  if (sign < 0 && names.size() < 2) out = "-" + out;
  return out + ">";
}

RKComplex delta_complex(const KSpace& ks, const Ring& ring, std::span<const int> orientation) {
  const ChainComplex cx = chain_complex(ks.X, ring, orientation);
  std::vector<std::vector<Generator>> gens(static_cast<std::size_t>(std::max(ks.X.dimension() + 1, 0)));
  for (SimplexId s = 0; s < ks.X.size(); ++s)
    gens[static_cast<std::size_t>(ks.X.dim(s))].push_back(
        {ks.pi.image(s), oriented_name(ks.X, s, orientation.empty() ? 1 : orientation[s])});
  std::vector<Matrix> diffs;
  for (int q = 0; q <= ks.X.dimension(); ++q) diffs.push_back(cx.differential(q));
  return RKComplex(ks.K, Order::over_K_op, ring, 0, std::move(gens), std::move(diffs));
}

DeltaComplexes delta_complexes(const KSpace& ks, const Ring& ring, std::span<const int> orientation) {
  RKComplex delta = delta_complex(ks, ring, orientation);
  RKComplex codelta = dual_star(delta);
  DerivedComplex xp = barycentric_subdivision(ks.X);
  std::vector<std::vector<Generator>> gens;
  std::vector<Matrix> diffs;
  for (int p = 0; p <= xp.dimension(); ++p) {
    std::vector<Generator> level;
    for (ChainId c : xp.of_dim(p)) level.push_back({ks.pi.image(xp.chain(c).back()), xp.name(c)});
    gens.push_back(std::move(level));
    diffs.push_back(xp.boundary(p));
  }
  RKComplex derived(ks.K, Order::over_K, ring, 0, std::move(gens), std::move(diffs));
  return {std::move(delta), std::move(codelta), std::move(derived), std::move(xp)};
}

ClemReport check_lemma_clem(const SimplicialComplex& k, SimplexId maximal, const Ring& ring) {
  if (k.star(maximal).size() != 1) throw Error("Lemma check: " + k.name(maximal) + " is not a maximal simplex");
  std::vector<std::string> names;
  for (VertexId v : k.vertices(maximal)) names.push_back(k.vertex_name(v));
  const SimplicialComplex closure = SimplicialComplex::full_simplex(names);
  std::map<std::string, std::string> inclusion;
  for (const auto& n : names) inclusion[n] = n;
  const KSpace ks = validate_kspace(closure, k, inclusion);
  const RKComplex co = delta_complexes(ks, ring).codelta;

  ClemReport report;
  for (SimplexId sigma = 0; sigma < k.size(); ++sigma) {
    const ChainComplex piece = assemble(co, k.star(sigma));
    std::size_t total = 0;
    for (int q = piece.min_degree(); q <= piece.max_degree(); ++q) total += piece.rank(q);
    if (sigma == maximal) {
      if (total != 1 || piece.rank(-k.dim(maximal)) != 1)
        report.failures.push_back("st(" + k.name(sigma) + ") is not R.S* in degree -dim S");
    } else if (!k.is_face(sigma, maximal) && total != 0) {
      report.failures.push_back("st(" + k.name(sigma) + ") is nonzero although not a face of S");
    } else if (!is_acyclic(piece)) {
      report.failures.push_back("st(" + k.name(sigma) + ") is not acyclic");
    }
  }
  report.passed = report.failures.empty();
  return report;
}

}  // namespace rkdual
