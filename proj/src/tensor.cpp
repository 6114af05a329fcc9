#include "rkdual/tensor.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace rkdual {

namespace {

std::string pair_name(const std::string& x, const std::string& y) { return "(" + x + "⊗" + y + ")"; }

// Transposed components, so that columns can be walked as rows.
class Columns {
 public:
  explicit Columns(const RKComplex& c) {
    for (int q = c.min_degree(); q <= c.max_degree(); ++q) diff_[q] = c.differential(q).transpose();
  }
  explicit Columns(const RKMap& f) {
    for (int q = f.source().min_degree(); q <= f.source().max_degree(); ++q) diff_[q] = f.component(q).transpose();
  }
  const Matrix::Row& at(GenRef g) const { return diff_.at(g.degree).row(g.index); }

 private:
  std::map<int, Matrix> diff_;
};

TensorComplex build_tensor(const RKComplex& c, const RKComplex& d, bool keep_all) {
  if (!(c.K() == d.K())) throw Error("tensor product: factors are over different posets");
  if (c.order() != Order::over_K_op || d.order() != Order::over_K)
    throw Error("tensor product: expects a K^op complex on the left and a K complex on the right");
  const SimplicialComplex& k = c.K();

  TensorComplex t{c, d, RKComplex(k, Order::over_K, c.ring(), 0, {}, {}), {}, {}};
  if (c.total_rank() == 0 || d.total_rank() == 0) return t;

  const int lo = c.min_degree() + d.min_degree();
  const int hi = c.max_degree() + d.max_degree();
  std::vector<std::vector<Generator>> gens;
  for (int n = lo; n <= hi; ++n) {
    std::vector<TensorPair> level;
    std::vector<Generator> level_gens;
    for (int r = c.min_degree(); r <= c.max_degree(); ++r) {
      const auto xs = c.generators(r);
      const auto ys = d.generators(n - r);
      for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < ys.size(); ++j) {
          if (!keep_all && !k.is_face(ys[j].label, xs[i].label)) continue;
          const TensorPair p{{r, i}, {n - r, j}};
          t.index.emplace(p, GenRef{n, level.size()});
          level.push_back(p);
          level_gens.push_back({ys[j].label, pair_name(xs[i].name, ys[j].name)});
        }
    }
    t.pairs.push_back(std::move(level));
    gens.push_back(std::move(level_gens));
  }

  // d(x (x) y) = dx (x) y + (-1)^{|x|} x (x) dy, dropping pairs outside the basis
  const Columns dc(c), dd(d);
  std::vector<Matrix> diffs;
  for (int n = lo; n <= hi; ++n) {
    const auto& level = t.pairs[static_cast<std::size_t>(n - lo)];
    Matrix m(n == lo ? 0 : t.pairs[static_cast<std::size_t>(n - 1 - lo)].size(), level.size());
    if (n != lo) {
      for (std::size_t col = 0; col < level.size(); ++col) {
        const auto [x, y] = level[col];
        for (const auto& [xi, v] : dc.at(x))
          if (auto g = t.find({{x.degree - 1, xi}, y})) m.add(g->index, col, v);
        const bool odd = x.degree % 2 != 0;
        for (const auto& [yi, v] : dd.at(y))
          if (auto g = t.find({x, {y.degree - 1, yi}})) m.add(g->index, col, odd ? Integer(-v) : v);
      }
    }
    diffs.push_back(std::move(m));
  }
  t.complex = RKComplex(k, Order::over_K, c.ring(), lo, std::move(gens), std::move(diffs));
  return t;
}

// Inverse of a map that is a signed permutation in every degree.
RKMap signed_permutation_inverse(const RKMap& f) {
  if (f.degree() != 0) throw Error("inverse: map has nonzero degree");
  const Ring& ring = f.target().ring();
  std::map<int, Matrix> comps;
  for (int q = f.source().min_degree(); q <= f.source().max_degree(); ++q) {
    const Matrix m = f.component(q);
    if (m.rows() != m.cols()) throw Error("inverse: component is not square");
    std::vector<int> per_col(m.cols(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (m.row(r).size() != 1) throw Error("inverse: component is not a signed permutation");
      for (const auto& [c, v] : m.row(r)) {
        if (abs(v) != 1 || !ring.is_unit(v)) throw Error("inverse: component is not a signed permutation");
        ++per_col[c];
      }
    }
    if (std::any_of(per_col.begin(), per_col.end(), [](int n) { return n != 1; }))
      throw Error("inverse: component is not a signed permutation");
    comps[q] = m.transpose();
  }
  return RKMap(f.target(), f.source(), 0, std::move(comps));
}

std::map<std::pair<GenRef, GenRef>, GenRef> hom_index(const HomComplex& h) {
  std::map<std::pair<GenRef, GenRef>, GenRef> out;
  for (std::size_t l = 0; l < h.basis.size(); ++l)
    for (std::size_t i = 0; i < h.basis[l].size(); ++i)
      out.emplace(std::pair{h.basis[l][i].source, h.basis[l][i].target},
                  GenRef{h.complex.min_degree() + static_cast<int>(l), i});
  return out;
}

GenRef dual_ref(GenRef g) { return {-g.degree, g.index}; }

GenRef simplex_generator(const RKComplex& dk, SimplexId s) {
  const int q = -dk.K().dim(s);
  const auto gens = dk.generators(q);
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens[i].label == s) return {q, i};
  throw Error("no generator for " + dk.K().name(s));
}

// Generators whose label satisfies keep, with the induced differential.
RKComplex restrict_labels(const RKComplex& c, const std::set<SimplexId>& keep, std::map<int, std::vector<std::size_t>>& pos) {
  std::vector<std::vector<Generator>> gens;
  std::vector<Matrix> diffs;
  for (int q = c.min_degree(); q <= c.max_degree(); ++q) {
    std::vector<Generator> level;
    const auto all = c.generators(q);
    for (std::size_t i = 0; i < all.size(); ++i)
      if (keep.count(all[i].label)) {
        pos[q].push_back(i);
        level.push_back(all[i]);
      }
    gens.push_back(std::move(level));
  }
  for (int q = c.min_degree(); q <= c.max_degree(); ++q)
    diffs.push_back(q == c.min_degree() ? Matrix(0, pos[q].size()) : c.differential(q).select(pos[q - 1], pos[q]));
  return RKComplex(c.K(), c.order(), c.ring(), c.min_degree(), std::move(gens), std::move(diffs));
}

}  // namespace

const TensorPair& TensorComplex::at(GenRef g) const {
  return pairs.at(static_cast<std::size_t>(g.degree - complex.min_degree())).at(g.index);
}

std::optional<GenRef> TensorComplex::find(const TensorPair& p) const {
  auto it = index.find(p);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

TensorComplex tensor_K(const RKComplex& c, const RKComplex& d) { return build_tensor(c, d, false); }
TensorComplex tensor_R(const RKComplex& c, const RKComplex& d) { return build_tensor(c, d, true); }

RKMap pi_projection(const TensorComplex& r, const TensorComplex& k) {
  std::map<int, Matrix> comps;
  for (int n = r.complex.min_degree(); n <= r.complex.max_degree(); ++n) {
    Matrix m(k.complex.rank(n), r.complex.rank(n));
    const auto& level = r.pairs[static_cast<std::size_t>(n - r.complex.min_degree())];
    for (std::size_t col = 0; col < level.size(); ++col)
      if (auto g = k.find(level[col])) m.set(g->index, col, 1);
    comps[n] = std::move(m);
  }
  return RKMap(r.complex, k.complex, 0, std::move(comps));
}

RKMap tensor_map(const TensorComplex& source, const TensorComplex& target, const RKMap& g, const RKMap& h) {
  const int degree = g.degree() + h.degree();
  const Columns gc(g), hc(h);
  std::map<int, Matrix> comps;
  for (int n = source.complex.min_degree(); n <= source.complex.max_degree(); ++n) {
    Matrix m(target.complex.rank(n + degree), source.complex.rank(n));
    const auto& level = source.pairs[static_cast<std::size_t>(n - source.complex.min_degree())];
    for (std::size_t col = 0; col < level.size(); ++col) {
      const auto [x, y] = level[col];
      const bool odd = (h.degree() * x.degree) % 2 != 0;
      for (const auto& [xi, v] : gc.at(x))
        for (const auto& [yi, w] : hc.at(y))
          if (auto t = target.find({{x.degree + g.degree(), xi}, {y.degree + h.degree(), yi}})) {
            Integer coef = v * w;
            m.add(t->index, col, odd ? Integer(-coef) : coef);
          }
    }
    comps[n] = std::move(m);
  }
  return RKMap(source.complex, target.complex, degree, std::move(comps));
}

RKMap psi_iso(const RKComplex& c, const RKComplex& d) {
  const HomComplex hom = hom_rk(d, dual_star(c));
  const TensorComplex t = tensor_K(c, d);
  const RKComplex td = dual_star(t.complex);
  std::map<int, Matrix> comps;
  for (int p = hom.complex.min_degree(); p <= hom.complex.max_degree(); ++p) {
    Matrix m(td.rank(p), hom.complex.rank(p));
    for (std::size_t col = 0; col < hom.complex.rank(p); ++col) {
      const auto& e = hom.at({p, col});
      const GenRef x = dual_ref(e.target), y = e.source;
      const auto g = t.find({x, y});
      if (!g || -g->degree != p) throw Error("Psi: no tensor generator for " + hom.complex.generator({p, col}).name);
      m.set(g->index, col, (x.degree * y.degree) % 2 != 0 ? -1 : 1);
    }
    comps[p] = std::move(m);
  }
  return RKMap(hom.complex, td, 0, std::move(comps));
}

RKMap hom_post(const HomComplex& from, const HomComplex& to, const RKMap& g) {
  if (g.degree() != 0) throw Error("post-composition: map must have degree 0");
  const auto index = hom_index(to);
  const Columns gc(g);
  std::map<int, Matrix> comps;
  for (int p = from.complex.min_degree(); p <= from.complex.max_degree(); ++p) {
    Matrix m(to.complex.rank(p), from.complex.rank(p));
    for (std::size_t col = 0; col < from.complex.rank(p); ++col) {
      const auto& e = from.at({p, col});
      for (const auto& [xi, v] : gc.at(e.target)) {
        auto it = index.find({e.source, GenRef{e.target.degree, xi}});
        if (it == index.end()) throw Error("post-composition: image leaves the Hom basis");
        m.add(it->second.index, col, v);
      }
    }
    comps[p] = std::move(m);
  }
  return RKMap(from.complex, to.complex, 0, std::move(comps));
}

RKComplex codelta_K(const SimplicialComplex& k, const Ring& ring) {
  return dual_star(delta_complex(KSpace::identity(k), ring));
}

DualityResult duality(const RKComplex& c) {
  if (c.order() != Order::over_K) throw Error("T: complex must be an (R,K) complex, not over K^op");
  return tensor_K(dual_star(c), codelta_K(c.K(), c.ring()));
}

RKMap duality(const RKMap& f) {
  const DualityResult td = duality(f.target());
  const DualityResult tc = duality(f.source());
  return tensor_map(td, tc, dual_star(f), identity(td.right));
}

Evaluation evaluation(const RKComplex& c) {
  const RKComplex dk = codelta_K(c.K(), c.ring());
  HomComplex hom = hom_rk(dk, c);
  TensorComplex domain = tensor_K(hom.complex, dk);
  std::map<int, Matrix> comps;
  for (int n = domain.complex.min_degree(); n <= domain.complex.max_degree(); ++n) {
    Matrix m(c.rank(n), domain.complex.rank(n));
    const auto& level = domain.pairs[static_cast<std::size_t>(n - domain.complex.min_degree())];
    for (std::size_t col = 0; col < level.size(); ++col) {
      const auto& e = hom.at(level[col].left);
      if (e.source == level[col].right) m.set(e.target.index, col, 1);
    }
    comps[n] = std::move(m);
  }
  RKMap map(domain.complex, c, 0, std::move(comps));
  return {std::move(hom), std::move(domain), std::move(map)};
}

RKMap e_transform(const RKComplex& c) {
  const Evaluation ev = evaluation(c);
  const RKComplex& dk = ev.domain.right;
  const RKMap eps = epsilon(c);
  std::map<int, Matrix> inv;
  for (int q = c.min_degree(); q <= c.max_degree(); ++q) inv[q] = eps.component(q);
  const RKMap eps_inv(c, eps.source(), 0, std::move(inv));

  const HomComplex hom2 = hom_rk(dk, eps.source());
  const RKMap theta = hom_post(ev.hom, hom2, eps_inv);
  const RKMap psi = psi_iso(dual_star(c), dk);
  const TensorComplex t2 = tensor_K(psi.target(), dk);
  const RKMap psi1 = tensor_map(ev.domain, t2, compose(psi, theta), identity(dk));
  return compose(ev.map, signed_permutation_inverse(psi1));
}

bool DiagonalReport::passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const Entry& e) { return e.acyclic; });
}

std::vector<SimplexId> DiagonalReport::failures() const {
  std::vector<SimplexId> out;
  for (const auto& e : entries)
    if (!e.acyclic) out.push_back(e.sigma);
  return out;
}

DiagonalReport check_diagonal_equivalence(const RKMap& f, Exec exec) {
  const std::size_t n = f.source().K().size();
  DiagonalReport report;
  report.entries.resize(n);
  for_each_index(exec, n, [&](std::size_t s) {
    const auto sigma = static_cast<SimplexId>(s);
    report.entries[s] = {sigma, is_cone_acyclic(diagonal_component(f, sigma))};
  });
  return report;
}

DiagonalReport verify_e_equivalence(const RKComplex& c, Exec exec) {
  return check_diagonal_equivalence(e_transform(c), exec);
}

RKComplex label_piece(const RKComplex& c, SimplexId s) {
  std::map<int, std::vector<std::size_t>> pos;
  return restrict_labels(c, {s}, pos);
}

std::map<int, int> case_one_signs(const RKComplex& c) {
  std::set<SimplexId> labels;
  for (int q = c.min_degree(); q <= c.max_degree(); ++q)
    for (const auto& g : c.generators(q)) labels.insert(g.label);
  if (labels.size() > 1) throw Error("case one: complex has more than one nonzero label");
  std::map<int, int> out;
  if (labels.empty()) return out;
  const SimplexId s = *labels.begin();

  const DualityResult tc = duality(c);
  const DualityResult t2 = duality(tc.complex);
  const RKMap e = e_transform(c);
  const GenRef s_star = simplex_generator(tc.right, s);
  for (int m = c.min_degree(); m <= c.max_degree(); ++m) {
    const Matrix em = e.component(m);
    for (std::size_t i = 0; i < c.rank(m); ++i) {
      const auto w = tc.find({dual_ref({m, i}), s_star});
      const auto g = w ? t2.find({dual_ref(*w), s_star}) : std::nullopt;
      if (!g) throw Error("case one: missing generator of T^2 C");
      const int sign = sgn(em.at(i, g->index)) * (m % 2 != 0 ? -1 : 1);
      auto [it, inserted] = out.emplace(m, sign);
      if (!inserted && it->second != sign) it->second = 0;
    }
  }
  return out;
}

std::optional<FiltrationReport> check_filtration_step(const RKComplex& c) {
  if (c.total_rank() == 0) return std::nullopt;
  const SimplicialComplex& k = c.K();
  std::set<SimplexId> labels;
  for (int q = c.min_degree(); q <= c.max_degree(); ++q)
    for (const auto& g : c.generators(q)) labels.insert(g.label);
  FiltrationReport report;
  report.S = *std::max_element(labels.begin(), labels.end(),
                               [&](SimplexId a, SimplexId b) { return k.dim(a) < k.dim(b); });
  std::set<SimplexId> rest = labels;
  rest.erase(report.S);

  std::map<int, std::vector<std::size_t>> sub_pos, quot_pos;
  const RKComplex sub = restrict_labels(c, {report.S}, sub_pos);
  const RKComplex quot = restrict_labels(c, rest, quot_pos);
  std::map<int, Matrix> ic, jc;
  for (int q = c.min_degree(); q <= c.max_degree(); ++q) {
    Matrix im(c.rank(q), sub.rank(q)), jm(quot.rank(q), c.rank(q));
    for (std::size_t a = 0; a < sub_pos[q].size(); ++a) im.set(sub_pos[q][a], a, 1);
    for (std::size_t a = 0; a < quot_pos[q].size(); ++a) jm.set(a, quot_pos[q][a], 1);
    ic[q] = std::move(im);
    jc[q] = std::move(jm);
  }
  const RKMap i(sub, c, 0, std::move(ic));
  const RKMap j(c, quot, 0, std::move(jc));
  report.exact = !exactness_defect(ShortExactSequence{i, j});
  report.dual_exact = !exactness_defect(ShortExactSequence{duality(j), duality(i)});

  const RKMap e = e_transform(c), e_sub = e_transform(sub), e_quot = e_transform(quot);
  const RKMap t2i = duality(duality(i)), t2j = duality(duality(j));
  report.left_square = maps_equal(compose(e, t2i), compose(i, e_sub));
  report.right_square = maps_equal(compose(e_quot, t2j), compose(j, e));
  return report;
}

}  // namespace rkdual
