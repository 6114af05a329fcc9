#include "rkdual/subdivision.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

namespace rkdual {

namespace {

int lex_incidence(const SimplicialComplex& k, SimplexId s, SimplexId face) {
  for (const auto& f : k.boundary(s))
    if (f.face == face) return f.sign;
  return 0;
}

std::vector<ChainId> sorted_union(const std::vector<const std::vector<ChainId>*>& parts) {
  std::vector<ChainId> out;
  for (const auto* p : parts) out.insert(out.end(), p->begin(), p->end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<ChainId> faces_of(const DerivedComplex& xp, ChainId c) {
  std::vector<ChainId> out;
  const auto& chain = xp.chain(c);
  if (chain.size() < 2) return out;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    std::vector<SimplexId> f = chain;
    f.erase(f.begin() + static_cast<long>(i));
    out.push_back(*xp.find(f));
  }
  return out;
}

// Downward closure of a set of chains.
std::vector<ChainId> closure(const DerivedComplex& xp, std::vector<ChainId> seeds) {
  std::set<ChainId> seen(seeds.begin(), seeds.end());
  while (!seeds.empty()) {
    const ChainId c = seeds.back();
    seeds.pop_back();
    for (ChainId f : faces_of(xp, c))
      if (seen.insert(f).second) seeds.push_back(f);
  }
  return {seen.begin(), seen.end()};
}

bool contains(const std::vector<ChainId>& sorted, ChainId c) {
  return std::binary_search(sorted.begin(), sorted.end(), c);
}

std::string vertex_list(const SimplicialComplex& k, SimplexId s) {
  std::string out;
  for (VertexId v : k.vertices(s)) out += (out.empty() ? "" : ",") + k.vertex_name(v);
  return out;
}

std::vector<std::vector<SimplexId>> by_dimension(const SimplicialComplex& k) {
  std::vector<std::vector<SimplexId>> out(static_cast<std::size_t>(std::max(k.dimension() + 1, 0)));
  for (SimplexId s = 0; s < k.size(); ++s) out[static_cast<std::size_t>(k.dim(s))].push_back(s);
  return out;
}

// Position of each simplex within its dimension (= generator index in Delta).
std::vector<std::size_t> positions(const SimplicialComplex& k) {
  std::vector<std::size_t> out(k.size());
  for (const auto& level : by_dimension(k))
    for (std::size_t i = 0; i < level.size(); ++i) out[level[i]] = i;
  return out;
}

RKMap diagonal_signs(const RKComplex& from, const RKComplex& to, const std::vector<int>& sign,
                     const std::vector<std::vector<SimplexId>>& levels, bool dual) {
  std::map<int, Matrix> comps;
  for (std::size_t r = 0; r < levels.size(); ++r) {
    std::vector<Integer> d;
    for (SimplexId s : levels[r]) d.emplace_back(sign.empty() ? 1 : sign[s]);
    comps[dual ? -static_cast<int>(r) : static_cast<int>(r)] = Matrix::diagonal(d);
  }
  return RKMap(from, to, 0, std::move(comps));
}

RKComplex oriented_codelta_K(const SimplicialComplex& k, const Ring& ring, const std::vector<int>& k_sign) {
  return dual_star(delta_complex(KSpace::identity(k), ring, k_sign));
}

}  // namespace

std::vector<ChainId> dual_cone(const DerivedComplex& kp, SimplexId sigma) {
  std::vector<ChainId> out;
  for (ChainId c = 0; c < kp.size(); ++c)
    if (kp.base().is_face(sigma, kp.chain(c).back())) out.push_back(c);
  return out;
}

std::vector<ChainId> dual_cell(const DerivedComplex& kp, SimplexId sigma, SimplexId tau) {
  std::vector<ChainId> out;
  for (ChainId c : dual_cone(kp, sigma))
    if (kp.base().is_face(kp.chain(c).front(), tau)) out.push_back(c);
  return out;
}

std::vector<ChainId> dual_block(const KSpace& ks, const DerivedComplex& xp, SimplexId T, SimplexId sigma) {
  std::vector<ChainId> out;
  for (ChainId c = 0; c < xp.size(); ++c) {
    const auto& chain = xp.chain(c);
    if (ks.X.is_face(chain.front(), T) && ks.K.is_face(sigma, ks.pi.image(chain.back()))) out.push_back(c);
  }
  return out;
}

std::string BallComplex::name(CellKey k) const {
  return "(" + vertex_list(ks.X, k.T) + "|" + vertex_list(ks.K, k.sigma) + ")";
}

long BallComplex::euler_characteristic() const {
  long chi = 0;
  for (const auto& c : cells) chi += c.dimension % 2 == 0 ? 1 : -1;
  return chi;
}

BallComplex ball_complex(const KSpace& ks) {
  BallComplex bc{ks, barycentric_subdivision(ks.X), {}, {}};
  for (SimplexId t = 0; t < ks.X.size(); ++t)
    for (SimplexId s : ks.K.closure(ks.pi.image(t)))
      bc.cells.push_back({{t, s}, ks.X.dim(t) - ks.K.dim(s), dual_block(ks, bc.xp, t, s), {}, {}});
  std::sort(bc.cells.begin(), bc.cells.end(), [](const DualCell& a, const DualCell& b) {
    return std::tie(a.dimension, a.key) < std::tie(b.dimension, b.key);
  });
  for (std::size_t i = 0; i < bc.cells.size(); ++i) bc.index.emplace(bc.cells[i].key, i);

  for (auto& cell : bc.cells) {
    const auto [t, s] = cell.key;
    std::vector<const std::vector<ChainId>*> inner, outer;
    for (SimplexId r : ks.K.closure(ks.pi.image(t)))
      if (r != s && ks.K.is_face(s, r)) inner.push_back(&bc.cell({t, r}).simplices);
    for (SimplexId f : ks.X.closure(t))
      if (f != t && ks.K.is_face(s, ks.pi.image(f))) outer.push_back(&bc.cell({f, s}).simplices);
    cell.inner_boundary = sorted_union(inner);
    cell.outer_boundary = sorted_union(outer);
  }
  return bc;
}

BallReport verify_ball_complex(const BallComplex& bc, Exec exec) {
  const KSpace& ks = bc.ks;
  const DerivedComplex& xp = bc.xp;
  BallReport report;

  std::vector<std::vector<std::string>> per_cell(bc.cells.size());
  std::vector<std::vector<ChainId>> interiors(bc.cells.size());
  for_each_index(exec, bc.cells.size(), [&](std::size_t i) {
    const DualCell& cell = bc.cells[i];
    auto fail = [&](const std::string& what) { per_cell[i].push_back(bc.name(cell.key) + ": " + what); };
    if (cell.simplices.empty()) {
      fail("empty");
      return;
    }
    int top = -1;
    for (ChainId c : cell.simplices) top = std::max(top, xp.dim(c));
    if (top != cell.dimension) fail("dimension " + std::to_string(top) + ", expected " + std::to_string(cell.dimension));

    std::vector<ChainId> tops;
    for (ChainId c : cell.simplices)
      if (xp.dim(c) == top) tops.push_back(c);
    if (closure(xp, tops) != cell.simplices) fail("not a pure subcomplex of X'");

    // faces of top simplices lying in exactly one top simplex
    std::map<ChainId, int> incidence;
    for (ChainId c : tops)
      for (ChainId f : faces_of(xp, c)) ++incidence[f];
    std::vector<ChainId> free_faces;
    for (const auto& [f, n] : incidence)
      if (n == 1) free_faces.push_back(f);
    const std::vector<ChainId> boundary = sorted_union({&cell.inner_boundary, &cell.outer_boundary});
    if (closure(xp, free_faces) != boundary) fail("boundary differs from inner + outer boundary");

    for (ChainId c : cell.simplices)
      if (!contains(boundary, c)) interiors[i].push_back(c);
  });
  for (auto& f : per_cell) report.failures.insert(report.failures.end(), f.begin(), f.end());

  std::vector<int> owners(xp.size(), 0);
  for (std::size_t i = 0; i < bc.cells.size(); ++i)
    for (ChainId c : interiors[i]) {
      ++owners[c];
      const auto& chain = xp.chain(c);
      const CellKey expected{chain.front(), ks.pi.image(chain.back())};
      if (!(bc.cells[i].key == expected))
        report.failures.push_back(xp.name(c) + " is interior to " + bc.name(bc.cells[i].key) + ", expected " +
                                  bc.name(expected));
    }
  for (ChainId c = 0; c < xp.size(); ++c)
    if (owners[c] != 1)
      report.failures.push_back(xp.name(c) + " lies in the interior of " + std::to_string(owners[c]) + " cells");

  for (SimplexId t = 0; t < ks.X.size(); ++t)
    for (SimplexId s = 0; s < ks.K.size(); ++s)
      if (!ks.K.is_face(s, ks.pi.image(t)) && !dual_block(ks, xp, t, s).empty())
        report.failures.push_back("D_s T is nonempty for T = " + ks.X.name(t) + ", s = " + ks.K.name(s));

  for (const auto& cell : bc.cells) ++report.census[cell.dimension];
  report.euler_cells = bc.euler_characteristic();
  report.euler_derived = xp.euler_characteristic();
  report.euler_base = ks.X.euler_characteristic();
  if (report.euler_cells != report.euler_derived || report.euler_derived != report.euler_base)
    report.failures.push_back("Euler characteristics differ");
  return report;
}

OrientationPair OrientationPair::canonical(const KSpace& ks) { return adjusted(ks, std::vector<int>(ks.K.size(), 1)); }

OrientationPair OrientationPair::adjusted(const KSpace& ks, std::vector<int> k_sign) {
  if (k_sign.size() != ks.K.size()) throw Error("orientation: one sign per simplex of K required");
  OrientationPair o{std::move(k_sign), std::vector<int>(ks.X.size(), 1)};
  for (SimplexId t = 0; t < ks.X.size(); ++t) {
    const int push = ks.pi.push_sign(t);
    if (push == 0) continue;
    const SimplexId s = ks.pi.image(t);
    o.x_sign[t] = push * o.k_sign[s] * (ks.K.dim(s) % 2 == 0 ? 1 : -1);
  }
  return o;
}

std::optional<std::string> orientation_defect(const KSpace& ks, const OrientationPair& o) {
  if (o.k_sign.size() != ks.K.size() || o.x_sign.size() != ks.X.size()) return "sign vectors have the wrong length";
  for (SimplexId t = 0; t < ks.X.size(); ++t) {
    const int push = ks.pi.push_sign(t);
    if (push == 0) continue;
    const SimplexId s = ks.pi.image(t);
    // pi_*(x T) = x push s_lex = x push k (k s_lex)
    if (o.x_sign[t] * push * o.k_sign[s] != (ks.K.dim(s) % 2 == 0 ? 1 : -1))
      return "pi_*(" + ks.X.name(t) + ") is not (-1)^dim times the basis element of " + ks.K.name(s);
  }
  return std::nullopt;
}

CellularComplex cellular_chain_complex(const KSpace& ks, const OrientationPair& o, const Ring& ring) {
  if (auto defect = orientation_defect(ks, o)) throw InvalidOrientation(*defect);
  TensorComplex t = tensor_K(delta_complex(ks, ring, o.x_sign), oriented_codelta_K(ks.K, ring, o.k_sign));
  const auto xs = by_dimension(ks.X), kl = by_dimension(ks.K);
  std::vector<std::vector<CellKey>> keys;
  for (const auto& level : t.pairs) {
    std::vector<CellKey> out;
    for (const auto& [x, y] : level)
      out.push_back({xs.at(static_cast<std::size_t>(x.degree)).at(x.index),
                     kl.at(static_cast<std::size_t>(-y.degree)).at(y.index)});
    keys.push_back(std::move(out));
  }
  return {ks, o, std::move(t), std::move(keys)};
}

std::vector<std::string> check_boundary_display(const CellularComplex& c, const BallComplex& bc) {
  const KSpace& ks = c.ks;
  const auto& o = c.orientation;
  const RKComplex& cx = c.complex();
  std::vector<std::string> failures;
  std::map<CellKey, GenRef> where;
  for (int n = cx.min_degree(); n <= cx.max_degree(); ++n)
    for (std::size_t i = 0; i < cx.rank(n); ++i) where.emplace(c.key({n, i}), GenRef{n, i});

  for (int n = cx.min_degree(); n <= cx.max_degree(); ++n) {
    const Matrix actual = cx.differential(n);
    Matrix display(actual.rows(), actual.cols());
    for (std::size_t col = 0; col < cx.rank(n); ++col) {
      const auto [t, r] = c.key({n, col});
      for (const auto& f : ks.X.boundary(t)) {
        auto it = where.find({f.face, r});
        if (it != where.end()) display.add(it->second.index, col, o.x_sign[t] * o.x_sign[f.face] * f.sign);
      }
      const int outer_sign = (1 + n) % 2 == 0 ? 1 : -1;
      for (SimplexId s : ks.K.cofaces(r)) {
        if (!ks.K.is_face(s, ks.pi.image(t))) continue;
        display.add(where.at({t, s}).index, col, outer_sign * o.k_sign[s] * o.k_sign[r] * lex_incidence(ks.K, s, r));
      }
    }
    if (!display.equals(actual, cx.ring()))
      failures.push_back("boundary display differs from the tensor differential in degree " + std::to_string(n));

    for (std::size_t col = 0; col < cx.rank(n); ++col) {
      const CellKey from = c.key({n, col});
      const DualCell& cell = bc.cell(from);
      const auto boundary = sorted_union({&cell.inner_boundary, &cell.outer_boundary});
      std::set<std::size_t> hit;
      for (std::size_t row = 0; row < actual.rows(); ++row) {
        const Integer v = actual.at(row, col);
        if (sgn(v) == 0) continue;
        hit.insert(row);
        const CellKey to = c.key({n - 1, row});
        const DualCell& face = bc.cell(to);
        if (abs(v) != 1) failures.push_back(bc.name(from) + ": coefficient of " + bc.name(to) + " is not +-1");
        if (face.dimension != cell.dimension - 1 ||
            !std::includes(boundary.begin(), boundary.end(), face.simplices.begin(), face.simplices.end()))
          failures.push_back(bc.name(from) + ": " + bc.name(to) + " is not a codimension-one face");
      }
      for (std::size_t row = 0; row < cx.rank(n - 1); ++row) {
        if (hit.count(row)) continue;
        const DualCell& face = bc.cell(c.key({n - 1, row}));
        if (std::includes(boundary.begin(), boundary.end(), face.simplices.begin(), face.simplices.end()))
          failures.push_back(bc.name(from) + ": face " + bc.name(face.key) + " has coefficient 0");
      }
    }
  }
  return failures;
}

RKMap phi(const KSpace& ks, const OrientationPair& o, const Ring& ring) {
  const RKComplex delta = delta_complex(ks, ring, o.x_sign);
  const DualityResult source = duality(dual_star(delta));
  const CellularComplex target = cellular_chain_complex(ks, o, ring);
  // lexicographic s* = k(s) (bK s)*
  const RKMap h = diagonal_signs(source.right, target.tensor.right, o.k_sign, by_dimension(ks.K), true);
  return tensor_map(source, target.tensor, epsilon(delta), h);
}

KSpaceMap validate_kspace_map(KSpace source, KSpace target, SimplicialMap f) {
  if (!(f.source() == source.X) || !(f.target() == target.X)) throw Error("K-space map: f does not go from X to Y");
  if (!(source.K == target.K)) throw Error("K-space map: control complexes differ");
  for (VertexId v = 0; v < source.X.num_vertices(); ++v)
    if (target.pi(f(v)) != source.pi(v))
      throw Error("K-space map: control maps do not commute at vertex " + source.X.vertex_name(v));
  return {std::move(source), std::move(target), std::move(f)};
}

RKMap induced_delta_map(const KSpaceMap& f, const OrientationPair& os, const OrientationPair& ot, const Ring& ring) {
  const RKComplex dx = delta_complex(f.source, ring, os.x_sign);
  const RKComplex dy = delta_complex(f.target, ring, ot.x_sign);
  const auto pos = positions(f.target.X), src_pos = positions(f.source.X);
  std::map<int, Matrix> comps;
  for (int q = 0; q <= f.source.X.dimension(); ++q) comps[q] = Matrix(dy.rank(q), dx.rank(q));
  for (SimplexId t = 0; t < f.source.X.size(); ++t) {
    const int push = f.f.push_sign(t);
    if (push == 0) continue;
    const SimplexId image = f.f.image(t);
    const int q = f.source.X.dim(t);
    comps[q].set(pos[image], src_pos[t], os.x_sign[t] * push * ot.x_sign[image]);
  }
  return RKMap(dx, dy, 0, std::move(comps));
}

RKMap induced_ball_map(const KSpaceMap& f, const OrientationPair& os, const OrientationPair& ot, const Ring& ring) {
  if (os.k_sign != ot.k_sign) throw Error("induced map: the two orientations use different bases of K");
  const CellularComplex cx = cellular_chain_complex(f.source, os, ring);
  const CellularComplex cy = cellular_chain_complex(f.target, ot, ring);
  return tensor_map(cx.tensor, cy.tensor, induced_delta_map(f, os, ot, ring), identity(cx.tensor.right));
}

NaturalityReport check_naturality(const KSpaceMap& f, const Ring& ring) {
  NaturalityReport report;
  const OrientationPair os = OrientationPair::canonical(f.source), ot = OrientationPair::canonical(f.target);
  const RKMap f_star = dual_star(induced_delta_map(f, os, ot, ring));
  const RKMap fk = induced_ball_map(f, os, ot, ring);
  const RKMap top = duality(f_star);
  report.square =
      maps_equal(compose(phi(f.target, ot, ring), top), compose(fk, phi(f.source, os, ring)));

  // each column of f_K is 0 or a single +-1 at the image cell
  const CellularComplex cx = cellular_chain_complex(f.source, os, ring);
  const CellularComplex cy = cellular_chain_complex(f.target, ot, ring);
  report.cells_to_cells = true;
  for (int n = cx.complex().min_degree(); n <= cx.complex().max_degree(); ++n) {
    const Matrix m = fk.component(n).transpose();
    for (std::size_t col = 0; col < cx.complex().rank(n); ++col) {
      const auto [t, r] = cx.key({n, col});
      const auto& entries = m.row(col);
      if (entries.empty()) {
        if (f.f.is_nondegenerate(t)) report.cells_to_cells = false;
        continue;
      }
      if (entries.size() != 1 || abs(entries.begin()->second) != 1 || !f.f.is_nondegenerate(t)) {
        report.cells_to_cells = false;
        continue;
      }
      const CellKey to = cy.key({n, entries.begin()->first});
      if (!(to == CellKey{f.f.image(t), r})) report.cells_to_cells = false;
    }
  }

  // f'(D_s S) = D_s f(S)
  const BallComplex bx = ball_complex(f.source), by = ball_complex(f.target);
  report.blocks = true;
  for (const auto& cell : bx.cells) {
    std::set<ChainId> image;
    for (ChainId c : cell.simplices) {
      std::vector<SimplexId> mapped;
      for (SimplexId s : bx.xp.chain(c)) {
        const SimplexId m = f.f.image(s);
        if (mapped.empty() || mapped.back() != m) mapped.push_back(m);
      }
      image.insert(*by.xp.find(mapped));
    }
    const auto& expected = by.cell({f.f.image(cell.key.T), cell.key.sigma}).simplices;
    if (!std::equal(image.begin(), image.end(), expected.begin(), expected.end())) report.blocks = false;
  }
  return report;
}

}  // namespace rkdual
