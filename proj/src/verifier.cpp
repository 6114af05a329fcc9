#include "rkdual/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>

namespace rkdual {

namespace {

using ojson = nlohmann::ordered_json;

const std::vector<std::string> kNotices = {
    "full subsets: a subset S of K is read as full when every simplex lying between two members of S "
    "belongs to S; the literal wording would make K the only full subset",
    "eps(Q) for a one-element flag Q = <T> is taken to be 1 (relative to the chosen endpoint orientations), "
    "the value forced by the 0-cell formula, instead of 0",
};

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct Context {
  KSpace ks;
  Ring ring;
  Exec exec;
  std::set<std::string>* ops;

  void use(std::initializer_list<const char*> names) const {
    for (const char* n : names) ops->insert(n);
  }
};

std::string simplex_list(const SimplicialComplex& k, std::span<const SimplexId> s) {
  std::string out;
  for (SimplexId x : s) out += (out.empty() ? "" : " ") + k.name(x);
  return out;
}

bool is_signed_permutation(const RKMap& f) {
  const Ring& ring = f.target().ring();
  for (int q = f.source().min_degree(); q <= f.source().max_degree(); ++q) {
    const Matrix m = f.component(q);
    if (m.rows() != m.cols()) return false;
    std::vector<int> col_hits(m.cols(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      std::size_t hits = 0;
      for (const auto& [c, v] : m.row(r)) {
        if (ring.is_zero(v)) continue;
        if (!ring.is_unit(v) || abs(v) != 1) return false;
        ++hits;
        ++col_hits[c];
      }
      if (hits != 1) return false;
    }
    for (int h : col_hits)
      if (h != 1) return false;
  }
  return true;
}

std::map<int, HomologyGroup> nonzero(const std::map<int, HomologyGroup>& h) {
  std::map<int, HomologyGroup> out;
  for (const auto& [q, g] : h)
    if (!g.is_zero()) out.emplace(q, g);
  return out;
}

ojson homology_json(const std::map<int, HomologyGroup>& h, const Ring& ring) {
  ojson out = ojson::object();
  for (const auto& [q, g] : h) out[std::to_string(q)] = homology_text(g, ring);
  return out;
}

ojson ranks_json(const RKComplex& c) {
  ojson out = ojson::object();
  for (int q = c.min_degree(); q <= c.max_degree(); ++q) out[std::to_string(q)] = c.rank(q);
  return out;
}

void square_check(CheckResult& r, const std::string& what, const RKComplex& c, Exec exec) {
  if (auto q = c.first_nonzero_square(exec)) {
    r.passed = false;
    r.details.push_back(what + ": d o d != 0 out of degree " + std::to_string(*q));
  }
}

void diagonal_check(CheckResult& r, const std::string& what, const DiagonalReport& d, const SimplicialComplex& k) {
  const auto bad = d.failures();
  if (bad.empty()) return;
  r.passed = false;
  r.details.push_back(what + ": cone not acyclic at " + simplex_list(k, bad));
}

// ---- individual checks -----------------------------------------------------

CheckResult check_simplicial(const Context& cx) {
  CheckResult r{"simplicial"};
  cx.use({"incidence_number", "chain_complex", "barycentric_subdivision"});
  const SimplicialComplex& x = cx.ks.X;
  const ChainComplex c = chain_complex(x, cx.ring);
  std::map<int, std::vector<SimplexId>> by_dim;
  for (int q = 0; q <= x.dimension(); ++q) by_dim[q] = x.of_dim(q);
  for (int q = 1; q <= x.dimension(); ++q) {
    const Matrix d = c.differential(q);
    for (std::size_t col = 0; col < by_dim[q].size(); ++col)
      for (std::size_t row = 0; row < by_dim[q - 1].size(); ++row) {
        const OrientedSimplex a{x, by_dim[q][col], 1}, b{x, by_dim[q - 1][row], 1};
        if (d.at(row, col) != incidence_number(a, b)) {
          r.passed = false;
          r.details.push_back("boundary entry of " + x.name(a.simplex) + " at " + x.name(b.simplex) +
                              " differs from the incidence number");
        }
      }
  }
  const DerivedComplex xp = barycentric_subdivision(x);
  if (xp.euler_characteristic() != x.euler_characteristic()) {
    r.passed = false;
    r.details.push_back("chi(X') != chi(X)");
  }
  if (auto q = xp.chain_complex(cx.ring).first_nonzero_square()) {
    r.passed = false;
    r.details.push_back("X': d o d != 0 out of degree " + std::to_string(*q));
  }
  return r;
}

CheckResult check_differentials(const Context& cx) {
  CheckResult r{"differentials"};
  cx.use({"delta_complexes", "T", "cellular_chain_complex"});
  const DeltaComplexes dc = delta_complexes(cx.ks, cx.ring);
  square_check(r, "Delta X", dc.delta, cx.exec);
  square_check(r, "Delta* X", dc.codelta, cx.exec);
  square_check(r, "Delta X'", dc.derived, cx.exec);
  const CellularComplex cc = cellular_chain_complex(cx.ks, OrientationPair::canonical(cx.ks), cx.ring);
  square_check(r, "C(X_K)", cc.complex(), cx.exec);
  const DualityResult tc = duality(dc.codelta);
  square_check(r, "T Delta* X", tc.complex, cx.exec);
  square_check(r, "T^2 Delta* X", duality(tc.complex).complex, cx.exec);
  const DualityResult td = duality(dc.derived);
  square_check(r, "T Delta X'", td.complex, cx.exec);
  square_check(r, "T^2 Delta X'", duality(td.complex).complex, cx.exec);
  return r;
}

CheckResult check_rk(const Context& cx) {
  CheckResult r{"rk"};
  cx.use({"assemble", "dual_star", "epsilon", "hom_rk", "delta_complexes"});
  const DeltaComplexes dc = delta_complexes(cx.ks, cx.ring);
  std::vector<SimplexId> all(cx.ks.K.size());
  for (SimplexId s = 0; s < all.size(); ++s) all[s] = s;
  const ChainComplex whole = assemble(dc.codelta, all), under = dc.codelta.underlying();
  for (int q = under.min_degree(); q <= under.max_degree(); ++q)
    if (!whole.differential(q).equals(under.differential(q), cx.ring)) {
      r.passed = false;
      r.details.push_back("assemble(Delta* X, K) differs from the total complex in degree " + std::to_string(q));
    }
  const RKMap eps = epsilon(dc.delta);
  if (!is_chain_map(eps) || !is_signed_permutation(eps)) {
    r.passed = false;
    r.details.push_back("epsilon for Delta X is not a chain isomorphism");
  }
  if (!(dual_star(dc.delta).order() == Order::over_K)) {
    r.passed = false;
    r.details.push_back("dual of Delta X is not over K");
  }
  const HomComplex h = hom_rk(dc.delta, dc.delta);
  square_check(r, "Hom(Delta X, Delta X)", h.complex, cx.exec);
  return r;
}

CheckResult check_clem(const Context& cx) {
  CheckResult r{"clem"};
  cx.use({"check_lemma_clem", "assemble"});
  const SimplicialComplex& k = cx.ks.K;
  for (SimplexId s = 0; s < k.size(); ++s) {
    if (!k.cofaces(s).empty()) continue;
    const ClemReport c = check_lemma_clem(k, s, cx.ring);
    if (!c.passed) {
      r.passed = false;
      for (const auto& f : c.failures) r.details.push_back(k.name(s) + ": " + f);
    }
  }
  return r;
}

CheckResult check_tensor(const Context& cx, ojson& data) {
  CheckResult r{"tensor"};
  cx.use({"tensor_K", "pi_projection", "psi_iso", "T"});
  const DeltaComplexes dc = delta_complexes(cx.ks, cx.ring);
  const RKComplex dk = codelta_K(cx.ks.K, cx.ring);
  const TensorComplex tr = tensor_R(dc.delta, dk), tk = tensor_K(dc.delta, dk);
  const RKMap p = pi_projection(tr, tk);
  if (!is_chain_map(p) || !p.is_diagonal()) {
    r.passed = false;
    r.details.push_back("pi projection is not a diagonal chain map");
  }
  // kernel is exactly the pairs with label(x) not above label(y)
  for (int q = tr.complex.min_degree(); q <= tr.complex.max_degree(); ++q) {
    const Matrix m = p.component(q);
    const auto gens = tr.complex.generators(q);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const TensorPair& pair = tr.pairs[static_cast<std::size_t>(q - tr.complex.min_degree())][i];
      const bool kept = cx.ks.K.is_face(dk.generator(pair.right).label, dc.delta.generator(pair.left).label);
      std::size_t hits = 0;
      for (std::size_t row = 0; row < m.rows(); ++row)
        if (!cx.ring.is_zero(m.at(row, i))) ++hits;
      if (hits != (kept ? 1u : 0u)) {
        r.passed = false;
        r.details.push_back("pi projection at " + gens[i].name + " does not match the star condition");
      }
    }
  }
  const RKMap psi = psi_iso(dc.delta, dk);
  if (!is_chain_map(psi) || !is_signed_permutation(psi)) {
    r.passed = false;
    r.details.push_back("Psi is not a chain isomorphism on bases");
  }
  const DualityResult tc = duality(dc.codelta);
  if (!maps_equal(duality(identity(dc.codelta)), identity(tc.complex))) {
    r.passed = false;
    r.details.push_back("T(id) != id");
  }
  data["T Delta* X ranks"] = ranks_json(tc.complex);
  return r;
}

CheckResult check_mt(const Context& cx, ojson& data) {
  CheckResult r{"mt"};
  cx.use({"phi", "T", "homology", "smith_normal_form", "chain_complex"});
  const OrientationPair o = OrientationPair::canonical(cx.ks);
  const RKMap p = phi(cx.ks, o, cx.ring);
  if (!is_signed_permutation(p)) {
    r.passed = false;
    r.details.push_back("Phi is not a degreewise bijection of bases");
  }
  if (!is_chain_map(p)) {
    r.passed = false;
    r.details.push_back("Phi does not commute with the differentials");
  }
  const auto hx = homology(chain_complex(cx.ks.X, cx.ring));
  const auto ht = homology(p.source().underlying());
  data["homology"]["X"] = homology_json(hx, cx.ring);
  data["homology"]["T Delta* X"] = homology_json(ht, cx.ring);
  if (nonzero(hx) != nonzero(ht)) {
    r.passed = false;
    r.details.push_back("H(T Delta* X) differs from H(X)");
  }
  return r;
}

CheckResult check_cheq(const Context& cx) {
  CheckResult r{"cheq"};
  cx.use({"e_transform", "verify_e_equivalence", "is_cone_acyclic", "cellular_chain_complex"});
  const DeltaComplexes dc = delta_complexes(cx.ks, cx.ring);
  const RKComplex cells = cellular_chain_complex(cx.ks, OrientationPair::canonical(cx.ks), cx.ring).complex();
  std::vector<Ring> rings{cx.ring};
  if (cx.ring.kind() == Ring::Kind::integers) rings.push_back(Ring::mod(2));
  for (const Ring& ring : rings) {
    const std::string over = " over " + ring.name();
    diagonal_check(r, "Delta* X" + over, verify_e_equivalence(dc.codelta.with_ring(ring), cx.exec), cx.ks.K);
    diagonal_check(r, "Delta X'" + over, verify_e_equivalence(dc.derived.with_ring(ring), cx.exec), cx.ks.K);
    diagonal_check(r, "C(X_K)" + over, verify_e_equivalence(cells.with_ring(ring), cx.exec), cx.ks.K);
  }
  return r;
}

CheckResult check_case_one(const Context& cx, ojson& data) {
  CheckResult r{"case-one"};
  cx.use({"e_transform"});
  const RKComplex c = delta_complexes(cx.ks, cx.ring).codelta;
  const auto step = check_filtration_step(c);
  if (!step) return r;
  const RKComplex piece = label_piece(c, step->S);
  const auto signs = case_one_signs(piece);
  ojson table = ojson::object();
  for (const auto& [m, s] : signs) {
    table[std::to_string(m)] = s;
    if (s == 0) {
      r.passed = false;
      r.details.push_back("degree " + std::to_string(m) + ": generators disagree on the sign");
    }
  }
  for (const auto& [q, m] : diagonal_component(e_transform(piece), step->S).components) {
    const SmithForm snf = smith_normal_form(m, cx.ring);
    const bool iso = m.rows() == m.cols() && snf.rank == m.rows() &&
                     std::all_of(snf.factors.begin(), snf.factors.end(), [&](const Integer& f) { return cx.ring.is_unit(f); });
    if (!iso) {
      r.passed = false;
      r.details.push_back("e(S,S) is not invertible in degree " + std::to_string(q) + " at " + cx.ks.K.name(step->S));
    }
  }
  data["case one"] = {{"S", cx.ks.K.name(step->S)}, {"signs", table}};
  return r;
}

CheckResult check_filtration(const Context& cx) {
  CheckResult r{"filtration"};
  cx.use({"T", "e_transform"});
  const DeltaComplexes dc = delta_complexes(cx.ks, cx.ring);
  for (const auto& [what, c] : {std::pair{"Delta* X", dc.codelta}, std::pair{"Delta X'", dc.derived}}) {
    const auto step = check_filtration_step(c);
    if (!step || step->passed()) continue;
    r.passed = false;
    r.details.push_back(std::string(what) + " filtered at " + cx.ks.K.name(step->S) + ": exact=" +
                        std::to_string(step->exact) + " T-exact=" + std::to_string(step->dual_exact) +
                        " left=" + std::to_string(step->left_square) + " right=" + std::to_string(step->right_square));
  }
  return r;
}

// e_D o T^2 f = f o e_C for f = pi^* : Delta* K -> Delta* X.
CheckResult check_e_naturality(const Context& cx) {
  CheckResult r{"e-naturality"};
  cx.use({"e_transform", "dual_star", "T"});
  const KSpace base = KSpace::identity(cx.ks.K);
  const KSpaceMap pi = validate_kspace_map(cx.ks, base, cx.ks.pi);
  const OrientationPair os{{}, std::vector<int>(cx.ks.X.size(), 1)}, ot{{}, std::vector<int>(cx.ks.K.size(), 1)};
  const RKMap f = dual_star(induced_delta_map(pi, os, ot, cx.ring));
  const RKMap lhs = compose(e_transform(f.target()), duality(duality(f)));
  const RKMap rhs = compose(f, e_transform(f.source()));
  if (!is_chain_map(f) || !maps_equal(lhs, rhs)) {
    r.passed = false;
    r.details.push_back("e o T^2(pi^*) != pi^* o e");
  }
  return r;
}

CheckResult check_dual_cells(const Context& cx) {
  CheckResult r{"dual-cells"};
  cx.use({"dual_cone", "dual_cell"});
  const SimplicialComplex& k = cx.ks.K;
  const KSpace id = KSpace::identity(k);
  const DerivedComplex kp = barycentric_subdivision(k);
  for (SimplexId s = 0; s < k.size(); ++s) {
    const auto cone = dual_cone(kp, s);
    std::set<ChainId> covered;
    for (SimplexId t : k.star(s)) {
      const auto cell = dual_cell(kp, s, t);
      if (cell != dual_block(id, kp, t, s)) {
        r.passed = false;
        r.details.push_back("D(" + k.name(s) + ", " + k.name(t) + ") differs from the block of the identity");
      }
      covered.insert(cell.begin(), cell.end());
    }
    if (covered != std::set<ChainId>(cone.begin(), cone.end())) {
      r.passed = false;
      r.details.push_back("the cells D(" + k.name(s) + ", t) do not cover the cone of " + k.name(s));
    }
  }
  return r;
}

CheckResult check_appendix(const Context& cx) {
  CheckResult r{"appendix"};
  cx.use({"verify_cap_chain_map", "cap_product", "epsilon_sign"});
  const CapReport c = verify_cap_chain_map(cx.ks.K, cx.ring);
  r.passed = c.passed();
  r.details = c.failures;
  return r;
}

ojson cell_records(const BallComplex& bc, const CellularComplex& cc) {
  ojson cells = ojson::array();
  for (const auto& cell : bc.cells) {
    ojson boundary = ojson::array();
    const RKComplex& c = cc.complex();
    const int q = cell.dimension;
    std::size_t col = 0;
    for (; col < c.rank(q); ++col)
      if (cc.key({q, col}) == cell.key) break;
    const Matrix d = c.differential(q);
    for (std::size_t row = 0; row < d.rows(); ++row) {
      const Integer v = d.at(row, col);
      if (v == 0) continue;
      boundary.push_back((v > 0 ? "+" : "") + v.get_str() + ":" + bc.name(cc.key({q - 1, row})));
    }
    cells.push_back({{"id", bc.name(cell.key)}, {"dim", cell.dimension}, {"boundary", boundary}});
  }
  return cells;
}

CheckResult check_ball(const Context& cx, ojson& data, bool with_cells) {
  CheckResult r{"ball"};
  cx.use({"ball_complex", "cellular_chain_complex", "dual_cone", "dual_cell"});
  const BallComplex bc = ball_complex(cx.ks);
  const BallReport br = verify_ball_complex(bc, cx.exec);
  r.passed = br.passed();
  r.details = br.failures;
  const CellularComplex cc = cellular_chain_complex(cx.ks, OrientationPair::canonical(cx.ks), cx.ring);
  for (auto& f : check_boundary_display(cc, bc)) {
    r.passed = false;
    r.details.push_back(std::move(f));
  }
  ojson census = ojson::object();
  for (const auto& [d, n] : br.census) census[std::to_string(d)] = n;
  const std::string records = emit_cells(cx.ks, cx.ring);
  cx.use({"emit_cells"});
  if (static_cast<std::size_t>(std::count(records.begin(), records.end(), '\n')) != bc.cells.size()) {
    r.passed = false;
    r.details.push_back("cell-incidence file does not have one record per cell");
  }
  data["cells"] = census;
  data["euler"] = {{"X_K", br.euler_cells}, {"X'", br.euler_derived}, {"X", br.euler_base}};
  if (with_cells) data["cell list"] = cell_records(bc, cc);
  return r;
}

CheckResult check_fnc(const Context& cx) {
  CheckResult r{"fnc"};
  cx.use({"c_x_map", "verify_fundamental_cycles", "epsilon_sign", "cap_product"});
  const OrientationPair o = OrientationPair::canonical(cx.ks);
  const FundamentalReport f = verify_fundamental_cycles(cx.ks, o, cx.ring);
  r.passed = f.passed();
  r.details = f.failures;
  if (auto d = cap_factorization_defect(cx.ks, o, cx.ring)) {
    r.passed = false;
    r.details.push_back("factorization through the projection: " + *d);
  }
  return r;
}

CheckResult check_che(const Context& cx) {
  CheckResult r{"che"};
  cx.use({"verify_equivalences", "c_x_map", "phi", "T", "e_transform", "is_cone_acyclic"});
  const EquivalenceReport e = verify_equivalences(cx.ks, cx.ring, cx.exec);
  diagonal_check(r, "C_X", e.cap, cx.ks.K);
  diagonal_check(r, "C_X o Phi_X", e.composite, cx.ks.K);
  diagonal_check(r, "e o T(C_X o Phi_X)", e.dual, cx.ks.K);
  return r;
}

CheckResult check_naturality_of(const Document& doc, const Context& cx) {
  CheckResult r{"naturality"};
  cx.use({"induced_ball_map", "phi"});
  std::vector<std::pair<std::string, KSpaceMap>> maps;
  maps.emplace_back("identity", validate_kspace_map(cx.ks, cx.ks, SimplicialMap::identity(cx.ks.X)));
  for (const auto& [name, f] : doc.morphisms) maps.emplace_back(name, f);
  for (const auto& [name, f] : maps) {
    const NaturalityReport n = check_naturality(f, cx.ring);
    if (n.passed()) continue;
    r.passed = false;
    r.details.push_back(name + ": square=" + std::to_string(n.square) + " blocks=" + std::to_string(n.blocks) +
                        " cells=" + std::to_string(n.cells_to_cells));
  }
  return r;
}

using CheckFn = std::function<CheckResult(const Document&, const Context&, ojson&)>;

const std::vector<std::pair<std::string, CheckFn>>& verify_suite() {
  static const std::vector<std::pair<std::string, CheckFn>> suite = {
      {"simplicial", [](const Document&, const Context& c, ojson&) { return check_simplicial(c); }},
      {"differentials", [](const Document&, const Context& c, ojson&) { return check_differentials(c); }},
      {"rk", [](const Document&, const Context& c, ojson&) { return check_rk(c); }},
      {"clem", [](const Document&, const Context& c, ojson&) { return check_clem(c); }},
      {"tensor", [](const Document&, const Context& c, ojson& d) { return check_tensor(c, d); }},
      {"mt", [](const Document&, const Context& c, ojson& d) { return check_mt(c, d); }},
      {"cheq", [](const Document&, const Context& c, ojson&) { return check_cheq(c); }},
      {"case-one", [](const Document&, const Context& c, ojson& d) { return check_case_one(c, d); }},
      {"filtration", [](const Document&, const Context& c, ojson&) { return check_filtration(c); }},
      {"e-naturality", [](const Document&, const Context& c, ojson&) { return check_e_naturality(c); }},
      {"dual-cells", [](const Document&, const Context& c, ojson&) { return check_dual_cells(c); }},
      {"appendix", [](const Document&, const Context& c, ojson&) { return check_appendix(c); }},
      {"ball", [](const Document&, const Context& c, ojson& d) { return check_ball(c, d, false); }},
      {"fnc", [](const Document&, const Context& c, ojson&) { return check_fnc(c); }},
      {"che", [](const Document&, const Context& c, ojson&) { return check_che(c); }},
      {"naturality", [](const Document& doc, const Context& c, ojson&) { return check_naturality_of(doc, c); }},
  };
  return suite;
}

template <class F>
CheckResult timed(F&& f) {
  Timer t;
  CheckResult r;
  try {
    r = f();
  } catch (const Error& e) {
    r.passed = false;
    r.details.push_back(std::string("error: ") + e.what());
  }
  r.seconds = t.seconds();
  return r;
}

std::string group_text(std::size_t betti, const Ring& ring) {
  const std::string base = ring.kind() == Ring::Kind::integers_mod_p ? "(" + ring.name() + ")" : ring.name();
  if (betti == 0) return "";
  return betti == 1 ? ring.name() : base + "^" + std::to_string(betti);
}

ojson kspace_json(const KSpace& ks) {
  auto census = [](const SimplicialComplex& k) {
    ojson out = ojson::array();
    for (int q = 0; q <= k.dimension(); ++q) out.push_back(k.of_dim(q).size());
    return out;
  };
  return {{"X simplices", census(ks.X)}, {"K simplices", census(ks.K)}};
}

ojson tensor_json(const RKComplex& c) {
  ojson out = ojson::object();
  for (int q = c.min_degree(); q <= c.max_degree(); ++q) {
    ojson gens = ojson::array();
    for (const auto& g : c.generators(q)) gens.push_back({{"name", g.name}, {"label", c.K().name(g.label)}});
    ojson entries = ojson::array();
    const Matrix d = c.differential(q);
    const auto targets = c.generators(q - 1);
    for (std::size_t row = 0; row < d.rows(); ++row)
      for (const auto& [col, v] : d.row(row))
        entries.push_back({c.generators(q)[col].name, targets[row].name, v.get_str()});
    out[std::to_string(q)] = {{"rank", c.rank(q)}, {"generators", gens}, {"differential", entries}};
  }
  return out;
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
  static const std::map<std::string, Command, std::less<>> table = {
      {"validate", Command::validate}, {"subdivide", Command::subdivide}, {"ball-complex", Command::ball_complex},
      {"dualize", Command::dualize},   {"homology", Command::homology},   {"verify", Command::verify},
      {"random", Command::random}};
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

std::string command_name(Command c) {
  switch (c) {
    case Command::validate: return "validate";
    case Command::subdivide: return "subdivide";
    case Command::ball_complex: return "ball-complex";
    case Command::dualize: return "dualize";
    case Command::homology: return "homology";
    case Command::verify: return "verify";
    case Command::random: return "random";
  }
  return "?";
}

std::string homology_text(const HomologyGroup& g, const Ring& ring) {
  std::string out = group_text(g.betti, ring);
  for (const auto& t : g.torsion) out += (out.empty() ? "" : " + ") + ("Z/" + t.get_str());
  return out.empty() ? "0" : out;
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : verify_suite()) n.push_back(name);
    return n;
  }();
  return names;
}

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* Report::check(std::string_view name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::string Report::json() const {
  ojson out;
  out["command"] = command;
  out["document"] = document;
  out["ring"] = ring;
  out["passed"] = passed();
  ojson cs = ojson::array();
  for (const auto& c : checks) cs.push_back({{"name", c.name}, {"passed", c.passed}, {"details", c.details}});
  out["checks"] = cs;
  out["data"] = data;
  out["notices"] = notices;
  out["operations"] = operations;
  return out.dump(2) + "\n";
}

std::string Report::text() const {
  std::ostringstream os;
  os << "rkdual " << command << " " << document << " (ring " << ring << ")\n";
  for (const auto& c : checks) {
    char secs[32];
    std::snprintf(secs, sizeof secs, "%8.3fs", c.seconds);
    os << "  " << (c.passed ? "PASS" : "FAIL") << "  " << c.name;
    os << std::string(c.name.size() < 14 ? 14 - c.name.size() : 1, ' ') << secs << "\n";
    for (const auto& d : c.details) os << "        " << d << "\n";
  }
  if (data.contains("homology"))
    for (const auto& [what, table] : data["homology"].items()) {
      os << "  H(" << what << "):";
      for (const auto& [q, g] : table.items()) os << " H" << q << "=" << g.get<std::string>();
      os << "\n";
    }
  for (const auto& [key, value] : data.items()) {
    if (key == "homology" || key == "cell list") continue;
    os << "  " << key << ": " << value.dump() << "\n";
  }
  if (data.contains("cell list"))
    for (const auto& cell : data["cell list"]) {
      os << "  " << cell["id"].get<std::string>() << " dim " << cell["dim"].get<int>() << ":";
      for (const auto& b : cell["boundary"]) os << " " << b.get<std::string>();
      os << "\n";
    }
  for (const auto& n : notices) os << "  note: " << n << "\n";
  os << (passed() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

Report run(const Document& doc, Command command, const Options& options) {
  if (command == Command::random) return run_random(options);
  Report report;
  report.command = command_name(command);
  report.document = doc.name;
  report.ring = options.ring.value_or(doc.ring);
  Ring ring = Ring::integers();
  try {
    ring = Ring::parse(report.ring);
  } catch (const Error& e) {
    throw InputError(std::string("ring: ") + e.what());
  }
  report.ring = ring.name();
  const Context cx{doc.primary(), ring, options.exec, &report.operations};
  cx.use({"validate_kspace", "run"});
  report.data["kspace"] = doc.kspace;
  report.data["sizes"] = kspace_json(cx.ks);

  switch (command) {
    case Command::validate: {
      CheckResult r{"validate"};
      for (const auto& [name, f] : doc.morphisms)
        if (!(f.f.target() == f.target.X)) {
          r.passed = false;
          r.details.push_back(name + ": map does not land in the target K-space");
        }
      report.checks.push_back(r);
      break;
    }
    case Command::subdivide: {
      cx.use({"barycentric_subdivision"});
      report.checks.push_back(timed([&] { return check_simplicial(cx); }));
      const DerivedComplex xp = barycentric_subdivision(cx.ks.X);
      ojson by_dim = ojson::object();
      for (int p = 0; p <= xp.dimension(); ++p) {
        ojson names = ojson::array();
        for (ChainId c : xp.of_dim(p)) names.push_back(xp.name(c));
        by_dim[std::to_string(p)] = names;
      }
      report.data["X' simplices"] = by_dim;
      report.data["euler"] = {{"X'", xp.euler_characteristic()}, {"X", cx.ks.X.euler_characteristic()}};
      break;
    }
    case Command::ball_complex: {
      ojson data;
      report.checks.push_back(timed([&] { return check_ball(cx, data, true); }));
      for (const auto& [k, v] : data.items()) report.data[k] = v;
      break;
    }
    case Command::dualize: {
      cx.use({"delta_complexes", "T"});
      const DeltaComplexes dc = delta_complexes(cx.ks, ring);
      const DualityResult tc = duality(dc.codelta);
      CheckResult r{"differentials"};
      square_check(r, "T Delta* X", tc.complex, cx.exec);
      report.checks.push_back(r);
      report.data["T Delta* X"] = tensor_json(tc.complex);
      break;
    }
    case Command::homology: {
      cx.use({"homology", "smith_normal_form", "chain_complex", "delta_complexes", "T", "cellular_chain_complex"});
      const DeltaComplexes dc = delta_complexes(cx.ks, ring);
      const auto hx = homology(chain_complex(cx.ks.X, ring));
      const std::vector<std::pair<std::string, RKComplex>> others = {
          {"T Delta* X", duality(dc.codelta).complex},
          {"C(X_K)", cellular_chain_complex(cx.ks, OrientationPair::canonical(cx.ks), ring).complex()},
          {"Delta X'", dc.derived}};
      report.data["homology"]["X"] = homology_json(hx, ring);
      report.data["homology"]["Delta* X"] = homology_json(homology(dc.codelta.underlying()), ring);
      CheckResult r{"homology"};
      for (const auto& [what, c] : others) {
        const auto h = homology(c.underlying());
        report.data["homology"][what] = homology_json(h, ring);
        if (nonzero(h) != nonzero(hx)) {
          r.passed = false;
          r.details.push_back("H(" + what + ") differs from H(X)");
        }
      }
      report.checks.push_back(r);
      break;
    }
    case Command::verify: {
      std::set<std::string> wanted(doc.checks.begin(), doc.checks.end());
      for (const auto& w : wanted)
        if (w != "all" && std::find(check_names().begin(), check_names().end(), w) == check_names().end())
          throw InputError("checks: unknown check '" + w + "'");
      const bool all = wanted.empty() || wanted.count("all");
      for (const auto& [name, fn] : verify_suite())
        if (all || wanted.count(name))
          report.checks.push_back(timed([&] { return fn(doc, cx, report.data); }));
      report.notices = kNotices;
      break;
    }
    case Command::random: break;
  }
  return report;
}

std::string emit_cells(const KSpace& ks, const Ring& ring) {
  const BallComplex bc = ball_complex(ks);
  const CellularComplex cc = cellular_chain_complex(ks, OrientationPair::canonical(ks), ring);
  std::string out;
  for (const auto& cell : cell_records(bc, cc)) {
    out += cell["id"].get<std::string>() + " " + std::to_string(cell["dim"].get<int>());
    for (const auto& b : cell["boundary"]) out += " " + b.get<std::string>();
    out += "\n";
  }
  return out;
}

KSpace random_kspace(std::mt19937_64& rng) {
  auto pick = [&](std::uint64_t n) { return static_cast<std::size_t>(rng() % n); };
  const std::vector<std::string> letters = {"a", "b", "c", "d"};
  const std::size_t kind = pick(5);
  const SimplicialComplex k = kind < 4 ? SimplicialComplex::full_simplex({letters.begin(), letters.begin() + kind + 1})
                                       : SimplicialComplex::simplex_boundary({"a", "b", "c"});

  const std::size_t n = 1 + pick(8);
  std::vector<std::string> vertices;
  for (std::size_t i = 0; i < n; ++i) vertices.push_back("x" + std::to_string(i));
  std::vector<std::vector<std::string>> simplices;
  const std::size_t m = 1 + pick(5);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t size = 1 + pick(std::min<std::size_t>(4, n));
    std::vector<std::string> pool = vertices;
    for (std::size_t j = 0; j < size; ++j) std::swap(pool[j], pool[j + pick(pool.size() - j)]);
    simplices.emplace_back(pool.begin(), pool.begin() + static_cast<long>(size));
  }
  const SimplicialComplex x = SimplicialComplex::from_simplices(vertices, simplices);

  for (int attempt = 0; attempt < 20; ++attempt) {
    std::map<std::string, std::string> assignment;
    for (const auto& v : vertices) assignment[v] = k.vertex_name(static_cast<VertexId>(pick(k.num_vertices())));
    try {
      return validate_kspace(x, k, assignment);
    } catch (const InvalidSimplicialMap&) {
    }
  }
  std::map<std::string, std::string> constant;
  for (const auto& v : vertices) constant[v] = "a";
  return validate_kspace(x, k, constant);
}

Report run_random(const Options& options) {
  Report report;
  report.command = "random";
  report.document = "seed " + std::to_string(options.seed) + ", count " + std::to_string(options.count);
  const Ring ring = options.ring ? Ring::parse(*options.ring) : Ring::integers();
  report.ring = ring.name();
  std::mt19937_64 rng(options.seed);
  std::vector<KSpace> samples;
  for (std::size_t i = 0; i < options.count; ++i) samples.push_back(random_kspace(rng));

  const std::vector<std::string> names = {"differentials", "mt", "ball", "cheq", "fnc", "che"};
  std::vector<std::vector<CheckResult>> results(samples.size());
  std::vector<std::set<std::string>> ops(samples.size());
  for_each_index(options.exec, samples.size(), [&](std::size_t i) {
    const Context cx{samples[i], ring, Exec::serial, &ops[i]};
    ojson scratch;
    results[i].push_back(timed([&] { return check_differentials(cx); }));
    results[i].push_back(timed([&] { return check_mt(cx, scratch); }));
    results[i].push_back(timed([&] { return check_ball(cx, scratch, false); }));
    results[i].push_back(timed([&] {
      CheckResult r{"cheq"};
      diagonal_check(r, "Delta* X", verify_e_equivalence(delta_complexes(cx.ks, ring).codelta), cx.ks.K);
      return r;
    }));
    results[i].push_back(timed([&] { return check_fnc(cx); }));
    results[i].push_back(timed([&] { return check_che(cx); }));
  });

  ojson counterexamples = ojson::array();
  for (std::size_t c = 0; c < names.size(); ++c) {
    CheckResult merged{names[c]};
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const CheckResult& r = results[i][c];
      merged.seconds += r.seconds;
      if (r.passed) continue;
      merged.passed = false;
      for (const auto& d : r.details) merged.details.push_back("sample " + std::to_string(i) + ": " + d);
      counterexamples.push_back(
          {{"sample", i}, {"check", names[c]}, {"document", kspace_document(samples[i], "random-" + std::to_string(i))}});
    }
    report.checks.push_back(std::move(merged));
  }
  for (const auto& o : ops) report.operations.insert(o.begin(), o.end());
  std::map<std::string, std::size_t> shapes;
  for (const auto& s : samples) shapes["dim X = " + std::to_string(s.X.dimension()) + ", |K| = " + std::to_string(s.K.size())]++;
  report.data["samples"] = samples.size();
  report.data["shapes"] = shapes;
  report.data["counterexamples"] = counterexamples;
  return report;
}

}  // namespace rkdual
