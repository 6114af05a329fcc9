// Acceptance suite: one line per criterion, exit status 0 iff all pass.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "rkdual/verifier.hpp"

using namespace rkdual;

namespace {

constexpr double kTimeBudgetSeconds = 30.0;  // criterion 1
constexpr std::uint64_t kRandomSeed = 0;
constexpr std::size_t kRandomCount = 100;

const std::vector<std::string> kCorpus = {"pt.json", "edge.json", "tri.json", "circ3.json", "hex.json", "id2.json"};

struct Doc {
  std::string name;
  KSpace ks;
  Document doc;
};

std::vector<Doc> load_corpus() {
  std::vector<Doc> out;
  for (const auto& f : kCorpus) {
    Document d = load_document(std::string(RKDUAL_CORPUS_DIR) + "/" + f);
    out.push_back({d.name, d.primary(), d});
  }
  return out;
}

const Doc& find(const std::vector<Doc>& docs, const std::string& name) {
  for (const auto& d : docs)
    if (d.name == name) return d;
  throw Error("corpus document " + name + " missing");
}

struct Verdict {
  bool passed = true;
  std::string note;
  void fail(const std::string& why) {
    if (passed) note = why;
    passed = false;
  }
};

void print(int n, const std::string& title, const Verdict& v) {
  std::cout << "criterion " << n << " " << (v.passed ? "PASS" : "FAIL") << "  " << title;
  if (!v.note.empty()) std::cout << " (" << v.note << ")";
  std::cout << "\n";
}

std::map<int, HomologyGroup> nonzero(const std::map<int, HomologyGroup>& h) {
  std::map<int, HomologyGroup> out;
  for (const auto& [q, g] : h)
    if (!g.is_zero()) out.emplace(q, g);
  return out;
}

bool signed_permutation(const Matrix& m) {
  if (m.rows() != m.cols()) return false;
  std::vector<int> cols(m.cols(), 0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (m.row(r).size() != 1) return false;
    const auto& [c, v] = *m.row(r).begin();
    if (abs(v) != 1) return false;
    ++cols[c];
  }
  return std::all_of(cols.begin(), cols.end(), [](int c) { return c == 1; });
}

std::optional<std::string> square_defect(const KSpace& ks) {
  const Ring z = Ring::integers();
  const DeltaComplexes dc = delta_complexes(ks, z);
  const CellularComplex cx = cellular_chain_complex(ks, OrientationPair::canonical(ks), z);
  const DualityResult t = duality(dc.codelta);
  const RKComplex t2 = duality(t.complex).complex;
  const std::vector<std::pair<const char*, const RKComplex*>> all = {
      {"Delta* X", &dc.codelta}, {"Delta X", &dc.delta}, {"Delta X'", &dc.derived},
      {"C(X_K)", &cx.complex()}, {"TC", &t.complex},     {"T^2 C", &t2}};
  for (const auto& [name, c] : all)
    if (auto q = c->first_nonzero_square()) return std::string(name) + " degree " + std::to_string(*q);
  return std::nullopt;
}

Verdict criterion1(const std::vector<Doc>& corpus) {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  for (const auto& d : corpus)
    if (auto bad = square_defect(d.ks)) v.fail(d.name + ": " + *bad);
  std::mt19937_64 rng(kRandomSeed);
  for (std::size_t i = 0; i < kRandomCount; ++i) {
    const KSpace ks = random_kspace(rng);
    if (auto bad = square_defect(ks)) v.fail("random " + std::to_string(i) + ": " + *bad);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs >= kTimeBudgetSeconds) v.fail("took " + std::to_string(secs) + " s");
  if (v.passed) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "6 documents + %zu random, %.2f s of %.0f s", kRandomCount, secs, kTimeBudgetSeconds);
    v.note = buf;
  }
  return v;
}

Verdict criterion2(const std::vector<Doc>& corpus) {
  Verdict v;
  const Ring z = Ring::integers();
  for (const auto& d : corpus) {
    const RKMap p = phi(d.ks, OrientationPair::canonical(d.ks), z);
    for (int q = p.source().min_degree(); q <= p.source().max_degree(); ++q)
      if (!signed_permutation(p.component(q))) v.fail(d.name + ": Phi not a bijection in degree " + std::to_string(q));
    if (!is_chain_map(p)) v.fail(d.name + ": Phi not a chain map");
    const auto ht = nonzero(homology(p.source().underlying()));
    if (ht != nonzero(homology(chain_complex(d.ks.X, z)))) v.fail(d.name + ": H(T Delta* X) != H(X)");
  }
  const HomologyGroup Z{1, {}};
  const std::map<int, HomologyGroup> circle = {{0, Z}, {1, Z}}, point = {{0, Z}};
  auto th = [&](const std::string& name) {
    return nonzero(homology(duality(delta_complexes(find(corpus, name).ks, z).codelta).complex.underlying()));
  };
  if (th("HEX") != circle) v.fail("HEX is not Z,Z");
  if (th("ID2") != point) v.fail("ID2 is not Z,0,0");
  if (th("CIRC3") != circle) v.fail("CIRC3 is not Z,Z");
  return v;
}

Verdict criterion3(const std::vector<Doc>& corpus) {
  Verdict v;
  for (const auto& d : corpus) {
    const DeltaComplexes dc = delta_complexes(d.ks, Ring::integers());
    const RKComplex cx = cellular_chain_complex(d.ks, OrientationPair::canonical(d.ks), Ring::integers()).complex();
    const std::vector<std::pair<std::string, RKComplex>> all = {
        {"Delta* X", dc.codelta}, {"Delta X'", dc.derived}, {"C(X_K)", cx}};
    for (const auto& [name, c] : all)
      for (const Ring& r : {Ring::integers(), Ring::mod(2)})
        if (!verify_e_equivalence(c.with_ring(r), Exec::parallel).passed())
          v.fail(d.name + ": " + name + " over " + r.name());
  }
  return v;
}

Verdict criterion4() {
  Verdict v;
  const std::vector<std::pair<std::string, SimplicialComplex>> ks = {
      {"D1", SimplicialComplex::full_simplex({"a", "b"})},
      {"D2", SimplicialComplex::full_simplex({"a", "b", "c"})},
      {"D3", SimplicialComplex::full_simplex({"a", "b", "c", "d"})},
      {"boundary D2", SimplicialComplex::simplex_boundary({"a", "b", "c"})}};
  std::size_t flags = 0;
  for (const auto& [name, k] : ks) {
    const CapReport r = verify_cap_chain_map(k, Ring::integers());
    flags += r.flags_checked;
    if (!r.full_identity) v.fail(name + ": chain-map identity");
    if (!r.first_face) v.fail(name + ": first face");
    if (!r.last_face) v.fail(name + ": last face");
    if (!r.middle_faces) v.fail(name + ": middle faces");
    if (!r.pairing) v.fail(name + ": pairing");
  }
  if (v.passed) v.note = std::to_string(flags) + " flags paired";
  return v;
}

Verdict criterion5(const std::vector<Doc>& corpus) {
  Verdict v;
  for (const auto& d : corpus) {
    const FundamentalReport r = verify_fundamental_cycles(d.ks, OrientationPair::canonical(d.ks), Ring::integers());
    if (!r.passed()) v.fail(d.name + ": " + r.failures.front());
  }
  return v;
}

Verdict criterion6(const std::vector<Doc>& corpus) {
  Verdict v;
  for (const auto& d : corpus) {
    const EquivalenceReport r = verify_equivalences(d.ks, Ring::integers(), Exec::parallel);
    if (!r.cap.passed()) v.fail(d.name + ": C_X");
    if (!r.composite.passed()) v.fail(d.name + ": C_X Phi_X");
    if (!r.dual.passed()) v.fail(d.name + ": e T(C_X Phi_X)");
  }
  return v;
}

Verdict criterion7(const std::vector<Doc>& corpus) {
  Verdict v;
  for (const auto& d : corpus) {
    const BallComplex bc = ball_complex(d.ks);
    for (const auto& cell : bc.cells)
      if (cell.dimension != d.ks.X.dim(cell.key.T) - d.ks.K.dim(cell.key.sigma))
        v.fail(d.name + ": dimension of " + bc.name(cell.key));
    // every X' simplex is interior to exactly one cell
    std::vector<int> owners(bc.xp.size(), 0);
    for (const auto& cell : bc.cells) {
      std::set<ChainId> boundary(cell.inner_boundary.begin(), cell.inner_boundary.end());
      boundary.insert(cell.outer_boundary.begin(), cell.outer_boundary.end());
      for (ChainId q : cell.simplices)
        if (!boundary.count(q)) ++owners[q];
    }
    if (!std::all_of(owners.begin(), owners.end(), [](int n) { return n == 1; })) v.fail(d.name + ": partition");
    const BallReport r = verify_ball_complex(bc);
    if (!r.passed()) v.fail(d.name + ": " + r.failures.front());
    if (r.euler_cells != r.euler_derived || r.euler_derived != r.euler_base) v.fail(d.name + ": Euler characteristics");
  }
  const std::vector<std::pair<std::string, std::map<int, std::size_t>>> expected = {
      {"EDGE", {{0, 3}, {1, 2}}}, {"ID2", {{0, 7}, {1, 9}, {2, 3}}}, {"HEX", {{0, 12}, {1, 12}}}};
  for (const auto& [name, census] : expected)
    if (verify_ball_complex(ball_complex(find(corpus, name).ks)).census != census) v.fail(name + " census");
  return v;
}

Verdict criterion8(const std::vector<Doc>& corpus) {
  Verdict v;
  const Doc& hex = find(corpus, "HEX");
  const KSpaceMap f = validate_kspace_map(hex.ks, find(corpus, "CIRC3").ks, hex.ks.pi);
  if (!check_naturality(f, Ring::integers()).square) v.fail("HEX -> CIRC3");
  for (const auto& d : corpus) {
    const KSpaceMap id = validate_kspace_map(d.ks, d.ks, SimplicialMap::identity(d.ks.X));
    if (!check_naturality(id, Ring::integers()).square) v.fail(d.name + " identity");
  }
  return v;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Verdict criterion9() {
  Verdict v;
  for (const auto& f : kCorpus) {
    std::string outs[2];
    for (int run = 0; run < 2; ++run) {
      const std::string out = std::string(RKDUAL_TEMP_DIR) + "/acceptance_run" + std::to_string(run) + ".json";
      const std::string cmd = std::string(RKDUAL_TOOL) + " verify " + RKDUAL_CORPUS_DIR + "/" + f +
                              " --format json --out " + out;
      if (std::system(cmd.c_str()) != 0) v.fail(f + ": tool exited nonzero");
      outs[run] = slurp(out);
    }
    if (outs[0].empty() || outs[0] != outs[1]) v.fail(f + ": reports differ");
  }
  return v;
}

}  // namespace

int main() {
  std::vector<Doc> corpus;
  try {
    corpus = load_corpus();
  } catch (const std::exception& e) {
    std::cout << "cannot load corpus: " << e.what() << "\n";
    return 1;
  }
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"d o d = 0 on all six complexes, corpus and random K-spaces", [&] { return criterion1(corpus); }},
      {"Phi is a bijective chain map and H(T Delta* X) = H(X)", [&] { return criterion2(corpus); }},
      {"e has acyclic diagonal cones over Z and Z/2", [&] { return criterion3(corpus); }},
      {"cap product identities and sign-reversing pairing", [] { return criterion4(); }},
      {"fundamental cycles of the dual cells", [&] { return criterion5(corpus); }},
      {"C_X, C_X Phi_X and e T(C_X Phi_X) are equivalences", [&] { return criterion6(corpus); }},
      {"ball complex dimensions, partition, Euler characteristic, censuses", [&] { return criterion7(corpus); }},
      {"naturality square", [&] { return criterion8(corpus); }},
      {"byte-identical verify reports", [] { return criterion9(); }},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.fail(std::string("error: ") + e.what());
    }
    print(static_cast<int>(i + 1), criteria[i].first, v);
    all = all && v.passed;
  }
  std::cout << (all ? "all criteria pass" : "some criteria fail") << "\n";
  return all ? 0 : 1;
}
