#include "rkdual/mccrory.hpp"

#include <algorithm>
#include <sstream>

namespace rkdual {

namespace {

int lex_incidence(const SimplicialComplex& k, SimplexId s, SimplexId face) {
  for (const auto& f : k.boundary(s))
    if (f.face == face) return f.sign;
  return 0;
}

int sign_of(std::span<const int> orientation, SimplexId s) { return orientation.empty() ? 1 : orientation[s]; }

int power(int n) { return n % 2 == 0 ? 1 : -1; }

// Top flags of D(s, t): chains t = Q0 > ... > Qq = s.
std::vector<ChainId> flags(const DerivedComplex& kp, SimplexId sigma, SimplexId tau) {
  std::vector<ChainId> out;
  const int q = kp.base().dim(tau) - kp.base().dim(sigma);
  if (q < 0) return out;
  for (ChainId c : kp.of_dim(q))
    if (kp.chain(c).front() == tau && kp.chain(c).back() == sigma) out.push_back(c);
  return out;
}

// d^i applied to a chain.
Chain face_map(const DerivedComplex& kp, const Chain& z, std::size_t i) {
  Chain out;
  for (const auto& [c, v] : z) {
    std::vector<SimplexId> f = kp.chain(c);
    f.erase(f.begin() + static_cast<long>(i));
    out[*kp.find(f)] += v;
  }
  std::erase_if(out, [](const auto& kv) { return sgn(kv.second) == 0; });
  return out;
}

void accumulate(Chain& into, const Chain& z, const Integer& coef) {
  for (const auto& [c, v] : z) into[c] += coef * v;
  std::erase_if(into, [](const auto& kv) { return sgn(kv.second) == 0; });
}

std::string describe(const SimplicialComplex& k, SimplexId tau, SimplexId sigma, std::size_t i) {
  std::ostringstream os;
  os << "t = " << k.name(tau) << ", s = " << k.name(sigma) << ", i = " << i;
  return os.str();
}

}  // namespace

int epsilon_sign(const DerivedComplex& d, ChainId q, int first_sign, int last_sign) {
  const auto& chain = d.chain(q);
  int e = first_sign * last_sign;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    const int inc = lex_incidence(d.base(), chain[i], chain[i + 1]);
    if (inc == 0)
      throw Error("eps: " + d.base().name(chain[i + 1]) + " is not a codimension-one face of " +
                  d.base().name(chain[i]));
    e *= inc;
  }
  return e;
}

Chain cap_product(const DerivedComplex& kp, SimplexId tau, SimplexId sigma, std::span<const int> orientation) {
  Chain out;
  const int sign = power(kp.base().dim(sigma));
  for (ChainId q : flags(kp, sigma, tau))
    out[q] = sign * epsilon_sign(kp, q, sign_of(orientation, tau), sign_of(orientation, sigma));
  return out;
}

CapReport verify_cap_chain_map(const SimplicialComplex& k, const Ring& ring, std::span<const int> orientation) {
  CapReport report;
  const DerivedComplex kp = barycentric_subdivision(k);
  const RKComplex dk = delta_complex(KSpace::identity(k), ring, orientation);
  const TensorComplex r = tensor_R(dk, dual_star(dk));
  const auto& x = r.complex;
  auto fail = [&](bool& flag, const std::string& what) {
    flag = false;
    report.failures.push_back(what);
  };

  // full matrices
  std::map<int, Matrix> c;
  for (int n = x.min_degree() - 1; n <= x.max_degree(); ++n) {
    Matrix m(kp.of_dim(n).size(), x.rank(n));
    for (std::size_t col = 0; col < x.rank(n); ++col) {
      const auto [t, s] = r.at({n, col});
      const SimplexId tau = k.of_dim(t.degree).at(t.index);
      const SimplexId sigma = k.of_dim(-s.degree).at(s.index);
      for (const auto& [q, v] : cap_product(kp, tau, sigma, orientation)) m.set(kp.basis_index(q), col, v);
    }
    c[n] = std::move(m);
  }
  for (int n = x.min_degree(); n <= x.max_degree(); ++n) {
    const Matrix lhs = multiply(kp.boundary(n), c[n]);
    const Matrix rhs = multiply(c[n - 1], x.differential(n));
    if (!lhs.equals(rhs, ring)) fail(report.full_identity, "d c != c d in degree " + std::to_string(n));
  }

  // face-wise identities
  auto o = [&](SimplexId s) { return sign_of(orientation, s); };
  for (SimplexId tau = 0; tau < k.size(); ++tau)
    for (SimplexId sigma : k.closure(tau)) {
      const int p = k.dim(tau) - k.dim(sigma);
      if (p < 1) continue;
      const Chain z = cap_product(kp, tau, sigma, orientation);
      report.flags_checked += z.size();

      Chain expected_first;
      for (const auto& f : k.boundary(tau))
        accumulate(expected_first, cap_product(kp, f.face, sigma, orientation), o(tau) * o(f.face) * f.sign);
      if (face_map(kp, z, 0) != expected_first) fail(report.first_face, "first face: " + describe(k, tau, sigma, 0));

      // c(t (x) ds*), ds* = (-1)^{dim s + 1} sum [r, s] r*
      Chain cod;
      for (SimplexId rho : k.cofaces(sigma)) {
        if (!k.is_face(rho, tau)) continue;
        accumulate(cod, cap_product(kp, tau, rho, orientation),
                   power(k.dim(sigma) + 1) * o(rho) * o(sigma) * lex_incidence(k, rho, sigma));
      }
      Chain lhs = face_map(kp, z, static_cast<std::size_t>(p));
      for (auto& [q, v] : lhs) v *= power(p);
      for (auto& [q, v] : cod) v *= power(k.dim(tau));
      if (lhs != cod) fail(report.last_face, "last face: " + describe(k, tau, sigma, static_cast<std::size_t>(p)));

      for (std::size_t i = 1; i < static_cast<std::size_t>(p); ++i) {
        if (!face_map(kp, z, i).empty()) fail(report.middle_faces, "middle face: " + describe(k, tau, sigma, i));
        std::map<ChainId, std::vector<ChainId>> groups;
        for (const auto& [q, v] : z) {
          std::vector<SimplexId> f = kp.chain(q);
          f.erase(f.begin() + static_cast<long>(i));
          groups[*kp.find(f)].push_back(q);
        }
        for (const auto& [face, members] : groups) {
          const bool ok = members.size() == 2 && sgn(z.at(members[0])) == -sgn(z.at(members[1]));
          if (!ok) fail(report.pairing, "pairing: " + describe(k, tau, sigma, i) + " at " + kp.name(face));
        }
      }
    }
  return report;
}

RKMap c_x_map(const KSpace& ks, const OrientationPair& o, const Ring& ring) {
  const CellularComplex cx = cellular_chain_complex(ks, o, ring);
  const DeltaComplexes dc = delta_complexes(ks, ring, o.x_sign);
  const DerivedComplex& xp = dc.subdivision;
  std::map<int, Matrix> comps;
  for (int n = cx.complex().min_degree(); n <= cx.complex().max_degree(); ++n) {
    Matrix m(dc.derived.rank(n), cx.complex().rank(n));
    for (std::size_t col = 0; col < cx.complex().rank(n); ++col) {
      const auto [t, s] = cx.key({n, col});
      const int ds = ks.K.dim(s);
      for (ChainId q : dual_block(ks, xp, t, s)) {
        if (xp.dim(q) != n) continue;
        const SimplexId last = xp.chain(q).back();
        const int last_sign = ks.pi.push_sign(last) * o.k_sign[s];
        m.set(xp.basis_index(q), col, power(ds) * epsilon_sign(xp, q, o.x_sign[t], last_sign));
      }
    }
    comps[n] = std::move(m);
  }
  return RKMap(cx.complex(), dc.derived, 0, std::move(comps));
}

std::optional<std::string> cap_factorization_defect(const KSpace& ks, const OrientationPair& o, const Ring& ring) {
  const RKComplex dx = delta_complex(ks, ring, o.x_sign);
  const RKComplex dk = dual_star(delta_complex(KSpace::identity(ks.K), ring, o.k_sign));
  const TensorComplex r = tensor_R(dx, dk);
  const CellularComplex cx = cellular_chain_complex(ks, o, ring);
  const RKMap projection = pi_projection(r, cx.tensor);
  const RKMap cap = c_x_map(ks, o, ring);
  const DerivedComplex xp = barycentric_subdivision(ks.X);

  // pi^* s* = sum over S with pi(S) = s, dim S = dim s of s*(pi_* S) S*
  std::vector<std::vector<std::pair<SimplexId, int>>> pullback(ks.K.size());
  for (SimplexId S = 0; S < ks.X.size(); ++S) {
    const int push = ks.pi.push_sign(S);
    if (push != 0) pullback[ks.pi.image(S)].push_back({S, o.x_sign[S] * push * o.k_sign[ks.pi.image(S)]});
  }
  for (int n = r.complex.min_degree(); n <= r.complex.max_degree(); ++n) {
    Matrix lhs(xp.of_dim(n).size(), r.complex.rank(n));
    for (std::size_t col = 0; col < r.complex.rank(n); ++col) {
      const auto [t, s] = r.at({n, col});
      const SimplexId T = ks.X.of_dim(t.degree).at(t.index);
      const SimplexId sigma = ks.K.of_dim(-s.degree).at(s.index);
      for (const auto& [S, coef] : pullback[sigma])
        for (const auto& [q, v] : cap_product(xp, T, S, o.x_sign)) lhs.add(xp.basis_index(q), col, coef * v);
    }
    const Matrix rhs = multiply(cap.component(n), projection.component(n));
    if (!lhs.equals(rhs, ring)) return "factorization fails in degree " + std::to_string(n);
  }
  return std::nullopt;
}

FundamentalReport verify_fundamental_cycles(const KSpace& ks, const OrientationPair& o, const Ring& ring) {
  FundamentalReport report;
  const BallComplex bc = ball_complex(ks);
  const CellularComplex cx = cellular_chain_complex(ks, o, ring);
  const RKMap cap = c_x_map(ks, o, ring);
  const DerivedComplex& xp = bc.xp;
  for (int n = cx.complex().min_degree(); n <= cx.complex().max_degree(); ++n) {
    const Matrix m = cap.component(n).transpose();
    const Matrix d = xp.boundary(n);
    for (std::size_t col = 0; col < cx.complex().rank(n); ++col) {
      const DualCell& cell = bc.cell(cx.key({n, col}));
      const std::string name = bc.name(cell.key);
      ++report.cells;
      std::vector<ChainId> tops, support;
      for (ChainId q : cell.simplices)
        if (xp.dim(q) == n) tops.push_back(q);
      for (const auto& [row, v] : m.row(col)) {
        support.push_back(xp.of_dim(n).at(row));
        if (abs(v) != 1) report.failures.push_back(name + ": coefficient other than +-1");
      }
      std::sort(support.begin(), support.end());
      if (support != tops) report.failures.push_back(name + ": support is not the set of top simplices");

      std::vector<ChainId> boundary = cell.inner_boundary;
      boundary.insert(boundary.end(), cell.outer_boundary.begin(), cell.outer_boundary.end());
      std::sort(boundary.begin(), boundary.end());
      Matrix z(d.cols(), 1);
      for (const auto& [row, v] : m.row(col)) z.set(row, 0, v);
      const Matrix dz = multiply(d, z);
      for (std::size_t r = 0; r < dz.rows(); ++r)
        if (!dz.row(r).empty() && !std::binary_search(boundary.begin(), boundary.end(), xp.of_dim(n - 1).at(r)))
          report.failures.push_back(name + ": boundary leaves the inner and outer boundary");
    }
  }
  return report;
}

EquivalenceReport verify_equivalences(const KSpace& ks, const Ring& ring, Exec exec) {
  const OrientationPair o = OrientationPair::canonical(ks);
  const RKMap cap = c_x_map(ks, o, ring);
  const RKMap composite = compose(cap, phi(ks, o, ring));
  const RKComplex codelta = dual_star(delta_complex(ks, ring, o.x_sign));
  const RKMap dual = compose(e_transform(codelta), duality(composite));
  return {check_diagonal_equivalence(cap, exec), check_diagonal_equivalence(composite, exec),
          check_diagonal_equivalence(dual, exec)};
}

}  // namespace rkdual
