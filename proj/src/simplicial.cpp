#include "rkdual/simplicial.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace rkdual {

SimplicialComplex::SimplicialComplex() : data_(std::make_shared<const Data>()) {}

SimplicialComplex SimplicialComplex::from_simplices(std::vector<std::string> vertices,
                                                    const std::vector<std::vector<std::string>>& simplices) {
  std::sort(vertices.begin(), vertices.end());
  if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
    throw Error("simplicial complex: duplicate vertex name");

  auto d = std::make_shared<Data>();
  d->vertex_names = vertices;
  auto lookup = [&](const std::string& name) {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), name);
    if (it == vertices.end() || *it != name) throw Error("simplicial complex: unknown vertex '" + name + "'");
    return static_cast<VertexId>(it - vertices.begin());
  };

  std::set<std::vector<VertexId>> all;
  for (VertexId v = 0; v < vertices.size(); ++v) all.insert({v});
  for (const auto& simplex : simplices) {
    if (simplex.empty()) throw Error("simplicial complex: empty simplex");
    std::vector<VertexId> vs;
    for (const auto& name : simplex) vs.push_back(lookup(name));
    std::sort(vs.begin(), vs.end());
    if (std::adjacent_find(vs.begin(), vs.end()) != vs.end())
      throw Error("simplicial complex: repeated vertex in a simplex");
    if (vs.size() > 24) throw Error("simplicial complex: simplex dimension too large");
    const std::uint32_t n = static_cast<std::uint32_t>(vs.size());
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      std::vector<VertexId> face;
      for (std::uint32_t i = 0; i < n; ++i)
        if (mask & (1u << i)) face.push_back(vs[i]);
      all.insert(std::move(face));
    }
  }

  d->simplices.assign(all.begin(), all.end());
  std::stable_sort(d->simplices.begin(), d->simplices.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  const std::size_t n = d->simplices.size();
  for (SimplexId s = 0; s < n; ++s) d->index.emplace(d->simplices[s], s);
  d->vertex_simplex.resize(vertices.size());
  for (VertexId v = 0; v < vertices.size(); ++v) d->vertex_simplex[v] = d->index.at({v});

  d->boundary.resize(n);
  d->cofaces.resize(n);
  d->closure.resize(n);
  d->star.resize(n);
  for (SimplexId s = 0; s < n; ++s) {
    const auto& vs = d->simplices[s];
    if (vs.size() > 1)
      for (std::size_t i = 0; i < vs.size(); ++i) {
        std::vector<VertexId> face = vs;
        face.erase(face.begin() + static_cast<long>(i));
        const SimplexId f = d->index.at(face);
        d->boundary[s].push_back({f, i % 2 == 0 ? 1 : -1});
        d->cofaces[f].push_back(s);
      }
    const std::uint32_t k = static_cast<std::uint32_t>(vs.size());
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
      std::vector<VertexId> face;
      for (std::uint32_t i = 0; i < k; ++i)
        if (mask & (1u << i)) face.push_back(vs[i]);
      d->closure[s].push_back(d->index.at(face));
    }
    std::sort(d->closure[s].begin(), d->closure[s].end());
    for (SimplexId f : d->closure[s]) d->star[f].push_back(s);
  }
  for (auto& c : d->cofaces) std::sort(c.begin(), c.end());
  for (auto& st : d->star) std::sort(st.begin(), st.end());
  return SimplicialComplex(std::move(d));
}

SimplicialComplex SimplicialComplex::full_simplex(const std::vector<std::string>& vertices) {
  return from_simplices(vertices, {vertices});
}

SimplicialComplex SimplicialComplex::simplex_boundary(const std::vector<std::string>& vertices) {
  std::vector<std::vector<std::string>> facets;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    auto f = vertices;
    f.erase(f.begin() + static_cast<long>(i));
    if (!f.empty()) facets.push_back(f);
  }
  return from_simplices(vertices, facets);
}

int SimplicialComplex::dimension() const {
  return data_->simplices.empty() ? -1 : static_cast<int>(data_->simplices.back().size()) - 1;
}

std::optional<VertexId> SimplicialComplex::vertex(std::string_view name) const {
  const auto& names = data_->vertex_names;
  auto it = std::lower_bound(names.begin(), names.end(), name);
  if (it == names.end() || *it != name) return std::nullopt;
  return static_cast<VertexId>(it - names.begin());
}

std::optional<SimplexId> SimplicialComplex::find(std::vector<VertexId> vertices) const {
  std::sort(vertices.begin(), vertices.end());
  auto it = data_->index.find(vertices);
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

bool SimplicialComplex::is_face(SimplexId a, SimplexId b) const {
  const auto& va = data_->simplices.at(a);
  const auto& vb = data_->simplices.at(b);
  return std::includes(vb.begin(), vb.end(), va.begin(), va.end());
}

std::vector<SimplexId> SimplicialComplex::of_dim(int q) const {
  std::vector<SimplexId> out;
  for (SimplexId s = 0; s < size(); ++s)
    if (dim(s) == q) out.push_back(s);
  return out;
}

std::string SimplicialComplex::name(SimplexId s) const {
  std::string out = "{";
  bool first = true;
  for (VertexId v : vertices(s)) {
    if (!first) out += ",";
    out += vertex_name(v);
    first = false;
  }
  return out + "}";
}

long SimplicialComplex::euler_characteristic() const {
  long chi = 0;
  for (SimplexId s = 0; s < size(); ++s) chi += dim(s) % 2 == 0 ? 1 : -1;
  return chi;
}

bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
  if (a.data_ == b.data_) return true;
  return a.data_->vertex_names == b.data_->vertex_names && a.data_->simplices == b.data_->simplices;
}

int permutation_sign(std::vector<std::uint32_t> seq) {
  int sign = 1;
  // selection sort; each swap is one transposition
  for (std::size_t i = 0; i < seq.size(); ++i) {
    std::size_t min = i;
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (seq[j] < seq[min]) min = j;
    if (min != i) {
      std::swap(seq[i], seq[min]);
      sign = -sign;
    }
  }
  return sign;
}

OrientedSimplex OrientedSimplex::from_vertices(const SimplicialComplex& k, const std::vector<std::string>& ordered) {
  std::vector<VertexId> vs;
  for (const auto& name : ordered) {
    auto v = k.vertex(name);
    if (!v) throw Error("oriented simplex: unknown vertex '" + name + "'");
    vs.push_back(*v);
  }
  auto s = k.find(vs);
  if (!s) throw Error("oriented simplex: vertices do not span a simplex");
  if (vs.size() != static_cast<std::size_t>(k.dim(*s) + 1)) throw Error("oriented simplex: repeated vertex");
  return {k, *s, permutation_sign(vs)};
}

int incidence_number(const OrientedSimplex& a, const OrientedSimplex& b) {
  if (!(a.complex == b.complex)) throw Error("incidence number: simplices belong to different complexes");
  for (const auto& f : a.complex.boundary(a.simplex))
    if (f.face == b.simplex) return f.sign * a.sign * b.sign;
  return 0;
}

ChainComplex chain_complex(const SimplicialComplex& x, const Ring& ring, std::span<const int> orientation) {
  if (!orientation.empty() && orientation.size() != x.size())
    throw Error("chain complex: orientation has the wrong length");
  auto sign = [&](SimplexId s) { return orientation.empty() ? 1 : orientation[s]; };
  const int top = x.dimension();
  if (top < 0) return ChainComplex(ring, 0, {}, {});
  std::vector<std::vector<SimplexId>> basis(static_cast<std::size_t>(top + 1));
  std::vector<std::size_t> position(x.size());
  for (SimplexId s = 0; s < x.size(); ++s) {
    auto& level = basis[static_cast<std::size_t>(x.dim(s))];
    position[s] = level.size();
    level.push_back(s);
  }
  std::vector<std::size_t> ranks;
  std::vector<Matrix> diffs;
  for (int q = 0; q <= top; ++q) {
    const auto& cols = basis[static_cast<std::size_t>(q)];
    Matrix d(q == 0 ? 0 : basis[static_cast<std::size_t>(q - 1)].size(), cols.size());
    if (q > 0)
      for (std::size_t j = 0; j < cols.size(); ++j)
        for (const auto& f : x.boundary(cols[j])) d.set(position[f.face], j, f.sign * sign(cols[j]) * sign(f.face));
    ranks.push_back(cols.size());
    diffs.push_back(std::move(d));
  }
  return ChainComplex(ring, 0, std::move(ranks), std::move(diffs));
}

SimplicialMap::SimplicialMap(SimplicialComplex source, SimplicialComplex target, std::vector<VertexId> assignment)
    : source_(std::move(source)), target_(std::move(target)), assignment_(std::move(assignment)) {
  if (assignment_.size() != source_.num_vertices())
    throw InvalidSimplicialMap("simplicial map: assignment does not cover every vertex");
  for (VertexId w : assignment_)
    if (w >= target_.num_vertices()) throw InvalidSimplicialMap("simplicial map: image vertex out of range");
  image_.resize(source_.size());
  for (SimplexId s = 0; s < source_.size(); ++s) {
    std::vector<VertexId> img;
    for (VertexId v : source_.vertices(s)) img.push_back(assignment_[v]);
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    auto t = target_.find(img);
    if (!t) {
      std::string image_names;
      for (VertexId w : img) image_names += (image_names.empty() ? "" : ",") + target_.vertex_name(w);
      throw InvalidSimplicialMap("not simplicial: " + source_.name(s) + " maps to {" + image_names +
                                 "}, which is not a simplex of the target");
    }
    image_[s] = *t;
  }
}

SimplicialMap SimplicialMap::from_names(SimplicialComplex source, SimplicialComplex target,
                                        const std::map<std::string, std::string>& assignment) {
  std::vector<VertexId> a(source.num_vertices());
  for (VertexId v = 0; v < source.num_vertices(); ++v) {
    auto it = assignment.find(source.vertex_name(v));
    if (it == assignment.end())
      throw InvalidSimplicialMap("simplicial map: vertex '" + source.vertex_name(v) + "' is not assigned");
    auto w = target.vertex(it->second);
    if (!w) throw InvalidSimplicialMap("simplicial map: unknown target vertex '" + it->second + "'");
    a[v] = *w;
  }
  for (const auto& [from, to] : assignment)
    if (!source.vertex(from)) throw InvalidSimplicialMap("simplicial map: unknown source vertex '" + from + "'");
  return SimplicialMap(std::move(source), std::move(target), std::move(a));
}

SimplicialMap SimplicialMap::identity(const SimplicialComplex& k) {
  std::vector<VertexId> a(k.num_vertices());
  for (VertexId v = 0; v < a.size(); ++v) a[v] = v;
  return SimplicialMap(k, k, std::move(a));
}

bool SimplicialMap::is_nondegenerate(SimplexId s) const {
  return source_.dim(s) == target_.dim(image_.at(s));
}

int SimplicialMap::push_sign(SimplexId s) const {
  if (!is_nondegenerate(s)) return 0;
  std::vector<std::uint32_t> img;
  for (VertexId v : source_.vertices(s)) img.push_back(assignment_[v]);
  return permutation_sign(std::move(img));
}

SimplicialMap SimplicialMap::after(const SimplicialMap& g) const {
  if (!(g.target_ == source_)) throw InvalidSimplicialMap("composition: complexes do not match");
  std::vector<VertexId> a(g.source_.num_vertices());
  for (VertexId v = 0; v < a.size(); ++v) a[v] = assignment_[g.assignment_[v]];
  return SimplicialMap(g.source_, target_, std::move(a));
}

bool operator==(const SimplicialMap& a, const SimplicialMap& b) {
  return a.source_ == b.source_ && a.target_ == b.target_ && a.assignment_ == b.assignment_;
}

KSpace KSpace::identity(const SimplicialComplex& k) { return {k, k, SimplicialMap::identity(k)}; }

KSpace validate_kspace(const SimplicialComplex& x, const SimplicialComplex& k,
                       const std::map<std::string, std::string>& assignment) {
  return {x, k, SimplicialMap::from_names(x, k, assignment)};
}

DerivedComplex::DerivedComplex(SimplicialComplex base) {
  auto d = std::make_shared<Data>();
  d->base = std::move(base);
  const auto& x = d->base;

  std::vector<std::vector<SimplexId>> chains;
  std::vector<SimplexId> current;
  auto extend = [&](auto&& self) -> void {
    chains.push_back(current);
    for (SimplexId f : x.closure(current.back())) {
      if (f == current.back()) continue;
      current.push_back(f);
      self(self);
      current.pop_back();
    }
  };
  for (SimplexId s = 0; s < x.size(); ++s) {
    current = {s};
    extend(extend);
  }
  std::sort(chains.begin(), chains.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  d->chains = std::move(chains);
  const int top = d->chains.empty() ? -1 : static_cast<int>(d->chains.back().size()) - 1;
  d->by_dim.resize(static_cast<std::size_t>(top + 1));
  d->basis_index.resize(d->chains.size());
  for (ChainId c = 0; c < d->chains.size(); ++c) {
    d->index.emplace(d->chains[c], c);
    auto& level = d->by_dim[d->chains[c].size() - 1];
    d->basis_index[c] = level.size();
    level.push_back(c);
  }

  std::vector<std::string> names;
  for (SimplexId s = 0; s < x.size(); ++s) names.push_back(x.name(s));
  std::vector<std::vector<std::string>> simplices;
  for (const auto& ch : d->chains) {
    std::vector<std::string> vs;
    for (SimplexId s : ch) vs.push_back(x.name(s));
    simplices.push_back(std::move(vs));
  }
  d->prime = SimplicialComplex::from_simplices(names, simplices);
  d->prime_simplex.resize(d->chains.size());
  for (ChainId c = 0; c < d->chains.size(); ++c) {
    std::vector<VertexId> vs;
    for (SimplexId s : d->chains[c]) vs.push_back(*d->prime.vertex(x.name(s)));
    d->prime_simplex[c] = *d->prime.find(vs);
  }
  data_ = std::move(d);
}

int DerivedComplex::dimension() const { return static_cast<int>(data_->by_dim.size()) - 1; }

std::optional<ChainId> DerivedComplex::find(const std::vector<SimplexId>& chain) const {
  auto it = data_->index.find(chain);
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

const std::vector<ChainId>& DerivedComplex::of_dim(int p) const {
  static const std::vector<ChainId> empty;
  if (p < 0 || p > dimension()) return empty;
  return data_->by_dim[static_cast<std::size_t>(p)];
}

Matrix DerivedComplex::boundary(int p) const {
  const auto& cols = of_dim(p);
  Matrix d(p <= 0 ? 0 : of_dim(p - 1).size(), cols.size());
  if (p <= 0) return d;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const auto& ch = chain(cols[j]);
    for (std::size_t i = 0; i < ch.size(); ++i) {
      auto face = ch;
      face.erase(face.begin() + static_cast<long>(i));
      d.add(basis_index(*find(face)), j, i % 2 == 0 ? 1 : -1);
    }
  }
  return d;
}

ChainComplex DerivedComplex::chain_complex(const Ring& ring) const {
  std::vector<std::size_t> ranks;
  std::vector<Matrix> diffs;
  for (int p = 0; p <= dimension(); ++p) {
    ranks.push_back(of_dim(p).size());
    diffs.push_back(boundary(p));
  }
  return ChainComplex(ring, 0, std::move(ranks), std::move(diffs));
}

long DerivedComplex::euler_characteristic() const {
  long chi = 0;
  for (int p = 0; p <= dimension(); ++p) chi += (p % 2 == 0 ? 1 : -1) * static_cast<long>(of_dim(p).size());
  return chi;
}

std::string DerivedComplex::name(ChainId c) const {
  std::string out = "<";
  bool first = true;
  for (SimplexId s : chain(c)) {
    if (!first) out += ",";
    out += base().name(s);
    first = false;
  }
  return out + ">";
}

DerivedComplex barycentric_subdivision(const SimplicialComplex& x) { return DerivedComplex(x); }

SimplicialMap derived_map(const KSpace& ks, const DerivedComplex& xp, const DerivedComplex& kp) {
  if (!(xp.base() == ks.X) || !(kp.base() == ks.K)) throw Error("derived map: subdivisions do not match the K-space");
  std::vector<VertexId> a(xp.prime().num_vertices());
  for (SimplexId s = 0; s < ks.X.size(); ++s) {
    const VertexId from = *xp.prime().vertex(ks.X.name(s));
    a[from] = *kp.prime().vertex(ks.K.name(ks.pi.image(s)));
  }
  return SimplicialMap(xp.prime(), kp.prime(), std::move(a));
}

}  // namespace rkdual
