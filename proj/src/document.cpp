#include "rkdual/document.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace rkdual {

namespace {

using json = nlohmann::json;

struct Position {
  std::size_t line = 1;
  std::size_t column = 1;
};

// nlohmann reports the byte count read when the error was detected.
Position position_of(std::string_view text, std::size_t byte) {
  Position p;
  const std::size_t end = std::min(byte == 0 ? 0 : byte - 1, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
  }
  return p;
}

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw InputError(path + ": " + what); }

const json& field(const json& obj, const std::string& key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path, "missing field '" + key + "'");
  return *it;
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

const json& as_object(const json& v, const std::string& path) {
  if (!v.is_object()) fail(path, "expected an object");
  return v;
}

const json& as_array(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array");
  return v;
}

std::vector<std::string> string_list(const json& v, const std::string& path) {
  std::vector<std::string> out;
  std::size_t i = 0;
  for (const auto& item : as_array(v, path)) out.push_back(as_string(item, path + "[" + std::to_string(i++) + "]"));
  return out;
}

template <class Map>
const typename Map::mapped_type& lookup(const Map& m, const std::string& key, const std::string& path,
                                        const char* kind) {
  auto it = m.find(key);
  if (it == m.end()) fail(path, std::string("unknown ") + kind + " '" + key + "'");
  return it->second;
}

SimplicialComplex parse_complex(const json& v, const std::string& path) {
  as_object(v, path);
  const auto vertices = string_list(field(v, "vertices", path), path + ".vertices");
  std::vector<std::vector<std::string>> simplices;
  const std::string sp = path + ".simplices";
  if (auto it = v.find("simplices"); it != v.end()) {
    std::size_t i = 0;
    for (const auto& s : as_array(*it, sp)) {
      const std::string p = sp + "[" + std::to_string(i++) + "]";
      auto list = string_list(s, p);
      if (list.empty()) fail(p, "empty simplex");
      simplices.push_back(std::move(list));
    }
  }
  try {
    return SimplicialComplex::from_simplices(vertices, simplices);
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

}  // namespace

Document parse_document(std::string_view text, std::string fallback_name) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const Position p = position_of(text, e.byte);
    std::string what = e.what();
    if (auto cut = what.find("syntax error"); cut != std::string::npos) what = what.substr(cut);
    throw InputError("line " + std::to_string(p.line) + ", column " + std::to_string(p.column) + ": " + what,
                     p.line, p.column);
  }
  as_object(root, "document");

  Document doc;
  doc.name = root.contains("name") ? as_string(root["name"], "name") : std::move(fallback_name);
  if (root.contains("ring")) {
    doc.ring = as_string(root["ring"], "ring");
    try {
      Ring::parse(doc.ring);
    } catch (const Error& e) {
      fail("ring", e.what());
    }
  }

  for (const auto& [name, v] : as_object(field(root, "complexes", "document"), "complexes").items())
    doc.complexes.emplace(name, parse_complex(v, "complexes." + name));

  if (root.contains("maps"))
    for (const auto& [name, v] : as_object(root["maps"], "maps").items()) {
      const std::string path = "maps." + name;
      as_object(v, path);
      const auto& from = lookup(doc.complexes, as_string(field(v, "from", path), path + ".from"), path + ".from", "complex");
      const auto& to = lookup(doc.complexes, as_string(field(v, "to", path), path + ".to"), path + ".to", "complex");
      std::map<std::string, std::string> assignment;
      for (const auto& [src, dst] : as_object(field(v, "vertices", path), path + ".vertices").items())
        assignment[src] = as_string(dst, path + ".vertices." + src);
      try {
        doc.maps.emplace(name, SimplicialMap::from_names(from, to, assignment));
      } catch (const Error& e) {
        fail(path, e.what());
      }
    }

  for (const auto& [name, v] : as_object(field(root, "kspaces", "document"), "kspaces").items()) {
    const std::string path = "kspaces." + name;
    as_object(v, path);
    if (v.contains("identity")) {
      const auto& k = lookup(doc.complexes, as_string(v["identity"], path + ".identity"), path + ".identity", "complex");
      doc.kspaces.emplace(name, KSpace::identity(k));
    } else {
      const auto& pi = lookup(doc.maps, as_string(field(v, "map", path), path + ".map"), path + ".map", "map");
      std::map<std::string, std::string> assignment;
      for (VertexId x = 0; x < pi.source().num_vertices(); ++x)
        assignment[pi.source().vertex_name(x)] = pi.target().vertex_name(pi(x));
      doc.kspaces.emplace(name, validate_kspace(pi.source(), pi.target(), assignment));
    }
  }
  if (doc.kspaces.empty()) fail("kspaces", "no K-space defined");

  if (root.contains("kspace")) {
    doc.kspace = as_string(root["kspace"], "kspace");
    lookup(doc.kspaces, doc.kspace, "kspace", "K-space");
  } else if (doc.kspaces.size() == 1) {
    doc.kspace = doc.kspaces.begin()->first;
  } else {
    fail("kspace", "several K-spaces defined; name the one to use");
  }

  if (root.contains("morphisms"))
    for (const auto& [name, v] : as_object(root["morphisms"], "morphisms").items()) {
      const std::string path = "morphisms." + name;
      as_object(v, path);
      const auto& from = lookup(doc.kspaces, as_string(field(v, "from", path), path + ".from"), path + ".from", "K-space");
      const auto& to = lookup(doc.kspaces, as_string(field(v, "to", path), path + ".to"), path + ".to", "K-space");
      const auto& f = lookup(doc.maps, as_string(field(v, "map", path), path + ".map"), path + ".map", "map");
      try {
        doc.morphisms.emplace(name, validate_kspace_map(from, to, f));
      } catch (const Error& e) {
        fail(path, e.what());
      }
    }

  if (root.contains("checks")) doc.checks = string_list(root["checks"], "checks");
  return doc;
}

Document load_document(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str(), path.stem().string());
}

std::string kspace_document(const KSpace& ks, const std::string& name) {
  auto complex = [](const SimplicialComplex& c) {
    json vertices = json::array(), simplices = json::array();
    for (VertexId v = 0; v < c.num_vertices(); ++v) vertices.push_back(c.vertex_name(v));
    for (SimplexId s = 0; s < c.size(); ++s) {
      if (!c.cofaces(s).empty()) continue;
      json simplex = json::array();
      for (VertexId v : c.vertices(s)) simplex.push_back(c.vertex_name(v));
      simplices.push_back(std::move(simplex));
    }
    return nlohmann::ordered_json{{"vertices", vertices}, {"simplices", simplices}};
  };
  nlohmann::ordered_json assignment;
  for (VertexId v = 0; v < ks.X.num_vertices(); ++v) assignment[ks.X.vertex_name(v)] = ks.K.vertex_name(ks.pi(v));
  nlohmann::ordered_json doc;
  doc["name"] = name;
  doc["ring"] = "Z";
  doc["complexes"] = {{"X", complex(ks.X)}, {"K", complex(ks.K)}};
  doc["maps"] = {{"pi", {{"from", "X"}, {"to", "K"}, {"vertices", assignment}}}};
  doc["kspaces"] = {{"main", {{"map", "pi"}}}};
  return doc.dump(2) + "\n";
}

}  // namespace rkdual
