#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rkdual/subdivision.hpp"

namespace rkdual {

/// Malformed or invalid input. Parse errors carry a 1-based line and column;
/// validation errors carry the path of the offending field instead.
class InputError : public Error {
 public:
  InputError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(what), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A validated input document. Every reference has been resolved and every
/// map checked to be simplicial.
struct Document {
  std::string name;
  std::string ring = "Z";
  std::map<std::string, SimplicialComplex> complexes;
  std::map<std::string, SimplicialMap> maps;
  std::map<std::string, KSpace> kspaces;
  std::map<std::string, KSpaceMap> morphisms;
  std::string kspace;               // the K-space the commands act on
  std::vector<std::string> checks;  // empty = all

  const KSpace& primary() const { return kspaces.at(kspace); }
};

/// {
///   "name": "HEX", "ring": "Z",
///   "complexes": {"X": {"vertices": [...], "simplices": [[...], ...]}, ...},
///   "maps": {"pi": {"from": "X", "to": "K", "vertices": {"x0": "a", ...}}},
///   "kspaces": {"hex": {"map": "pi"}, "circle": {"identity": "K"}},
///   "kspace": "hex",
///   "morphisms": {"f": {"from": "hex", "to": "circle", "map": "pi"}},
///   "checks": ["ball", "mt"]
/// }
/// "kspace" may be omitted when there is exactly one K-space.
Document parse_document(std::string_view text, std::string fallback_name = "document");
Document load_document(const std::filesystem::path& path);

/// Inverse of parse_document for a single K-space (used to print random
/// counterexamples as runnable documents).
std::string kspace_document(const KSpace& ks, const std::string& name);

}  // namespace rkdual
