#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "rkdual/document.hpp"
#include "rkdual/mccrory.hpp"

namespace rkdual {

enum class Command { validate, subdivide, ball_complex, dualize, homology, verify, random };

std::optional<Command> parse_command(std::string_view name);
std::string command_name(Command c);

struct Options {
  std::optional<std::string> ring;  // overrides the document's ring
  std::uint64_t seed = 0;
  std::size_t count = 100;
  Exec exec = Exec::parallel;
};

struct CheckResult {
  CheckResult() = default;
  explicit CheckResult(std::string n) : name(std::move(n)) {}

  std::string name;
  bool passed = true;
  std::vector<std::string> details;  // counterexample data when failing
  double seconds = 0;                // text rendering only
};

struct Report {
  std::string command;
  std::string document;
  std::string ring;
  std::vector<CheckResult> checks;
  nlohmann::ordered_json data = nlohmann::ordered_json::object();  // rank and homology tables
  std::vector<std::string> notices;
  std::set<std::string> operations;  // library operations exercised

  bool passed() const;
  const CheckResult* check(std::string_view name) const;
  /// Machine-readable rendering; contains no timings.
  std::string json() const;
  std::string text() const;
};

/// Names accepted in a document's "checks" list.
const std::vector<std::string>& check_names();

/// Throws InputError for an unknown check name or ring.
Report run(const Document& doc, Command command, const Options& options = {});

/// One line per cell: "id dim sign:boundary_id ...", in ball-complex order.
std::string emit_cells(const KSpace& ks, const Ring& ring);

/// X on at most 8 vertices with 1 to 5 maximal simplices of dimension <= 3,
/// K a simplex on at most 4 vertices or the boundary of a triangle.
KSpace random_kspace(std::mt19937_64& rng);

/// The seeded property sweep behind the `random` command.
Report run_random(const Options& options);

std::string homology_text(const HomologyGroup& g, const Ring& ring);

}  // namespace rkdual
