#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "rkdual/verifier.hpp"

namespace {

enum Exit { ok = 0, check_failed = 1, input_error = 2 };

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rkdual: build and check chain duality data for simplicial maps"};
  std::string command, input, format = "text", out;
  std::string ring;
  rkdual::Options options;
  bool serial = false;
  app.add_option("command", command, "validate | subdivide | ball-complex | dualize | homology | verify | random")
      ->required();
  app.add_option("input", input, "input document (not needed for random)");
  app.add_option("--ring", ring, "Z, Q or Z/p; overrides the document");
  app.add_option("--seed", options.seed, "random: seed")->capture_default_str();
  app.add_option("--count", options.count, "random: number of K-spaces")->capture_default_str();
  app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  app.add_option("--out", out, "write the report here (ball-complex: the cell-incidence file)");
  app.add_flag("--serial", serial, "use the serial reference kernels");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? ok : input_error;
  }

  const auto cmd = rkdual::parse_command(command);
  if (!cmd) {
    std::cerr << "rkdual: unknown command '" << command << "'\n";
    return input_error;
  }
  if (!ring.empty()) options.ring = ring;
  if (serial) options.exec = rkdual::Exec::serial;

  rkdual::Report report;
  std::string cells;
  try {
    if (*cmd == rkdual::Command::random) {
      report = rkdual::run_random(options);
    } else {
      if (input.empty()) {
        std::cerr << "rkdual: " << command << " needs an input document\n";
        return input_error;
      }
      const rkdual::Document doc = rkdual::load_document(input);
      report = rkdual::run(doc, *cmd, options);
      if (*cmd == rkdual::Command::ball_complex)
        cells = rkdual::emit_cells(doc.primary(), rkdual::Ring::parse(report.ring));
    }
  } catch (const rkdual::InputError& e) {
    std::cerr << "rkdual: " << input << ": " << e.what() << "\n";
    return input_error;
  } catch (const rkdual::Error& e) {
    std::cerr << "rkdual: " << e.what() << "\n";
    return check_failed;
  }

  const std::string rendered = format == "json" ? report.json() : report.text();
  if (*cmd == rkdual::Command::ball_complex && !out.empty()) {
    if (!write_file(out, cells)) {
      std::cerr << "rkdual: cannot write " << out << "\n";
      return input_error;
    }
    std::cout << rendered;
  } else if (!out.empty()) {
    if (!write_file(out, rendered)) {
      std::cerr << "rkdual: cannot write " << out << "\n";
      return input_error;
    }
  } else {
    std::cout << rendered;
  }
  return report.passed() ? ok : check_failed;
}
