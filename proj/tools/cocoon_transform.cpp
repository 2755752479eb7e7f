// cocoon-transform: rewrites secret blocks, side-effect-free functions and
// derive_isef types in one source file.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "cocoon/transform/transformer.hpp"

int main(int argc, char** argv) {
  CLI::App app{"cocoon-transform: expand secret blocks and side-effect-free functions"};
  std::string in_path, out_path, allow_path;
  bool no_line = false;
  app.add_option("input", in_path, "source file")->required()->check(CLI::ExistingFile);
  app.add_option("-o,--out", out_path, "output file (stdout when omitted)");
  app.add_option("--allowlist", allow_path, "allowlist file (built-in list when omitted)")->check(CLI::ExistingFile);
  app.add_flag("--no-line", no_line, "do not emit a #line directive");
  CLI11_PARSE(app, argc, argv);

  std::ifstream in(in_path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string src = buf.str();

  cocoon::Allowlist allow;
  cocoon::transform::TransformOptions opts;
  opts.filename = in_path;
  opts.line_directive = !no_line;
  if (!allow_path.empty()) {
    try {
      allow = cocoon::Allowlist::load(allow_path);
    } catch (const std::exception& e) {
      std::cerr << allow_path << ": error: " << e.what() << "\n";
      return 2;
    }
    opts.allowlist = &allow;
  }

  auto result = cocoon::transform::transform_source(src, opts);
  if (!result.ok()) {
    for (const auto& d : result.diagnostics) std::cerr << cocoon::transform::format_diagnostic(in_path, d) << "\n";
    return 1;
  }
  if (out_path.empty()) {
    std::cout << result.output;
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  out << result.output;
  if (!out) {
    std::cerr << out_path << ": error: cannot write output\n";
    return 2;
  }
  return 0;
}
