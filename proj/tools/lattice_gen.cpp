// lattice-gen: writes the label header for a set of base policies.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "cocoon/lattice.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Generate the label family header for a set of base policies"};
  std::string policies;
  std::string out;
  std::string ns = "lat";
  std::size_t max_policies = cocoon::lattice::kDefaultMaxPolicies;
  app.add_option("--policies,-p", policies, "Comma-separated base policy names, e.g. a,b")->required();
  app.add_option("--out,-o", out, "Output header path (stdout when omitted)");
  app.add_option("--namespace", ns, "Namespace for label types");
  app.add_option("--max-policies", max_policies, "Upper bound on the number of base policies");
  CLI11_PARSE(app, argc, argv);

  try {
    auto family = cocoon::lattice::generate_lattice(cocoon::lattice::split_policy_list(policies), max_policies);
    std::string text = cocoon::lattice::emit_header(family, ns);
    if (out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(out, std::ios::binary);
      if (!f) {
        std::cerr << "lattice-gen: cannot write " << out << "\n";
        return 1;
      }
      f << text;
    }
  } catch (const cocoon::lattice::LatticeError& e) {
    std::cerr << "lattice-gen: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
