// Runs the acceptance checks and prints one PASS/FAIL line per check.
#include <cstdio>
#include <exception>

#include <CLI11.hpp>

#include "randers/io.hpp"
#include "randers/verify.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Randers surface engine acceptance run"};
  randers::verify::Options options;
  app.add_option("--seed", options.seed, "seed for the randomized cases");
  app.add_option("--tol-ode", options.tol_ode, "integrator tolerance")->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  std::printf("randers %s acceptance, seed %llu, tol_ode %s\n", randers::io::engine_version(),
              static_cast<unsigned long long>(options.seed), randers::io::fmt(options.tol_ode).c_str());
  const auto checks = randers::verify::run(options);
  int failed = 0;
  for (const auto& c : checks) {
    std::printf("%s\n", randers::verify::summary_line(c).c_str());
    if (!c.passed) ++failed;
  }
  std::printf("%zu/%zu passed\n", checks.size() - failed, checks.size());
  return failed == 0 ? 0 : 3;
}
