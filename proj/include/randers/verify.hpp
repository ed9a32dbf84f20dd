#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "randers/io.hpp"
#include "randers/profile.hpp"

namespace randers::verify {

struct Check {
  int id = 0;
  std::string key;
  std::string title;
  bool passed = false;
  double value = 0.0;      // worst observed quantity
  double threshold = 0.0;  // what it is compared against
  std::string relation;    // "<=", ">=", ...
  io::json details;
};

struct Options {
  std::uint64_t seed = 1;
  double tol_ode = 1e-10;
  // Paraboloid wind for the checks that do not pin it.
  double mu = 1.0;
};

using CheckFn = std::function<Check(const Options&)>;

struct Entry {
  int id;
  const char* key;
  CheckFn run;
};

/// The acceptance suite in order. Each check draws its random cases from
/// its own generator seeded with (seed, id), so checks can run alone.
const std::vector<Entry>& suite();

/// Runs every check (or only the ids listed). Exceptions inside a check are
/// turned into failures carrying the message.
std::vector<Check> run(const Options& options, const std::vector<int>& only = {});

/// "PASS 01 clairaut_h  max|m^2 theta' - nu| = ... <= 1e-07"
std::string summary_line(const Check& c);

io::json to_json(const Check& c);

}  // namespace randers::verify
