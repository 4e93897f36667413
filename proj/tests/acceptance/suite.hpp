#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "lorentzqrf/json_io.hpp"

namespace lqrf::acceptance {

struct Criterion {
  int id = 0;
  std::string name;
  bool pass = false;
  // Passes iff value < bound, or value > bound when `above` is set.
  struct Measurement {
    std::string what;
    double value;
    double bound;
    bool above = false;
    bool ok() const;
  };
  std::vector<Measurement> measurements;
  std::vector<std::string> notes;
};

// Criteria 1..10 in order; `only` restricts to the listed ids.
std::vector<Criterion> run_criteria(const std::vector<int>& only = {});
// Criterion 11: runs 1..10 and every CLI scenario twice and compares serialized bytes.
Criterion determinism(const std::string& first_report);

io::Json to_json(const std::vector<Criterion>& cs);
std::string format_line(const Criterion& c);

// Prints one line per criterion; writes selftest_report.json when out_dir is non-empty.
// Returns 0 iff every criterion passes, 2 otherwise.
int run_cli(const std::string& out_dir, std::ostream& out);

}  // namespace lqrf::acceptance
