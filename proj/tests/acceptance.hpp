#pragma once

#include <functional>
#include <string>
#include <vector>

namespace psq::acceptance {

struct Result {
  int id;
  bool pass;
  bool skipped;
  std::string detail;
  double seconds;
};

// Runs criteria 1..11. The slow ones (2, 9, 10) are skipped unless slow is
// set. on_result is called as each criterion finishes.
std::vector<Result> run(bool slow, std::function<void(Result const &)> const &on_result = {});

std::string line(Result const &r);

} // namespace psq::acceptance
