#pragma once

#include <string>
#include <vector>

namespace psical::accept {

// One verification row: pass means measured < threshold (and, for criteria
// with a runtime budget, the elapsed time stayed under it).
struct Row {
  int criterion = 0;
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool pass = false;
  double seconds = 0.0;
};

// Criteria are numbered 1..9. Unknown ids raise Config errors.
std::vector<Row> run_criterion(int id);

// Suite names: stft, quantize, transfer, sharp, weights, continuity, all.
std::vector<int> suite_criteria(const std::string& suite);
std::vector<Row> run_suite(const std::string& suite);

std::string format_row(const Row& r);

}  // namespace psical::accept
