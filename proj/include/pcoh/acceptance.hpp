#pragma once

// The acceptance criteria, runnable from the test binary and from `pcoh verify`.

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace pcoh {

enum class Suite { quick, full, stretch };

std::optional<Suite> parse_suite(const std::string& name);

struct CriterionResult {
  enum class Status { pass, fail, skip };
  unsigned number = 0;
  std::string title;
  Status status = Status::pass;
  std::string detail;
  double seconds = 0;
};

/// Degree bound used for a group of the given order.
unsigned default_degree(std::size_t order, Suite suite);

/// Runs the criteria of the suite in order; quick and full leave out the long
/// stretch group, and the 64#108 check skips unless PCOH_PCP_64_108 names a file.
std::vector<CriterionResult> run_acceptance(Suite suite,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

std::string format_result(const CriterionResult& r);

}  // namespace pcoh
