#include <iostream>

#include "pcoh/acceptance.hpp"

int main() {
  bool failed = false;
  pcoh::run_acceptance(pcoh::Suite::stretch, [&](const pcoh::CriterionResult& r) {
    std::cout << pcoh::format_result(r) << std::endl;
    failed = failed || r.status == pcoh::CriterionResult::Status::fail;
  });
  return failed ? 1 : 0;
}
