#pragma once

#include <string>
#include <vector>

namespace sfr {

struct SelfTestResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Quick invariant checks over the whole pipeline; used by `sfrprof selftest`.
std::vector<SelfTestResult> run_selftest();

}  // namespace sfr
