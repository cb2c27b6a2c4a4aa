// Acceptance gate. Runs the ten pinned criteria against the default
// configuration (lambda = 6, R = 1, m = 1, N = 50, production oracle grid)
// and prints one PASS/FAIL line per criterion with the measured numbers.
// Exit 0 iff every criterion passes. This is the binary CI gates on; the
// doctest suites cover the same machinery piecewise with frozen oracles.

#include <algorithm>
#include <cstdio>
#include <exception>

#include "gamow/acceptance.hpp"
#include "gamow/config.hpp"

int main() {
  try {
    const gamow::RunConfig cfg;  // pinned defaults
    const auto results = gamow::run_all_criteria(cfg);
    bool all_pass = true;
    for (const auto& r : results) {
      std::puts(gamow::format_criterion_line(r).c_str());
      all_pass = all_pass && r.pass;
    }
    std::printf("%s: %zu/%zu criteria passed\n",
                all_pass ? "ACCEPTED" : "REJECTED",
                static_cast<size_t>(
                    std::count_if(results.begin(), results.end(),
                                  [](const auto& r) { return r.pass; })),
                results.size());
    return all_pass ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance run aborted: %s\n", e.what());
    return 1;
  }
}
