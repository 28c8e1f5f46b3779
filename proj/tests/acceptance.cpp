// Acceptance run: one PASS/FAIL line per criterion, followed by its checks.
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "centrobody/lab.hpp"
#include "centrobody/report.hpp"

int main(int argc, char** argv) {
  centrobody::LabConfig cfg;
  std::vector<int> only;
  std::string summary;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--summary" && i + 1 < argc)
      summary = argv[++i];
    else
      only.push_back(std::atoi(argv[i]));
  }
  const auto results = centrobody::verify_suite(cfg, only);
  int failed = 0;
  for (const auto& r : results) {
    std::printf("%s criterion %d: %s (%.1f s)\n", r.passed ? "PASS" : "FAIL", r.index, r.title.c_str(), r.seconds);
    for (const auto& c : r.checks)
      std::printf("    [%s] %s: %.6e (bound %.3e)\n", c.passed ? "ok" : "FAIL", c.name.c_str(), c.value, c.bound);
    failed += !r.passed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(results.size()) - failed, results.size());
  if (!summary.empty()) centrobody::report::write_text(summary, centrobody::report::dump(centrobody::to_json(results)));
  return failed ? 1 : 0;
}
