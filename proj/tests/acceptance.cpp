// One PASS/FAIL line per numbered criterion for the worked example.
#include <cstdio>
#include <exception>

#include "example_checks.hpp"
#include "padic/serialize.hpp"

int main() {
  using namespace padic;
  try {
    MapConfig cfg = load_map_config(PADIC_JULIA_DATA_DIR "/f.json");
    checks::CheckContext ctx = checks::make_context(cfg.map);
    int failed = 0;
    for (int id = 1; id <= checks::kCheckCount; ++id) {
      checks::CheckResult r = checks::run_one(ctx, id);
      std::printf("criterion %2d: %s  (%.2f s)  %s\n    computed: %s\n", r.id, r.pass ? "PASS" : "FAIL", r.seconds,
                  r.claim.c_str(), r.computed.c_str());
      if (!r.pass) ++failed;
    }
    std::printf("%d of %d criteria passed\n", checks::kCheckCount - failed, checks::kCheckCount);
    return failed == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance: %s\n", e.what());
    return 2;
  }
}
