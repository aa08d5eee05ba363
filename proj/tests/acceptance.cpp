// Acceptance gate: one line per criterion, full-size sample counts.
// Criteria 1-10 drive the library's certification suites; criterion 11
// exercises the command-line front door for byte determinism.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "bcnd/verify.hpp"

using namespace bcnd;

namespace {

int failures = 0;

void report(int idx, const std::string& name, bool pass,
            const std::string& detail) {
  std::printf("[%s] %2d %-28s %s\n", pass ? "PASS" : "FAIL", idx, name.c_str(),
              detail.c_str());
  if (!pass) ++failures;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool run_cli(const std::string& args) {
  const std::string cmd = std::string(BCND_CLI_PATH) + " " + args +
                          " > /dev/null 2> /dev/null";
  return WEXITSTATUS(std::system(cmd.c_str())) == 0;
}

}  // namespace

int main() {
  VerifyConfig cfg;
  cfg.params = CouplingParams{2, 1.0, -0.3, 0.5};
  cfg.seed = 42;
  cfg.sample_scale = 1.0;

  const auto results = run_verification(cfg);
  // Suite order matches the criterion numbering.
  const char* names[] = {
      "constraint-surface",    "identity-suite",     "section-gauge-identities",
      "admissibility-oracle",  "symplectic-pullbacks", "integrability",
      "dynamics-cross-check",  "sutherland-limit",   "van-diejen-limit",
      "schneider-limit",
  };
  for (std::size_t i = 0; i < results.size(); ++i) {
    const SuiteResult& r = results[i];
    std::ostringstream detail;
    detail << r.samples << " samples, max residual " << r.max_residual
           << " vs " << r.tolerance;
    if (!r.note.empty()) detail << " (" << r.note << ")";
    report(static_cast<int>(i) + 1, names[i], r.pass, detail.str());
  }

  // 11: byte determinism of the front door under a fixed seed/config.
  {
    const std::string tmp = "acceptance_tmp";
    std::ofstream c(tmp + ".json");
    c << R"({"n":2,"x":1.0,"u":-0.3,"v":0.5,"seed":42,"sample_scale":0.05})";
    c.close();
    bool ok = run_cli("verify --config " + tmp + ".json --out " + tmp + "_1.json");
    ok = ok && run_cli("verify --config " + tmp + ".json --out " + tmp + "_2.json");
    const std::string v1 = slurp(tmp + "_1.json");
    ok = ok && !v1.empty() && v1 == slurp(tmp + "_2.json");

    const std::string sim =
        "simulate --n 2 --x 1 --u -0.3 --v 0.5 --seed 42 --method both "
        "--k 1 --t-max 0.5 --samples 17 --out ";
    ok = ok && run_cli(sim + tmp + "_s1.csv");
    ok = ok && run_cli(sim + tmp + "_s2.csv");
    const std::string s1 = slurp(tmp + "_s1.csv");
    ok = ok && !s1.empty() && s1 == slurp(tmp + "_s2.csv") &&
         slurp(tmp + "_s1.csv.json") == slurp(tmp + "_s2.csv.json");
    report(11, "determinism", ok, "verify + simulate byte-identical reruns");
    for (const char* suffix : {".json", "_1.json", "_2.json", "_s1.csv",
                               "_s2.csv", "_s1.csv.json", "_s2.csv.json"})
      std::remove((tmp + suffix).c_str());
  }

  if (failures == 0)
    std::printf("acceptance: all %d criteria passed\n", 11);
  else
    std::printf("acceptance: %d criteria FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
