#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bcnd/types.hpp"

namespace bcnd {

// Constant Darboux form sum dq_j ^ dp_j on flattened (p; q) tangents.
double omega_local_form(const RVector& v1, const RVector& v2);

// i sum_{j<n} dz_j ^ dzbar_j + i dz_n ^ dzbar_n / (1 - |z_n|^2) on flattened
// (Re z; Im z) tangents.
double omega_c_form(const GlobalPoint& z, const RVector& v1, const RVector& v2);

// The phase-space two-form evaluated through a parametrized family of group
// elements: 1/2 Im tr(A1 B2 - A2 B1) + 1/2 Im tr(At1 Bt2 - At2 Bt1) with
// A_i = (D_i b_L) b_L^{-1}, B_i = (D_i g_L) g_L^{-1} and tilded counterparts
// from the right factorization; directional derivatives by central
// differences with step h.
double am_form(const std::function<CMatrix(const RVector&)>& family,
               const RVector& base, const RVector& v1, const RVector& v2,
               double h = 1e-5);

// Canonical bracket of two functions of (p_hat; q_hat), FD gradients.
double poisson_bracket(const std::function<double(const RVector&)>& f,
                       const std::function<double(const RVector&)>& g,
                       const RVector& pt, double h = 1e-6);

// max |{h_j, h_k}| over the requested (j, k) pairs at a chart point.
double poisson_commutativity(const CouplingParams& cp, const LocalPoint& pt,
                             const std::vector<std::pair<int, int>>& pairs,
                             double h = 1e-6);

// Numerical rank of [dh_k/dq_j] (SVD, threshold 1e-8 sigma_max).
int independence_rank(const CouplingParams& cp, const LocalPoint& pt,
                      double h = 1e-5);

// ---------------------------------------------------------------------------
// Certification suites.
// ---------------------------------------------------------------------------

struct SuiteResult {
  std::string name;
  int samples = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

struct VerifyConfig {
  CouplingParams params;
  std::uint64_t seed = 42;
  ToleranceProfile tol;
  double sample_scale = 1.0;  // scales the draw counts (min 1 per suite)
  int workers = 1;            // suites shard across this many threads
};

// Runs every certification suite; one SuiteResult per suite. Suites draw
// from independent seeded generators, so the report does not depend on the
// worker count.
std::vector<SuiteResult> run_verification(const VerifyConfig& cfg);

bool all_pass(const std::vector<SuiteResult>& results);
std::string report_json(const std::vector<SuiteResult>& results,
                        const VerifyConfig& cfg);

}  // namespace bcnd
