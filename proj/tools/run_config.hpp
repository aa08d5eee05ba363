#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bcnd/types.hpp"

namespace bcnd::cli {

struct GridAxis {
  std::string name;
  double min = 0.0;
  double max = 1.0;
  int count = 1;
};

struct GridSpec {
  std::string type = "p_hat";  // p_hat | couplings
  GridAxis axis1{"p1", -1.4, 0.3, 50};
  GridAxis axis2{"p2_gap", 0.05, 1.15, 50};
};

struct RunConfig {
  CouplingParams params{2, 1.0, -0.3, 0.5};
  std::uint64_t seed = 42;
  int k = 1;
  double t_max = 1.0;
  int samples = 101;
  std::string method = "local";  // projection | local | global | both
  std::string out;               // empty = stdout
  std::string format = "csv";    // csv | json
  double tolerance_scale = 1.0;
  double sample_scale = 1.0;
  double ode_tol = 1e-10;
  std::optional<LocalPoint> initial_local;
  std::optional<GlobalPoint> initial_global;
  std::vector<double> beta_ladder{1e-2, 5e-3, 2.5e-3};
  std::vector<double> r_ladder{5.0, 10.0, 15.0};
  std::vector<double> sigma_ladder{3.0, 6.0, 9.0};
  GridSpec grid;
};

// Loads the JSON config document; throws bcnd::Error with a message on
// malformed input.
RunConfig load_config(const std::string& path);

// Number of worker threads: BCN_DEFORM_THREADS caps the pool.
int worker_count();

// Deterministic order-stable parallel map over [0, count).
void parallel_for(int count, const std::function<void(int)>& body);

std::string format_double(double v);  // %.17g

}  // namespace bcnd::cli
