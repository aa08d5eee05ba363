#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "json.hpp"

#include "bcnd/blocks_local.hpp"
#include "bcnd/dynamics.hpp"
#include "bcnd/hamiltonians.hpp"
#include "bcnd/momentum.hpp"
#include "bcnd/sampling.hpp"
#include "bcnd/verify.hpp"

namespace bcnd::cli {

namespace {

void write_output(const RunConfig& cfg, const std::string& text,
                  const std::string& suffix = "") {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  const std::string path = cfg.out + suffix;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file: " + path);
  out << text;
}

// JSON rendering of tabular output: one object per header block, cells kept
// as the exact strings the CSV would carry.
std::string table_to_json(const std::string& csv,
                          const std::vector<std::string>& header_tags) {
  nlohmann::ordered_json blocks = nlohmann::ordered_json::array();
  nlohmann::ordered_json* current = nullptr;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      const std::size_t comma = line.find(',', pos);
      cells.push_back(line.substr(pos, comma == std::string::npos
                                           ? std::string::npos
                                           : comma - pos));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (cells.empty()) continue;
    const bool is_header =
        std::find(header_tags.begin(), header_tags.end(), cells[0]) !=
        header_tags.end();
    if (is_header) {
      blocks.push_back({{"columns", cells},
                        {"rows", nlohmann::ordered_json::array()}});
      current = &blocks.back();
    } else if (current != nullptr) {
      (*current)["rows"].push_back(cells);
    }
  }
  nlohmann::ordered_json doc;
  doc["blocks"] = blocks;
  return doc.dump(2) + "\n";
}

void write_table(const RunConfig& cfg, const std::string& csv,
                 const std::vector<std::string>& header_tags) {
  if (cfg.format == "json") {
    write_output(cfg, table_to_json(csv, header_tags));
    return;
  }
  if (cfg.format != "csv") throw Error("unknown format: " + cfg.format);
  write_output(cfg, csv);
}

LocalPoint default_local_point(const RunConfig& cfg) {
  if (cfg.initial_local) {
    if (cfg.initial_local->n() != cfg.params.n)
      throw Error("initial point size does not match n");
    if (!in_closed_chamber(cfg.params.x, cfg.initial_local->p_hat))
      throw Error("initial point is outside the closed chamber");
    return *cfg.initial_local;
  }
  if (cfg.initial_global) {
    return local_of_z(cfg.params, *cfg.initial_global);
  }
  Sampler s(cfg.seed);
  return s.interior_point(cfg.params, 0.3, 0.6);
}

GlobalPoint default_global_point(const RunConfig& cfg) {
  if (cfg.initial_global) {
    if (cfg.initial_global->n() != cfg.params.n)
      throw Error("initial point size does not match n");
    check_global_point(*cfg.initial_global);
    return *cfg.initial_global;
  }
  if (cfg.initial_local) return z_of_local(cfg.params, *cfg.initial_local);
  Sampler s(cfg.seed);
  return z_of_local(cfg.params, s.interior_point(cfg.params, 0.3, 0.6));
}

std::string csv_header_local(int n) {
  std::ostringstream os;
  os << "method,t";
  for (int j = 1; j <= n; ++j) os << ",p_hat_" << j;
  for (int j = 1; j <= n; ++j) os << ",q_hat_" << j;
  for (int j = 1; j <= n; ++j) os << ",h_" << j;
  os << "\n";
  return os.str();
}

std::string csv_header_global(int n) {
  std::ostringstream os;
  os << "method,t";
  for (int j = 1; j <= n; ++j) os << ",re_z_" << j;
  for (int j = 1; j <= n; ++j) os << ",im_z_" << j;
  for (int j = 1; j <= n; ++j) os << ",h_" << j;
  os << "\n";
  return os.str();
}

std::string csv_header_projection(int n) {
  std::ostringstream os;
  os << "method,t";
  for (int j = 1; j <= n; ++j) os << ",p_hat_" << j;
  for (int j = 1; j <= n; ++j) os << ",h_" << j;
  os << "\n";
  return os.str();
}

void append_trajectory_rows(std::ostringstream& os, const std::string& method,
                            const Trajectory& tr) {
  for (Eigen::Index i = 0; i < tr.times.size(); ++i) {
    os << method << "," << format_double(tr.times[i]);
    for (Eigen::Index j = 0; j < tr.states[i].size(); ++j)
      os << "," << format_double(tr.states[i][j]);
    for (Eigen::Index j = 0; j < tr.conserved.cols(); ++j)
      os << "," << format_double(tr.conserved(i, j));
    os << "\n";
  }
}

}  // namespace

int cmd_verify(const RunConfig& cfg) {
  VerifyConfig vc;
  vc.params = cfg.params;
  vc.seed = cfg.seed;
  vc.tol = ToleranceProfile{}.scaled(cfg.tolerance_scale);
  vc.sample_scale = cfg.sample_scale;
  vc.workers = worker_count();

  const std::vector<SuiteResult> results = run_verification(vc);
  write_output(cfg, report_json(results, vc));
  return all_pass(results) ? 0 : 1;
}

int cmd_simulate(const RunConfig& cfg) {
  const int n = cfg.params.n;
  if (cfg.k < 1 || cfg.k > n) throw Error("k must lie in [1, n]");
  if (cfg.samples < 1) throw Error("need at least one sample");
  const std::pair<double, double> span{0.0, cfg.t_max};

  std::ostringstream os;
  double max_dev = 0.0;
  bool wrote_dev = false;
  try {
    if (cfg.method == "local" || cfg.method == "both") {
      const LocalPoint pt0 = default_local_point(cfg);
      const Trajectory tr =
          local_ode(cfg.params, pt0, cfg.k, span, cfg.ode_tol, cfg.samples);
      os << csv_header_local(n);
      append_trajectory_rows(os, "local_ode", tr);
      if (cfg.method == "both") {
        const GlobalPoint z0 = z_of_local(cfg.params, pt0);
        const auto proj =
            projected_p_trajectory(cfg.params, z0, cfg.k, tr.times);
        const RVector h = conserved_values(cfg.params, z0);
        os << csv_header_projection(n);
        for (Eigen::Index i = 0; i < tr.times.size(); ++i) {
          os << "projection," << format_double(tr.times[i]);
          for (int j = 0; j < n; ++j) os << "," << format_double(proj[i][j]);
          for (int j = 0; j < n; ++j) os << "," << format_double(h[j]);
          os << "\n";
          if (tr.stop == StopReason::Completed ||
              tr.times[i] <= tr.t_reached) {
            const LocalPoint st = local_state(tr, static_cast<int>(i));
            max_dev = std::max(
                max_dev, (st.p_hat - proj[i]).cwiseAbs().maxCoeff());
          }
        }
        wrote_dev = true;
      }
    } else if (cfg.method == "global") {
      const GlobalPoint z0 = default_global_point(cfg);
      const Trajectory tr =
          global_ode(cfg.params, z0, cfg.k, span, cfg.ode_tol, cfg.samples);
      os << csv_header_global(n);
      append_trajectory_rows(os, "global_ode", tr);
    } else if (cfg.method == "projection") {
      const GlobalPoint z0 = default_global_point(cfg);
      RVector grid(cfg.samples);
      for (int i = 0; i < cfg.samples; ++i)
        grid[i] = cfg.samples == 1 ? 0.0
                                   : cfg.t_max * i / (cfg.samples - 1);
      const auto proj = projected_p_trajectory(cfg.params, z0, cfg.k, grid);
      const RVector h = conserved_values(cfg.params, z0);
      os << csv_header_projection(n);
      for (int i = 0; i < cfg.samples; ++i) {
        os << "projection," << format_double(grid[i]);
        for (int j = 0; j < n; ++j) os << "," << format_double(proj[i][j]);
        for (int j = 0; j < n; ++j) os << "," << format_double(h[j]);
        os << "\n";
      }
    } else {
      throw Error("unknown method: " + cfg.method);
    }
  } catch (const StepFailure& e) {
    std::cerr << "integration failure: " << e.what() << "\n";
    return 3;
  } catch (const EscapeDisk& e) {
    std::cerr << "integration failure: " << e.what() << "\n";
    return 3;
  }

  write_table(cfg, os.str(), {"method"});
  if (wrote_dev) {
    nlohmann::ordered_json j;
    j["max_p_hat_deviation"] = format_double(max_dev);
    write_output(cfg, j.dump(2) + "\n", cfg.out.empty() ? "" : ".json");
  }
  return 0;
}

int cmd_limits(const RunConfig& cfg) {
  if (cfg.beta_ladder.empty() && cfg.r_ladder.empty() &&
      cfg.sigma_ladder.empty())
    throw Error("no ladder specified");

  Sampler s(cfg.seed);
  std::ostringstream os;
  os << "ladder,parameter,residual,ratio\n";

  auto emit = [&](const std::string& name, const std::vector<double>& ladder,
                  const std::function<double(double)>& residual) {
    double prev = 0.0;
    bool have_prev = false;
    for (double value : ladder) {
      const double r = residual(value);
      os << name << "," << format_double(value) << "," << format_double(r)
         << ",";
      os << (have_prev ? format_double(prev / r) : std::string("nan"));
      os << "\n";
      prev = r;
      have_prev = true;
    }
  };

  // fixed generic evaluation data, deterministic under the seed
  RVector q(cfg.params.n), p(cfg.params.n);
  q[0] = s.uniform(1.1, 1.4);
  for (int j = 1; j < cfg.params.n; ++j) q[j] = q[j - 1] - s.uniform(0.25, 0.4);
  for (int j = 0; j < cfg.params.n; ++j) p[j] = s.uniform(-1.0, 1.0);
  const LocalPoint pt = s.interior_point(cfg.params, 0.3, 0.6);
  RVector Q(cfg.params.n), P(cfg.params.n);
  Q[0] = s.uniform(0.8, 1.3);
  for (int j = 1; j < cfg.params.n; ++j)
    Q[j] = Q[j - 1] - std::abs(cfg.params.x) / 2 - s.uniform(0.2, 0.6);
  for (int j = 0; j < cfg.params.n; ++j) P[j] = s.uniform(-M_PI, M_PI);

  if (!cfg.beta_ladder.empty())
    emit("beta", cfg.beta_ladder, [&](double beta) {
      return sutherland_residual(cfg.params, q, p, beta);
    });
  if (!cfg.r_ladder.empty())
    emit("R", cfg.r_ladder,
         [&](double R) { return vdiejen_residual(cfg.params, pt, R); });
  if (!cfg.sigma_ladder.empty())
    emit("sigma", cfg.sigma_ladder, [&](double sig) {
      return schneider_residual(cfg.params, Q, P, sig);
    });

  write_table(cfg, os.str(), {"ladder"});
  return 0;
}

int cmd_scan(const RunConfig& cfg) {
  const GridSpec& g = cfg.grid;
  if (g.axis1.count < 1 || g.axis2.count < 1) throw Error("malformed grid");
  const int rows = g.axis1.count * g.axis2.count;
  std::vector<std::string> lines(rows);

  auto axis_value = [](const GridAxis& a, int i) {
    return a.count == 1 ? a.min : a.min + (a.max - a.min) * i / (a.count - 1);
  };

  std::ostringstream header;
  if (g.type == "p_hat") {
    if (cfg.params.n != 2)
      throw Error("p_hat scan is a two-particle feature");
    header << "p_hat_1,p_hat_2,admissible";
    for (int j = 1; j <= cfg.params.n; ++j) header << ",h_" << j;
    header << "\n";
    const RVector q_hat = cfg.initial_local
                              ? cfg.initial_local->q_hat
                              : RVector::Zero(cfg.params.n);
    parallel_for(rows, [&](int idx) {
      const int i = idx / g.axis2.count;
      const int j = idx % g.axis2.count;
      RVector ph(2);
      ph[0] = axis_value(g.axis1, i);
      ph[1] = axis_value(g.axis2, j);
      const bool ok =
          ph[0] > ph[1] && std::abs(ph[0] - ph[1]) > 1e-12 &&
          admissible(cfg.params.x, ph);
      std::ostringstream os;
      os << format_double(ph[0]) << "," << format_double(ph[1]) << ","
         << (ok ? 1 : 0);
      if (ok) {
        LocalPoint pt;
        pt.p_hat = ph;
        pt.q_hat = q_hat;
        const RVector h = conserved_values_local(cfg.params, pt);
        for (int m = 0; m < cfg.params.n; ++m)
          os << "," << format_double(h[m]);
      } else {
        for (int m = 0; m < cfg.params.n; ++m) os << ",nan";
      }
      os << "\n";
      lines[idx] = os.str();
    });
  } else if (g.type == "couplings") {
    header << "u,v,admissible";
    for (int j = 1; j <= cfg.params.n; ++j) header << ",h_" << j;
    header << "\n";
    const LocalPoint pt = default_local_point(cfg);
    parallel_for(rows, [&](int idx) {
      const int i = idx / g.axis2.count;
      const int j = idx % g.axis2.count;
      CouplingParams cp = cfg.params;
      cp.u = axis_value(g.axis1, i);
      cp.v = axis_value(g.axis2, j);
      bool ok = true;
      try {
        cp.validate();
      } catch (const CouplingViolation&) {
        ok = false;
      }
      std::ostringstream os;
      os << format_double(cp.u) << "," << format_double(cp.v) << ","
         << (ok ? 1 : 0);
      if (ok) {
        const RVector h = conserved_values_local(cp, pt);
        for (int m = 0; m < cp.n; ++m) os << "," << format_double(h[m]);
      } else {
        for (int m = 0; m < cp.n; ++m) os << ",nan";
      }
      os << "\n";
      lines[idx] = os.str();
    });
  } else {
    throw Error("unknown grid type: " + g.type);
  }

  std::ostringstream os;
  os << header.str();
  for (const std::string& l : lines) os << l;
  write_table(cfg, os.str(), {"p_hat_1", "u"});
  return 0;
}

}  // namespace bcnd::cli
