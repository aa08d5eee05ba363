#include "run_config.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <thread>

#include "json.hpp"

namespace bcnd::cli {

using nlohmann::json;

namespace {

RVector to_rvector(const json& arr) {
  RVector v(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) v[i] = arr[i].get<double>();
  return v;
}

GridAxis parse_axis(const json& j, const GridAxis& dflt) {
  GridAxis a = dflt;
  if (j.contains("min")) a.min = j["min"].get<double>();
  if (j.contains("max")) a.max = j["max"].get<double>();
  if (j.contains("count")) a.count = j["count"].get<int>();
  if (a.count < 1) throw Error("grid axis count must be >= 1");
  return a;
}

}  // namespace

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(std::string("config parse error: ") + e.what());
  }
  RunConfig cfg;
  if (j.contains("n")) cfg.params.n = j["n"].get<int>();
  if (j.contains("x")) cfg.params.x = j["x"].get<double>();
  if (j.contains("u")) cfg.params.u = j["u"].get<double>();
  if (j.contains("v")) cfg.params.v = j["v"].get<double>();
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("k")) cfg.k = j["k"].get<int>();
  if (j.contains("t_max")) cfg.t_max = j["t_max"].get<double>();
  if (j.contains("samples")) cfg.samples = j["samples"].get<int>();
  if (j.contains("method")) cfg.method = j["method"].get<std::string>();
  if (j.contains("out")) cfg.out = j["out"].get<std::string>();
  if (j.contains("format")) cfg.format = j["format"].get<std::string>();
  if (j.contains("tolerance_scale"))
    cfg.tolerance_scale = j["tolerance_scale"].get<double>();
  if (j.contains("sample_scale"))
    cfg.sample_scale = j["sample_scale"].get<double>();
  if (j.contains("ode_tol")) cfg.ode_tol = j["ode_tol"].get<double>();
  if (j.contains("initial")) {
    const json& init = j["initial"];
    if (init.contains("p_hat")) {
      LocalPoint pt;
      pt.p_hat = to_rvector(init["p_hat"]);
      pt.q_hat = init.contains("q_hat") ? to_rvector(init["q_hat"])
                                        : RVector::Zero(pt.p_hat.size());
      cfg.initial_local = pt;
    } else if (init.contains("z_re")) {
      GlobalPoint gp;
      const RVector re = to_rvector(init["z_re"]);
      const RVector im = init.contains("z_im") ? to_rvector(init["z_im"])
                                               : RVector::Zero(re.size());
      gp.z = CVector(re.size());
      for (Eigen::Index i = 0; i < re.size(); ++i)
        gp.z[i] = Complex(re[i], im[i]);
      cfg.initial_global = gp;
    } else {
      throw Error("initial point must provide p_hat or z_re");
    }
  }
  if (j.contains("ladders")) {
    const json& l = j["ladders"];
    auto tovec = [](const json& a) {
      std::vector<double> v;
      for (const auto& e : a) v.push_back(e.get<double>());
      return v;
    };
    if (l.contains("beta")) cfg.beta_ladder = tovec(l["beta"]);
    if (l.contains("R")) cfg.r_ladder = tovec(l["R"]);
    if (l.contains("sigma")) cfg.sigma_ladder = tovec(l["sigma"]);
  }
  if (j.contains("grid")) {
    const json& g = j["grid"];
    if (g.contains("type")) cfg.grid.type = g["type"].get<std::string>();
    if (g.contains("axis1")) cfg.grid.axis1 = parse_axis(g["axis1"], cfg.grid.axis1);
    if (g.contains("axis2")) cfg.grid.axis2 = parse_axis(g["axis2"], cfg.grid.axis2);
  }
  return cfg;
}

int worker_count() {
  if (const char* env = std::getenv("BCN_DEFORM_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(int count, const std::function<void(int)>& body) {
  const int workers = std::min(worker_count(), std::max(count, 1));
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1))
        body(i);
    });
  }
  for (auto& t : pool) t.join();
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace bcnd::cli
