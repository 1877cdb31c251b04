#include "commands.hpp"

#include "tptmap/analysis.hpp"
#include "tptmap/csv.hpp"
#include "tptmap/error.hpp"
#include "tptmap/fdref.hpp"
#include "tptmap/lj7.hpp"
#include "tptmap/transitions.hpp"
#include "tptmap/tpt.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace tptmap::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kModule = "cli";

void prepare_out(const RunConfig& cfg) {
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec || !fs::is_directory(cfg.out_dir)) {
    throw_config(kModule, "cannot create output directory '" + cfg.out_dir.string() + "': " + ec.message());
  }
}

Json topology_json(const Topology& topo) {
  Json out = Json::array();
  for (const auto& p : topo.periods()) out.push_back(p ? Json(*p) : Json(nullptr));
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw_data("io", "cannot open '" + path.string() + "' for writing");
  os << text;
}

struct CloudInput {
  std::optional<PointCloud> cloud;
  std::optional<TensorField> field;
};

CloudInput load_cloud(const RunConfig& cfg) {
  const Json& doc = cfg.doc;
  const RowMatrix pts = csv::read_matrix(cfg.resolve(get_string(doc, "points", "")));
  const auto dim = static_cast<std::size_t>(pts.cols());
  const Topology topo = doc.contains("topology") ? parse_topology(doc.at("topology"), "topology")
                                                 : Topology::unbounded(dim);
  if (topo.dim() != dim) {
    std::ostringstream msg;
    msg << "topology has " << topo.dim() << " entries but the points file has " << dim << " columns";
    throw_config(kModule, msg.str());
  }
  CloudInput in;
  in.cloud.emplace(pts, topo);
  if (doc.contains("tensors")) {
    in.field = csv::read_tensors(cfg.path("tensors"), dim);
    if (in.field->size() != in.cloud->size()) {
      std::ostringstream msg;
      msg << "tensor file has " << in.field->size() << " rows but the points file has " << in.cloud->size();
      throw_data(kModule, msg.str());
    }
  }
  return in;
}

KernelKind parse_kind(const std::string& name) {
  return kernel_kind_from_string(name);
}

const TensorField* field_for(KernelKind kind, const CloudInput& in) {
  if (kind != KernelKind::Mahalanobis) return nullptr;
  if (!in.field) throw_config(kModule, "kernel 'mahalanobis' requires a \"tensors\" file");
  return &*in.field;
}

Lj7Params parse_lj7(const Json& doc, double beta) {
  Lj7Params p;
  p.beta = beta;
  if (doc.contains("lj7")) {
    const Json& o = doc.at("lj7");
    check_keys(o, {"a", "sigma", "restraint_radius", "spring", "start"}, "lj7");
    p.a = get_double(o, "a", p.a, "lj7");
    p.sigma = get_double(o, "sigma", p.sigma, "lj7");
    p.restraint_radius = get_double(o, "restraint_radius", 2.0 * p.sigma, "lj7");
    p.spring = get_double(o, "spring", 100.0 * p.a / (p.sigma * p.sigma), "lj7");
  }
  p.validate();
  return p;
}

Vec default_start(const CvSystem& system) {
  if (system.name == "double_well") return Vec::Constant(1, -1.0);
  if (system.name == "torus") {
    Vec x(2);
    x << 0.5 * std::numbers::pi, -0.5 * std::numbers::pi;
    return x;
  }
  return Vec::Zero(static_cast<Eigen::Index>(system.dim()));
}

RowMatrix flatten(const std::vector<Lj7Config>& frames) {
  if (frames.empty()) return RowMatrix(0, 0);
  const Eigen::Index cols = frames.front().size();
  RowMatrix out(static_cast<Eigen::Index>(frames.size()), cols);
  for (std::size_t f = 0; f < frames.size(); ++f)
    out.row(static_cast<Eigen::Index>(f)) = Eigen::Map<const Eigen::RowVectorXd>(frames[f].data(), cols);
  return out;
}

}  // namespace

void cmd_sample(const RunConfig& cfg) {
  const Json& doc = cfg.doc;
  check_keys(doc, {"system", "beta", "dt", "n_steps", "stride", "x0", "seed", "out", "lj7", "preset"}, "");
  const std::string system = get_string(doc, "system", "");
  const std::uint64_t seed = cfg.seed(0);
  Json meta;
  meta["system"] = system;

  if (system == "lj7") {
    const std::string preset = get_string(doc, "preset", "desk", "");
    if (preset != "desk" && preset != "full") throw_config(kModule, "'preset' must be \"desk\" or \"full\"");
    const bool full = preset == "full";
    const double beta = get_double(doc, "beta", 5.0, "");
    const Lj7Params params = parse_lj7(doc, beta);
    const double dt = get_double(doc, "dt", kLj7DefaultDt, "");
    const std::size_t n_steps = get_count(doc, "n_steps", full ? 10000000 : 1000000, "");
    const std::size_t stride = get_count(doc, "stride", full ? 10000000 / 7500 : 1000000 / 2000, "");
    if (doc.contains("x0")) throw_config(kModule, "'x0' is not used for lj7; set lj7.start instead");
    const std::string start = doc.contains("lj7") ? get_string(doc.at("lj7"), "start", "C0", "lj7") : "C0";
    prepare_out(cfg);
    const auto traj = lj7_simulate(params, lj7_minimum(start, params), dt, n_steps, stride, seed);
    RowMatrix cvs(static_cast<Eigen::Index>(traj.frames.size()), 2);
    std::vector<SpdMatrix> tensors;
    tensors.reserve(traj.frames.size());
    for (std::size_t f = 0; f < traj.frames.size(); ++f) {
      cvs.row(static_cast<Eigen::Index>(f)) = lj7_cvs(traj.frames[f], params.sigma).transpose();
      try {
        tensors.push_back(estimate_tensor(traj.frames[f], params.sigma));
      } catch (const Error& e) {
        throw_data(kModule, "frame " + std::to_string(f) + ": " + e.detail());
      }
    }
    csv::write_matrix(cfg.out_dir / "points.csv", cvs);
    csv::write_tensors(cfg.out_dir / "tensors.csv", TensorField(std::move(tensors)));
    csv::write_matrix(cfg.out_dir / "configs.csv", flatten(traj.frames));
    meta["beta"] = beta;
    meta["dt"] = dt;
    meta["n_steps"] = n_steps;
    meta["stride"] = stride;
    meta["seed"] = seed;
    meta["n_points"] = traj.frames.size();
    meta["dim"] = 2;
    meta["topology"] = Json::array({nullptr, nullptr});
    meta["start"] = start;
    meta["lj7"] = {{"a", params.a},
                   {"sigma", params.sigma},
                   {"restraint_radius", params.restraint_radius},
                   {"spring", params.spring}};
    write_json(cfg.out_dir / "trajectory.json", meta);
    return;
  }

  if (doc.contains("lj7") || doc.contains("preset")) {
    throw_config(kModule, "'lj7' and 'preset' only apply to system \"lj7\"");
  }
  const double beta = get_double(doc, "beta", "");
  const CvSystem sys = builtin_cv_system(system, beta);
  const double dt = get_double(doc, "dt", "");
  const std::size_t n_steps = get_count(doc, "n_steps", "");
  const std::size_t stride = get_count(doc, "stride", "");
  Vec x0 = doc.contains("x0") ? get_vec(doc, "x0", "") : default_start(sys);
  if (static_cast<std::size_t>(x0.size()) != sys.dim()) throw_config(kModule, "'x0' has the wrong dimension");
  prepare_out(cfg);
  const auto traj = simulate_cv(sys, x0, dt, n_steps, stride, seed);
  if (traj.points.rows() < 2) throw_config(kModule, "n_steps / stride must retain at least 2 points");
  const PointCloud cloud(traj.points, sys.topology);
  csv::write_matrix(cfg.out_dir / "points.csv", cloud.points());
  csv::write_tensors(cfg.out_dir / "tensors.csv", tensors_at(sys, cloud));
  meta["beta"] = beta;
  meta["dt"] = dt;
  meta["n_steps"] = n_steps;
  meta["stride"] = stride;
  meta["seed"] = seed;
  meta["n_points"] = cloud.size();
  meta["dim"] = cloud.dim();
  meta["topology"] = topology_json(sys.topology);
  write_json(cfg.out_dir / "trajectory.json", meta);
}

void cmd_committor(const RunConfig& cfg) {
  const Json& doc = cfg.doc;
  check_keys(doc, {"points", "tensors", "topology", "kernel", "epsilon", "alpha", "beta", "A", "B",
                   "density_epsilon", "solver", "rate_scale", "out", "write_generator"},
             "");
  const auto in = load_cloud(cfg);
  const PointCloud& cloud = *in.cloud;
  const KernelKind kind = parse_kind(get_string(doc, "kernel", "mahalanobis", ""));
  const TensorField* field = field_for(kind, in);
  const double alpha = get_double(doc, "alpha", 0.5, "");
  const double beta = get_double(doc, "beta", "");
  const RegionSpec a = parse_region(require(doc, "A", ""), cloud.dim(), "A");
  const RegionSpec b = parse_region(require(doc, "B", ""), cloud.dim(), "B");
  const SolverOptions solver = parse_solver(doc, "");
  const double rate_scale = get_double(doc, "rate_scale", 1.0, "");
  const auto eps_cfg = parse_epsilon(doc, "epsilon", "");
  const double eps = eps_cfg ? *eps_cfg : epsilon_heuristic(cloud, field);
  const auto density_cfg = doc.contains("density_epsilon") ? parse_epsilon(doc, "density_epsilon", "")
                                                           : std::optional<double>();
  const double eps_density = density_cfg ? *density_cfg : epsilon_heuristic(cloud, nullptr);
  prepare_out(cfg);

  const Partition sets = classify(cloud, a, b);
  auto kernel = build_kernel(kind, cloud, field, eps);
  const auto nnz = kernel.k.nonZeros();
  const GeneratorMatrix l = build_generator(std::move(kernel), alpha, beta);
  if (get_bool(doc, "write_generator", false, "")) write_triplets(cfg.out_dir / "generator.txt", l.l);
  const CommittorSolution sol = solve_committor(l, sets.a, sets.b, solver);
  const TptResult tpt = compute_tpt(l, sol, cloud, eps_density);

  csv::write_vector(cfg.out_dir / "committor.csv", sol.q);
  csv::write_matrix(cfg.out_dir / "current.csv", tpt.current);
  csv::write_vector(cfg.out_dir / "density.csv", tpt.p);

  Json s;
  s["n_points"] = cloud.size();
  s["dim"] = cloud.dim();
  s["kernel"] = to_string(kind);
  s["epsilon"] = eps;
  s["epsilon_source"] = eps_cfg ? "config" : "heuristic";
  s["alpha"] = alpha;
  s["beta"] = beta;
  s["density_epsilon"] = eps_density;
  s["n_A"] = sol.a_idx.size();
  s["n_B"] = sol.b_idx.size();
  s["n_interior"] = sol.interior_size();
  s["kernel_nonzeros"] = nnz;
  s["stochasticity_error"] = l.stochasticity_error;
  s["solver"] = sol.method;
  s["residual"] = sol.residual;
  s["rate"] = tpt.rate;
  s["rate_scale"] = rate_scale;
  s["rate_scaled"] = tpt.rate * rate_scale;
  write_json(cfg.out_dir / "summary.json", s);
}

void cmd_fd(const RunConfig& cfg) {
  const Json& doc = cfg.doc;
  check_keys(doc, {"system", "topology", "beta", "grid", "grids", "A", "B", "points", "solver", "out"}, "");
  const double beta = get_double(doc, "beta", "");
  const Json& system = require(doc, "system", "");
  if (doc.contains("grid") == doc.contains("grids")) throw_config(kModule, "give exactly one of 'grid' or 'grids'");
  std::vector<std::pair<std::size_t, std::size_t>> sizes;
  auto parse_size = [](const Json& g, const std::string& where) {
    if (g.is_number_unsigned()) return std::pair<std::size_t, std::size_t>{g.get<std::size_t>(), g.get<std::size_t>()};
    if (g.is_array() && g.size() == 2 && g[0].is_number_unsigned() && g[1].is_number_unsigned()) {
      return std::pair<std::size_t, std::size_t>{g[0].get<std::size_t>(), g[1].get<std::size_t>()};
    }
    throw_config(kModule, "'" + where + "' must be N or [N1, N2]");
  };
  if (doc.contains("grid")) {
    sizes.push_back(parse_size(doc.at("grid"), "grid"));
  } else {
    const Json& gs = doc.at("grids");
    if (!gs.is_array() || gs.empty()) throw_config(kModule, "'grids' must be a non-empty array");
    for (std::size_t i = 0; i < gs.size(); ++i) sizes.push_back(parse_size(gs[i], "grids[" + std::to_string(i) + "]"));
  }
  const RegionSpec a = parse_region(require(doc, "A", ""), 2, "A");
  const RegionSpec b = parse_region(require(doc, "B", ""), 2, "B");
  const SolverOptions solver = parse_solver(doc, "", fd_solver_defaults());

  std::function<Grid2D(std::size_t, std::size_t)> make_grid;
  Topology topo;
  std::string system_name;
  if (system.is_string()) {
    system_name = system.get<std::string>();
    const CvSystem sys = builtin_cv_system(system_name, beta);
    if (sys.dim() != 2 || !sys.topology.is_periodic(0) || !sys.topology.is_periodic(1)) {
      throw_config(kModule, "system '" + system_name + "' is not defined on a 2D torus");
    }
    if (doc.contains("topology")) throw_config(kModule, "'topology' is fixed by built-in systems");
    topo = sys.topology;
    make_grid = [sys, topo](std::size_t n1, std::size_t n2) {
      return Grid2D::from_functions(
          n1, n2, topo,
          [&](double x, double y) { return sys.free_energy((Vec(2) << x, y).finished()); },
          [&](double x, double y) { return sys.tensor((Vec(2) << x, y).finished()); });
    };
  } else {
    check_keys(system, {"free_energy", "tensors"}, "system");
    system_name = "files";
    topo = parse_topology(require(doc, "topology", ""), "topology");
    if (sizes.size() != 1) throw_config(kModule, "node files define a single grid; use 'grid'");
    const Vec f = csv::read_vector(cfg.resolve(get_string(system, "free_energy", "system")));
    const TensorField m = csv::read_tensors(cfg.resolve(get_string(system, "tensors", "system")), 2);
    make_grid = [f, m, topo](std::size_t n1, std::size_t n2) { return Grid2D(n1, n2, topo, f, m.tensors()); };
  }
  prepare_out(cfg);

  Json summary;
  summary["system"] = system_name;
  summary["beta"] = beta;
  summary["topology"] = topology_json(topo);
  Json grids = Json::array();
  std::vector<Grid2D> built;
  std::vector<Vec> solutions;
  for (const auto& [n1, n2] : sizes) {
    built.push_back(make_grid(n1, n2));
    const FdSolution sol = fd_committor(built.back(), beta, a, b, solver);
    std::ostringstream name;
    name << "q_grid_" << n1 << 'x' << n2 << ".csv";
    csv::write_vector(cfg.out_dir / name.str(), sol.q);
    grids.push_back({{"n1", n1},
                     {"n2", n2},
                     {"file", name.str()},
                     {"n_A_nodes", sol.a_nodes.size()},
                     {"n_B_nodes", sol.b_nodes.size()},
                     {"solver", sol.method},
                     {"residual", sol.residual}});
    solutions.push_back(sol.q);
  }
  summary["grids"] = grids;
  Json diffs = Json::array();
  Json ratios = Json::array();
  double previous = 0.0;
  for (std::size_t k = 1; k < built.size(); ++k) {
    const bool doubled = built[k].n1() == 2 * built[k - 1].n1() && built[k].n2() == 2 * built[k - 1].n2();
    if (!doubled) {
      diffs.push_back(nullptr);
      previous = 0.0;
      continue;
    }
    const double d = max_node_difference(built[k - 1], solutions[k - 1], built[k], solutions[k]);
    diffs.push_back(d);
    if (previous > 0.0) ratios.push_back(previous / d);
    previous = d;
  }
  summary["max_node_differences"] = diffs;
  summary["convergence_ratios"] = ratios;
  if (doc.contains("points")) {
    const PointCloud cloud(csv::read_matrix(cfg.path("points")), topo);
    const Vec qp = bilinear_interp(built.back(), solutions.back(), cloud);
    csv::write_vector(cfg.out_dir / "q_points.csv", qp);
    summary["points_file"] = "q_points.csv";
  }
  write_json(cfg.out_dir / "fd_summary.json", summary);
}

void cmd_sweep(const RunConfig& cfg) {
  const Json& doc = cfg.doc;
  check_keys(doc, {"points", "tensors", "topology", "kernels", "epsilons", "include_heuristic", "alpha", "beta",
                   "A", "B", "reference", "mask", "solver", "out"},
             "");
  const auto in = load_cloud(cfg);
  const PointCloud& cloud = *in.cloud;
  std::vector<KernelKind> kinds;
  if (doc.contains("kernels")) {
    const Json& ks = doc.at("kernels");
    if (!ks.is_array() || ks.empty()) throw_config(kModule, "'kernels' must be a non-empty array");
    for (const auto& k : ks) {
      if (!k.is_string()) throw_config(kModule, "'kernels' entries must be strings");
      kinds.push_back(parse_kind(k.get<std::string>()));
    }
  } else {
    kinds = {KernelKind::Mahalanobis, KernelKind::Isotropic};
  }
  for (auto k : kinds) field_for(k, in);

  SweepSetup setup;
  setup.cloud = &cloud;
  setup.field = in.field ? &*in.field : nullptr;
  setup.alpha = get_double(doc, "alpha", 0.5, "");
  setup.beta = get_double(doc, "beta", "");
  setup.solver = parse_solver(doc, "");
  const RegionSpec a = parse_region(require(doc, "A", ""), cloud.dim(), "A");
  const RegionSpec b = parse_region(require(doc, "B", ""), cloud.dim(), "B");
  setup.reference_q = csv::read_vector(cfg.path("reference"));
  if (static_cast<std::size_t>(setup.reference_q.size()) != cloud.size()) {
    throw_data(kModule, "reference committor has a different row count than the points file");
  }
  const Json& mask = require(doc, "mask", "");
  check_keys(mask, {"indices", "reference_range"}, "mask");
  setup.sets = classify(cloud, a, b);
  if (mask.contains("indices") == mask.contains("reference_range")) {
    throw_config(kModule, "'mask' needs exactly one of 'indices' or 'reference_range'");
  }
  if (mask.contains("indices")) {
    for (const auto& v : mask.at("indices")) {
      if (!v.is_number_unsigned() || v.get<std::size_t>() >= cloud.size()) {
        throw_config(kModule, "'mask.indices' entries must be point indices");
      }
      setup.mask.push_back(v.get<std::size_t>());
    }
  } else {
    const auto range = get_doubles(mask, "reference_range", "mask");
    if (range.size() != 2 || !(range[0] <= range[1])) throw_config(kModule, "'mask.reference_range' must be [lo, hi]");
    std::vector<char> fixed(cloud.size(), 0);
    for (auto i : setup.sets.a) fixed[i] = 1;
    for (auto i : setup.sets.b) fixed[i] = 1;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      const double r = setup.reference_q[static_cast<Eigen::Index>(i)];
      if (!fixed[i] && r >= range[0] && r <= range[1]) setup.mask.push_back(i);
    }
  }
  if (setup.mask.empty()) throw_data(kModule, "the sweep mask selects no points");

  std::vector<double> eps_list = get_doubles(doc, "epsilons", "");
  for (double e : eps_list)
    if (!(e > 0.0)) throw_config(kModule, "'epsilons' entries must be positive");
  Json heuristics = Json::object();
  prepare_out(cfg);
  std::vector<EpsSweepRow> rows = epsilon_sweep(setup, eps_list, kinds);
  if (get_bool(doc, "include_heuristic", true, "")) {
    for (auto k : kinds) {
      const double h = epsilon_heuristic(cloud, field_for(k, in));
      heuristics[to_string(k)] = h;
      auto extra = epsilon_sweep(setup, {h}, {k});
      rows.insert(rows.end(), extra.begin(), extra.end());
    }
  }

  std::string table = "epsilon,kernel,rms,rate,status\n";
  Json minimum = Json::object();
  for (const auto& r : rows) {
    table += csv::format_double(r.epsilon) + "," + to_string(r.kind) + "," + csv::format_double(r.rms) + "," +
             csv::format_double(r.rate) + "," + (r.ok() ? "ok" : "failed") + "\n";
    if (!r.ok()) continue;
    const std::string k = to_string(r.kind);
    if (!minimum.contains(k) || r.rms < minimum[k]["rms"].get<double>()) {
      minimum[k] = {{"epsilon", r.epsilon}, {"rms", r.rms}, {"rate", r.rate}};
    }
  }
  write_text(cfg.out_dir / "sweep.csv", table);
  Json s;
  s["n_points"] = cloud.size();
  s["mask_size"] = setup.mask.size();
  s["heuristic_epsilon"] = heuristics;
  s["minimum"] = minimum;
  Json failures = Json::array();
  for (const auto& r : rows)
    if (!r.ok()) failures.push_back({{"epsilon", r.epsilon}, {"kernel", to_string(r.kind)}, {"error", r.error}});
  s["failures"] = failures;
  write_json(cfg.out_dir / "sweep_summary.json", s);
}

void cmd_canalysis(const RunConfig& cfg) {
  const Json& doc = cfg.doc;
  check_keys(doc, {"system", "beta", "points", "committor", "configs", "level", "tol", "n_pt", "n_e", "max_steps",
                   "dt", "A", "B", "seed", "lj7", "check_every", "out"},
             "");
  const std::string system = get_string(doc, "system", "");
  const bool lj7 = system == "lj7";
  const double beta = get_double(doc, "beta", lj7 ? 5.0 : 0.0, "");
  const double level = get_double(doc, "level", 0.5, "");
  const double tol = get_double(doc, "tol", 0.05, "");
  const std::size_t n_pt = get_count(doc, "n_pt", 50, "");
  const std::size_t n_e = get_count(doc, "n_e", 50, "");
  const std::size_t max_steps = get_count(doc, "max_steps", lj7 ? 10000000 : 1000000, "");
  const double dt = get_double(doc, "dt", lj7 ? kLj7DefaultDt : 1e-3, "");
  const std::uint64_t seed = cfg.seed(0);

  const RowMatrix pts = csv::read_matrix(cfg.path("points"));
  const Vec q = csv::read_vector(cfg.path("committor"));
  if (q.size() != pts.rows()) throw_data(kModule, "committor and points files differ in row count");
  const auto dim = static_cast<std::size_t>(pts.cols());
  const Ellipse a = parse_ellipse(require(doc, "A", ""), dim, "A");
  const Ellipse b = parse_ellipse(require(doc, "B", ""), dim, "B");
  const std::vector<std::size_t> starts = sample_level_set(q, level, tol, n_pt, seed);

  Shooter shooter;
  if (lj7) {
    if (doc.contains("lj7") && doc.at("lj7").contains("start")) throw_config(kModule, "'lj7.start' is not used here");
    const Lj7Params params = parse_lj7(doc, beta);
    const RowMatrix configs = csv::read_matrix(cfg.path("configs"));
    if (configs.rows() != pts.rows() || configs.cols() % 2 != 0) {
      throw_data(kModule, "configs file must have one row of 2N coordinates per point");
    }
    std::vector<Lj7Config> start_configs;
    for (auto i : starts) {
      Lj7Config c(configs.cols() / 2, 2);
      for (Eigen::Index p = 0; p < c.rows(); ++p) {
        c(p, 0) = configs(static_cast<Eigen::Index>(i), 2 * p);
        c(p, 1) = configs(static_cast<Eigen::Index>(i), 2 * p + 1);
      }
      start_configs.push_back(std::move(c));
    }
    shooter = lj7_shooter(params, std::move(start_configs), a, b, dt, get_count(doc, "check_every", 10, ""));
  } else {
    if (doc.contains("configs") || doc.contains("lj7")) throw_config(kModule, "'configs' and 'lj7' only apply to lj7");
    const CvSystem sys = builtin_cv_system(system, beta);
    if (sys.dim() != dim) throw_config(kModule, "points file dimension does not match the system");
    RowMatrix start_pts(static_cast<Eigen::Index>(starts.size()), pts.cols());
    for (std::size_t k = 0; k < starts.size(); ++k)
      start_pts.row(static_cast<Eigen::Index>(k)) = pts.row(static_cast<Eigen::Index>(starts[k]));
    shooter = cv_shooter(sys, std::move(start_pts), a, b, dt);
  }
  prepare_out(cfg);
  const PbHistogram h = committor_analysis(starts.size(), n_e, shooter, seed, max_steps);

  std::string hist = "bin_lo,bin_hi,fraction\n";
  for (std::size_t k = 0; k < PbHistogram::kBins; ++k)
    hist += csv::format_double(h.edges[k]) + "," + csv::format_double(h.edges[k + 1]) + "," +
            csv::format_double(h.fraction[k]) + "\n";
  write_text(cfg.out_dir / "pb_histogram.csv", hist);
  std::string values = "index,q,pb\n";
  for (std::size_t k = 0; k < starts.size(); ++k)
    values += std::to_string(starts[k]) + "," + csv::format_double(q[static_cast<Eigen::Index>(starts[k])]) + "," +
              (std::isnan(h.pb[k]) ? std::string("nan") : csv::format_double(h.pb[k])) + "\n";
  write_text(cfg.out_dir / "pb_values.csv", values);
  Json s;
  s["system"] = system;
  s["level"] = level;
  s["tol"] = tol;
  s["n_pt"] = h.n_pt;
  s["n_e"] = h.n_e;
  s["max_steps"] = max_steps;
  s["mode"] = h.mode;
  s["mode_bin"] = h.mode_bin;
  s["censored"] = h.censored;
  s["censored_fraction"] = h.censored_fraction;
  s["seed"] = seed;
  write_json(cfg.out_dir / "canalysis.json", s);
}

void cmd_rate(const RunConfig& cfg) {
  const Json& doc = cfg.doc;
  check_keys(doc, {"system", "beta", "dt", "n_steps", "x0", "seed", "A", "B", "points", "stride", "topology", "out"},
             "");
  TransitionCount count;
  Json s;
  if (doc.contains("points")) {
    if (doc.contains("system") || doc.contains("n_steps") || doc.contains("x0")) {
      throw_config(kModule, "give either 'points' (count a stored path) or 'system' (simulate), not both");
    }
    CvTrajectory traj;
    traj.points = csv::read_matrix(cfg.path("points"));
    traj.dt = get_double(doc, "dt", "");
    traj.stride = get_count(doc, "stride", 1, "");
    const auto dim = static_cast<std::size_t>(traj.points.cols());
    const Topology topo = doc.contains("topology") ? parse_topology(doc.at("topology"), "topology")
                                                   : Topology::unbounded(dim);
    const RegionSpec a = parse_region(require(doc, "A", ""), dim, "A");
    const RegionSpec b = parse_region(require(doc, "B", ""), dim, "B");
    prepare_out(cfg);
    count = count_transitions(traj, a, b, topo);
    s["source"] = "points";
  } else {
    const double beta = get_double(doc, "beta", "");
    const CvSystem sys = builtin_cv_system(get_string(doc, "system", ""), beta);
    if (doc.contains("topology") || doc.contains("stride")) {
      throw_config(kModule, "'topology' and 'stride' only apply when counting a stored path");
    }
    const double dt = get_double(doc, "dt", "");
    const std::size_t n_steps = get_count(doc, "n_steps", "");
    const Vec x0 = doc.contains("x0") ? get_vec(doc, "x0", "") : default_start(sys);
    if (static_cast<std::size_t>(x0.size()) != sys.dim()) throw_config(kModule, "'x0' has the wrong dimension");
    const Ellipse a = parse_ellipse(require(doc, "A", ""), sys.dim(), "A");
    const Ellipse b = parse_ellipse(require(doc, "B", ""), sys.dim(), "B");
    const std::uint64_t seed = cfg.seed(0);
    prepare_out(cfg);
    count = count_transitions_streaming(sys, x0, dt, n_steps, seed, a, b);
    s["source"] = "simulation";
    s["system"] = sys.name;
    s["beta"] = beta;
    s["dt"] = dt;
    s["n_steps"] = n_steps;
    s["seed"] = seed;
  }
  s["n_AB"] = count.n_ab;
  s["n_BA"] = count.n_ba;
  s["elapsed"] = count.elapsed;
  s["rate"] = count.rate;
  s["incomplete"] = count.incomplete;
  write_json(cfg.out_dir / "rate.json", s);
}

}  // namespace tptmap::cli
