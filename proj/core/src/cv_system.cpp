#include "tptmap/cv_system.hpp"

#include "tptmap/error.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace tptmap {

namespace {
constexpr const char* kModule = "samplers";
}

Vec CvSystem::divergence_at(const Vec& x) const {
  return divergence ? divergence(x) : fd_divergence(tensor, x);
}

Mat CvSystem::sqrt_at(const Vec& x) const {
  return tensor_sqrt ? tensor_sqrt(x) : SpdMatrix(tensor(x)).sqrt();
}

Vec fd_divergence(const std::function<Mat(const Vec&)>& tensor, const Vec& x, double step) {
  const Eigen::Index d = x.size();
  Vec out = Vec::Zero(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    auto at = [&](double offset) {
      Vec y = x;
      y[j] += offset;
      return tensor(y);
    };
    const Mat deriv = (-at(2 * step) + 8.0 * at(step) - 8.0 * at(-step) + at(-2 * step)) / (12.0 * step);
    out += deriv.col(j);
  }
  return out;
}

CvSystem ou_system(const Mat& a, const Mat& m, double beta) {
  const SpdMatrix aa(a);
  const SpdMatrix mm(m);
  CvSystem s;
  s.name = "ou";
  s.topology = Topology::unbounded(aa.dim());
  s.beta = beta;
  const Mat am = aa.matrix();
  const Mat mat = mm.matrix();
  const Mat root = mm.sqrt();
  s.free_energy = [am](const Vec& x) { return 0.5 * x.dot(am * x); };
  s.gradient = [am](const Vec& x) -> Vec { return am * x; };
  s.tensor = [mat](const Vec&) { return mat; };
  s.divergence = [d = aa.dim()](const Vec&) -> Vec { return Vec::Zero(static_cast<Eigen::Index>(d)); };
  s.tensor_sqrt = [root](const Vec&) { return root; };
  return s;
}

CvSystem anisotropic_ou_system(double beta) {
  const double t = 0.5;
  Mat r(2, 2);
  r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  const Mat m = r * Vec((Vec(2) << 1.0, 4.0).finished()).asDiagonal() * r.transpose();
  return ou_system(SpdMatrix(m).inverse(), m, beta);
}

CvSystem double_well_system(double beta) {
  CvSystem s;
  s.name = "double_well";
  s.topology = Topology::unbounded(1);
  s.beta = beta;
  s.free_energy = [](const Vec& x) {
    const double u = x[0] * x[0] - 1.0;
    return u * u;
  };
  s.gradient = [](const Vec& x) -> Vec { return Vec::Constant(1, 4.0 * x[0] * (x[0] * x[0] - 1.0)); };
  s.tensor = [](const Vec& x) { return Mat::Constant(1, 1, 1.0 + 0.9 * std::sin(3.0 * x[0])); };
  s.divergence = [](const Vec& x) -> Vec { return Vec::Constant(1, 2.7 * std::cos(3.0 * x[0])); };
  s.tensor_sqrt = [](const Vec& x) { return Mat::Constant(1, 1, std::sqrt(1.0 + 0.9 * std::sin(3.0 * x[0]))); };
  return s;
}

CvSystem torus_system(double beta) {
  CvSystem s;
  s.name = "torus";
  s.topology = Topology::torus(2, 2.0 * std::numbers::pi);
  s.beta = beta;
  s.free_energy = [](const Vec& x) { return std::cos(x[0]) + std::cos(x[0] - x[1]); };
  s.gradient = [](const Vec& x) -> Vec {
    Vec g(2);
    g << -std::sin(x[0]) - std::sin(x[0] - x[1]), std::sin(x[0] - x[1]);
    return g;
  };
  s.tensor = [](const Vec& x) {
    const double d = 1.5 + 0.5 * std::sin(x[0]);
    const double o = 0.3 * std::cos(x[1]);
    Mat m(2, 2);
    m << d, o, o, d;
    return m;
  };
  s.divergence = [](const Vec& x) -> Vec {
    Vec v(2);
    v << 0.5 * std::cos(x[0]) - 0.3 * std::sin(x[1]), 0.0;
    return v;
  };
  // Eigenvectors of [[d, o], [o, d]] are (1, 1) and (1, -1) for any d, o.
  s.tensor_sqrt = [](const Vec& x) {
    const double d = 1.5 + 0.5 * std::sin(x[0]);
    const double o = 0.3 * std::cos(x[1]);
    const double p = std::sqrt(d + o);
    const double q = std::sqrt(d - o);
    Mat m(2, 2);
    m << 0.5 * (p + q), 0.5 * (p - q), 0.5 * (p - q), 0.5 * (p + q);
    return m;
  };
  return s;
}

CvSystem builtin_cv_system(const std::string& name, double beta) {
  if (!(beta > 0.0)) throw_config(kModule, "beta must be positive");
  if (name == "ou") return anisotropic_ou_system(beta);
  if (name == "double_well") return double_well_system(beta);
  if (name == "torus") return torus_system(beta);
  throw_config(kModule, "unknown system '" + name + "' (expected ou, double_well, torus or lj7)");
}

CvTrajectory simulate_cv(const CvSystem& system, const Vec& x0, double dt, std::size_t n_steps,
                         std::size_t stride, std::uint64_t seed, const SimulationOptions& options) {
  if (!(dt > 0.0)) throw_config(kModule, "dt must be positive");
  if (stride == 0) throw_config(kModule, "stride must be at least 1");
  const auto d = static_cast<Eigen::Index>(system.dim());
  if (x0.size() != d) throw_config(kModule, "initial state has the wrong dimension");

  CvTrajectory traj;
  traj.dt = dt;
  traj.stride = stride;
  traj.beta = system.beta;
  traj.seed = seed;
  traj.system = system.name;
  traj.points.resize(static_cast<Eigen::Index>(n_steps / stride), d);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double inv_beta = 1.0 / system.beta;
  const double noise = options.zero_noise ? 0.0 : std::sqrt(2.0 * inv_beta * dt);
  Vec x = x0;
  system.topology.wrap_in_place(x);
  Vec xi(d);
  Eigen::Index kept = 0;
  for (std::size_t step = 1; step <= n_steps; ++step) {
    const Mat m = system.tensor(x);
    Vec dx = (-(m * system.gradient(x)) + inv_beta * system.divergence_at(x)) * dt;
    if (!options.zero_noise) {
      for (Eigen::Index k = 0; k < d; ++k) xi[k] = normal(rng);
      dx += noise * (system.sqrt_at(x) * xi);
    }
    x += dx;
    system.topology.wrap_in_place(x);
    if (!x.allFinite()) {
      std::ostringstream msg;
      msg << "state became non-finite at step " << step << "; reduce dt";
      throw_numerical(kModule, msg.str());
    }
    if (step % stride == 0) traj.points.row(kept++) = x.transpose();
    if (options.observer && options.observer(step, x)) break;
  }
  traj.points.conservativeResize(kept, d);
  return traj;
}

TensorField tensors_at(const CvSystem& system, const PointCloud& cloud) {
  std::vector<Mat> m;
  m.reserve(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) m.push_back(system.tensor(cloud.point(i)));
  return TensorField::from_matrices(m);
}

}  // namespace tptmap
