#include "tptmap/lj7.hpp"

#include "tptmap/error.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace tptmap {

namespace {

constexpr const char* kModule = "samplers";

void check_config(const Lj7Config& x) {
  if (x.cols() != 2 || x.rows() < 2) throw_data(kModule, "cluster configuration must be N x 2 with N >= 2");
  if (!x.allFinite()) throw_data(kModule, "cluster configuration has non-finite coordinates");
}

double pair_distance(const Lj7Config& x, Eigen::Index i, Eigen::Index j) {
  const double dx = x(i, 0) - x(j, 0);
  const double dy = x(i, 1) - x(j, 1);
  const double r = std::sqrt(dx * dx + dy * dy);
  if (!(r > 0.0)) {
    std::ostringstream msg;
    msg << "particles " << i << " and " << j << " coincide";
    throw_data(kModule, msg.str());
  }
  return r;
}

}  // namespace

void Lj7Params::validate() const {
  if (!(a > 0.0) || !(sigma > 0.0) || !(beta > 0.0) || !(restraint_radius > 0.0) || !(spring >= 0.0)) {
    throw_config(kModule, "LJ parameters a, sigma, beta and restraint_radius must be positive");
  }
}

double pair_potential(double r, const Lj7Params& p) {
  const double s6 = std::pow(p.sigma / r, 6);
  return 4.0 * p.a * (s6 * s6 - s6);
}

double lj7_energy(const Lj7Config& x, const Lj7Params& p) {
  check_config(x);
  const Eigen::Index n = x.rows();
  double e = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) e += pair_potential(pair_distance(x, i, j), p);
  const Eigen::RowVector2d com = x.colwise().mean();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = (x.row(i) - com).norm();
    if (d > p.restraint_radius) e += 0.5 * p.spring * (d - p.restraint_radius) * (d - p.restraint_radius);
  }
  return e;
}

RowMatrix lj7_gradient(const Lj7Config& x, const Lj7Params& p) {
  check_config(x);
  const Eigen::Index n = x.rows();
  RowMatrix g = RowMatrix::Zero(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double r = pair_distance(x, i, j);
      const double s6 = std::pow(p.sigma / r, 6);
      // dV/dr divided by r.
      const double f = 4.0 * p.a * (-12.0 * s6 * s6 + 6.0 * s6) / (r * r);
      const double fx = f * (x(i, 0) - x(j, 0));
      const double fy = f * (x(i, 1) - x(j, 1));
      g(i, 0) += fx;
      g(i, 1) += fy;
      g(j, 0) -= fx;
      g(j, 1) -= fy;
    }
  }
  // The restraint depends on x_m directly and through the centre of mass.
  const Eigen::RowVector2d com = x.colwise().mean();
  Eigen::RowVector2d pull = Eigen::RowVector2d::Zero();
  RowMatrix direct = RowMatrix::Zero(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::RowVector2d r = x.row(i) - com;
    const double d = r.norm();
    if (d > p.restraint_radius) {
      const Eigen::RowVector2d v = p.spring * (d - p.restraint_radius) / d * r;
      direct.row(i) = v;
      pull += v;
    }
  }
  for (Eigen::Index m = 0; m < n; ++m) g.row(m) += direct.row(m) - pull / static_cast<double>(n);
  return g;
}

Lj7Trajectory lj7_simulate(const Lj7Params& params, const Lj7Config& x0, double dt,
                           std::size_t n_steps, std::size_t stride, std::uint64_t seed,
                           const Lj7SimulationOptions& options) {
  params.validate();
  check_config(x0);
  if (!(dt > 0.0)) throw_config(kModule, "dt must be positive");
  if (stride == 0) throw_config(kModule, "stride must be at least 1");
  Lj7Trajectory traj;
  traj.dt = dt;
  traj.stride = stride;
  traj.seed = seed;
  traj.frames.reserve(n_steps / stride);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double noise = options.zero_noise ? 0.0 : std::sqrt(2.0 * dt / params.beta);
  Lj7Config x = x0;
  for (std::size_t step = 1; step <= n_steps; ++step) {
    const RowMatrix g = lj7_gradient(x, params);
    x -= dt * g;
    if (!options.zero_noise) {
      for (Eigen::Index i = 0; i < x.rows(); ++i) {
        x(i, 0) += noise * normal(rng);
        x(i, 1) += noise * normal(rng);
      }
    }
    if (!x.allFinite()) {
      std::ostringstream msg;
      msg << "cluster state became non-finite at step " << step << "; reduce dt";
      throw_numerical(kModule, msg.str());
    }
    if (step % stride == 0) traj.frames.push_back(x);
    if (options.observer && options.observer(step, x)) break;
  }
  return traj;
}

double coordination_kernel(double r, double sigma) {
  const double u = r / (1.5 * sigma);
  const double u2 = u * u;
  const double u4 = u2 * u2;
  return 1.0 / (1.0 + u4 * u4);
}

double coordination_kernel_derivative(double r, double sigma) {
  const double h = 1.5 * sigma;
  const double u = r / h;
  const double u2 = u * u;
  const double u4 = u2 * u2;
  const double u8 = u4 * u4;
  const double den = 1.0 + u8;
  return -8.0 * u4 * u2 * u / (den * den * h);
}

Vec coordination_numbers(const Lj7Config& x, double sigma) {
  check_config(x);
  const Eigen::Index n = x.rows();
  Vec c = Vec::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double s = coordination_kernel(pair_distance(x, i, j), sigma);
      c[i] += s;
      c[j] += s;
    }
  }
  return c;
}

Vec central_moments(const Vec& c) {
  if (c.size() == 0) throw_data(kModule, "central moments of an empty vector");
  const double mean = c.mean();
  const auto n = static_cast<double>(c.size());
  double m2 = 0.0;
  double m3 = 0.0;
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    const double d = c[i] - mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  Vec out(2);
  out << m2 / n, m3 / n;
  return out;
}

Vec lj7_cvs(const Lj7Config& x, double sigma) { return central_moments(coordination_numbers(x, sigma)); }

Mat cv_jacobian(const Lj7Config& x, double sigma) {
  const Vec c = coordination_numbers(x, sigma);
  const Eigen::Index n = x.rows();
  const auto nd = static_cast<double>(n);
  const Vec dev = c.array() - c.mean();
  // dmu_k / dc_m = (k / N) [dev_m^{k-1} - mean(dev^{k-1})]; the k = 2 mean term vanishes.
  const Vec g2 = (2.0 / nd) * dev;
  const Vec sq = dev.array().square();
  const Vec g3 = (3.0 / nd) * (sq.array() - sq.mean());
  Mat j = Mat::Zero(2, 2 * n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a + 1; b < n; ++b) {
      const double r = pair_distance(x, a, b);
      const double ds = coordination_kernel_derivative(r, sigma);
      for (int k = 0; k < 2; ++k) {
        const double dr = (x(a, k) - x(b, k)) / r;
        const double w2 = (g2[a] + g2[b]) * ds * dr;
        const double w3 = (g3[a] + g3[b]) * ds * dr;
        j(0, 2 * a + k) += w2;
        j(0, 2 * b + k) -= w2;
        j(1, 2 * a + k) += w3;
        j(1, 2 * b + k) -= w3;
      }
    }
  }
  return j;
}

SpdMatrix estimate_tensor(const Lj7Config& x, double sigma) {
  const Mat j = cv_jacobian(x, sigma);
  const Mat m = j * j.transpose();
  try {
    return SpdMatrix(m);
  } catch (const Error& e) {
    throw_data(kModule, "diffusion tensor is singular at this configuration (" + e.detail() +
                            "); drop the sample");
  }
}

Lj7Config lj7_minimum(const std::string& name, const Lj7Params& params) {
  // Approximate minimizers in units of sigma, refined below by gradient descent.
  static const double kSeeds[4][7][2] = {
      {{-0.974333, 0.549207}, {-0.011539, 1.118401}, {-0.962794, -0.569194}, {0.0, 0.0},
       {0.011539, -1.118401}, {0.974333, -0.549207}, {0.962794, 0.569194}},
      {{-0.855180, -0.932280}, {-1.088066, 0.971546}, {0.024662, 1.120125}, {-0.408329, 0.088627},
       {0.698705, 0.226883}, {0.259000, -0.806367}, {1.369209, -0.668535}},
      {{-0.551403, 1.318385}, {-1.235939, 0.428374}, {-0.799767, -0.603766}, {-0.126407, 0.288465},
       {0.311250, -0.738326}, {0.979168, 0.167516}, {1.423099, -0.860648}},
      {{-0.870873, -1.491007}, {-1.176591, -0.413402}, {-0.088997, -0.691069}, {-0.397096, 0.385939},
       {0.379713, 1.187892}, {1.465590, 0.912998}, {0.688253, 0.108649}},
  };
  int which = -1;
  if (name == "C0") which = 0;
  if (name == "C1") which = 1;
  if (name == "C2") which = 2;
  if (name == "C3") which = 3;
  if (which < 0) throw_config(kModule, "unknown LJ7 minimum '" + name + "' (expected C0, C1, C2 or C3)");
  params.validate();
  Lj7Config x(7, 2);
  for (Eigen::Index k = 0; k < 7; ++k) {
    x(k, 0) = kSeeds[which][k][0] * params.sigma;
    x(k, 1) = kSeeds[which][k][1] * params.sigma;
  }
  const double step = 1e-3 * params.sigma * params.sigma / params.a;
  for (int it = 0; it < 200000; ++it) {
    const RowMatrix g = lj7_gradient(x, params);
    if (g.cwiseAbs().maxCoeff() < 1e-12 * params.a / params.sigma) break;
    x -= step * g;
  }
  return x;
}

}  // namespace tptmap
