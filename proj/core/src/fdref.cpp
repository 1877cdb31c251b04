#include "tptmap/fdref.hpp"

#include "tptmap/error.hpp"
#include "tptmap/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tptmap {

namespace {

constexpr const char* kModule = "fdref";

std::size_t wrap_index(std::ptrdiff_t i, std::size_t n) {
  const auto m = static_cast<std::ptrdiff_t>(n);
  return static_cast<std::size_t>(((i % m) + m) % m);
}

}  // namespace

Grid2D::Grid2D(std::size_t n1, std::size_t n2, Topology topology, Vec free_energy,
               std::vector<SpdMatrix> tensors)
    : n1_(n1), n2_(n2), topology_(std::move(topology)), free_energy_(std::move(free_energy)),
      tensors_(std::move(tensors)) {
  if (n1_ < kMinNodes || n2_ < kMinNodes) {
    std::ostringstream msg;
    msg << "grid needs at least " << kMinNodes << " nodes per dimension, got " << n1_ << 'x' << n2_;
    throw_config(kModule, msg.str());
  }
  if (topology_.dim() != 2 || !topology_.is_periodic(0) || !topology_.is_periodic(1)) {
    throw_config(kModule, "the finite-difference grid requires a 2D periodic topology");
  }
  if (static_cast<std::size_t>(free_energy_.size()) != size()) {
    throw_data(kModule, "free-energy node count does not match the grid");
  }
  if (tensors_.size() != size()) throw_data(kModule, "tensor node count does not match the grid");
  for (std::size_t k = 0; k < tensors_.size(); ++k) {
    if (tensors_[k].dim() != 2) {
      std::ostringstream msg;
      msg << "tensor at node " << k << " is not 2x2";
      throw_data(kModule, msg.str());
    }
  }
  if (!free_energy_.allFinite()) throw_data(kModule, "free energy has non-finite node values");
  h1_ = topology_.period(0) / static_cast<double>(n1_);
  h2_ = topology_.period(1) / static_cast<double>(n2_);
}

Grid2D Grid2D::from_functions(std::size_t n1, std::size_t n2, const Topology& topology,
                              const ScalarField& free_energy, const TensorFn& tensor) {
  if (topology.dim() != 2 || !topology.is_periodic(0) || !topology.is_periodic(1)) {
    throw_config(kModule, "the finite-difference grid requires a 2D periodic topology");
  }
  const double h1 = topology.period(0) / static_cast<double>(n1);
  const double h2 = topology.period(1) / static_cast<double>(n2);
  Vec f(static_cast<Eigen::Index>(n1 * n2));
  std::vector<Mat> m(n1 * n2);
  for (std::size_t i = 0; i < n1; ++i) {
    const double x = -0.5 * topology.period(0) + static_cast<double>(i) * h1;
    for (std::size_t j = 0; j < n2; ++j) {
      const double y = -0.5 * topology.period(1) + static_cast<double>(j) * h2;
      f[static_cast<Eigen::Index>(i * n2 + j)] = free_energy(x, y);
      m[i * n2 + j] = tensor(x, y);
    }
  }
  auto field = TensorField::from_matrices(m);
  return Grid2D(n1, n2, topology, std::move(f), field.tensors());
}

Vec Grid2D::node(std::size_t i, std::size_t j) const {
  Vec x(2);
  x << -0.5 * topology_.period(0) + static_cast<double>(i) * h1_,
      -0.5 * topology_.period(1) + static_cast<double>(j) * h2_;
  return x;
}

PointCloud Grid2D::nodes() const {
  RowMatrix pts(static_cast<Eigen::Index>(size()), 2);
  for (std::size_t i = 0; i < n1_; ++i)
    for (std::size_t j = 0; j < n2_; ++j) pts.row(static_cast<Eigen::Index>(index(i, j))) = node(i, j).transpose();
  return PointCloud(std::move(pts), topology_);
}

SolverOptions fd_solver_defaults() {
  SolverOptions o;
  o.direct_max_n = std::size_t{1} << 20;
  return o;
}

SparseMatrix fd_operator(const Grid2D& grid, double beta) {
  if (!(beta > 0.0)) throw_config(kModule, "beta must be positive");
  const std::size_t n1 = grid.n1();
  const std::size_t n2 = grid.n2();
  const std::size_t n = grid.size();
  const Vec& f = grid.free_energy();
  const double fmin = f.minCoeff();
  // Coefficient field exp(-beta F) M, shifted so the largest weight is 1.
  std::vector<double> a11(n), a12(n), a22(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double w = std::exp(-beta * (f[static_cast<Eigen::Index>(k)] - fmin));
    const Mat& m = grid.tensors()[k].matrix();
    a11[k] = w * m(0, 0);
    a12[k] = w * m(0, 1);
    a22[k] = w * m(1, 1);
  }
  const double h1 = grid.h1();
  const double h2 = grid.h2();

  SparseMatrix op(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  op.reserve(Eigen::VectorXi::Constant(static_cast<Eigen::Index>(n), 9));
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      const std::size_t k = grid.index(i, j);
      const auto si = static_cast<std::ptrdiff_t>(i);
      const auto sj = static_cast<std::ptrdiff_t>(j);
      // Entries of row k keyed by (di, dj) in {-1,0,1}^2.
      double c[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
      for (int d : {-1, 1}) {
        const std::size_t ni = wrap_index(si + d, n1);
        const std::size_t nj = wrap_index(sj + d, n2);
        const double cx = 0.5 * (a11[k] + a11[grid.index(ni, j)]) / (h1 * h1);
        const double cy = 0.5 * (a22[k] + a22[grid.index(i, nj)]) / (h2 * h2);
        c[d + 1][1] += cx;
        c[1][1] -= cx;
        c[1][d + 1] += cy;
        c[1][1] -= cy;
      }
      // d1(a12 d2 q) + d2(a12 d1 q) with central differences.
      for (int di : {-1, 1}) {
        for (int dj : {-1, 1}) {
          const double ai = a12[grid.index(wrap_index(si + di, n1), j)];
          const double aj = a12[grid.index(i, wrap_index(sj + dj, n2))];
          c[di + 1][dj + 1] += di * dj * (ai + aj) / (4.0 * h1 * h2);
        }
      }
      for (int di = -1; di <= 1; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          const double v = c[di + 1][dj + 1];
          if (v == 0.0 && !(di == 0 && dj == 0)) continue;
          op.insert(static_cast<Eigen::Index>(k),
                    static_cast<Eigen::Index>(grid.index(wrap_index(si + di, n1), wrap_index(sj + dj, n2)))) = v;
        }
      }
    }
  }
  op.makeCompressed();
  return op;
}

FdSolution fd_committor(const Grid2D& grid, double beta, const RegionSpec& a, const RegionSpec& b,
                        const SolverOptions& options) {
  const PointCloud nodes = grid.nodes();
  FdSolution sol;
  sol.a_nodes = members(a, nodes);
  sol.b_nodes = members(b, nodes);
  if (sol.a_nodes.empty()) throw_data(kModule, "region A contains no grid nodes; refine the grid or enlarge A");
  if (sol.b_nodes.empty()) throw_data(kModule, "region B contains no grid nodes; refine the grid or enlarge B");
  const std::size_t n = grid.size();
  std::vector<char> fixed(n, 0);
  Vec values = Vec::Zero(static_cast<Eigen::Index>(n));
  for (auto k : sol.a_nodes) fixed[k] = 1;
  for (auto k : sol.b_nodes) {
    if (fixed[k]) {
      std::ostringstream msg;
      msg << "grid node " << k << " lies in both A and B";
      throw_data(kModule, msg.str());
    }
    fixed[k] = 1;
    values[static_cast<Eigen::Index>(k)] = 1.0;
  }
  const SparseMatrix op = fd_operator(grid, beta);
  check_reachability(op, fixed, kModule);
  SolveResult r = solve_dirichlet(op, fixed, values, options, kModule);
  sol.q = std::move(r.x);
  sol.method = std::move(r.method);
  for (std::size_t k = 0; k < n; ++k)
    if (fixed[k]) sol.q[static_cast<Eigen::Index>(k)] = values[static_cast<Eigen::Index>(k)];
  clamp_committor(sol.q, kModule);
  const Vec res = op * sol.q;
  const double scale = op.coeffs().cwiseAbs().maxCoeff();
  for (std::size_t k = 0; k < n; ++k)
    if (!fixed[k]) sol.residual = std::max(sol.residual, std::abs(res[static_cast<Eigen::Index>(k)]) / scale);
  return sol;
}

Vec bilinear_interp(const Grid2D& grid, const Vec& values, const PointCloud& cloud) {
  if (cloud.dim() != 2) throw_data(kModule, "bilinear interpolation needs 2D points");
  if (!(cloud.topology() == grid.topology())) {
    throw_data(kModule, "point-cloud topology does not match the grid periods");
  }
  if (static_cast<std::size_t>(values.size()) != grid.size()) {
    throw_data(kModule, "node value count does not match the grid");
  }
  Vec out(static_cast<Eigen::Index>(cloud.size()));
  const double p1 = grid.topology().period(0);
  const double p2 = grid.topology().period(1);
  for (std::size_t r = 0; r < cloud.size(); ++r) {
    const double t1 = (cloud(r, 0) + 0.5 * p1) / grid.h1();
    const double t2 = (cloud(r, 1) + 0.5 * p2) / grid.h2();
    const double fl1 = std::floor(t1);
    const double fl2 = std::floor(t2);
    const double f1 = t1 - fl1;
    const double f2 = t2 - fl2;
    const std::size_t i0 = wrap_index(static_cast<std::ptrdiff_t>(fl1), grid.n1());
    const std::size_t j0 = wrap_index(static_cast<std::ptrdiff_t>(fl2), grid.n2());
    const std::size_t i1 = (i0 + 1) % grid.n1();
    const std::size_t j1 = (j0 + 1) % grid.n2();
    auto v = [&](std::size_t i, std::size_t j) { return values[static_cast<Eigen::Index>(grid.index(i, j))]; };
    out[static_cast<Eigen::Index>(r)] = (1 - f1) * (1 - f2) * v(i0, j0) + f1 * (1 - f2) * v(i1, j0) +
                                        (1 - f1) * f2 * v(i0, j1) + f1 * f2 * v(i1, j1);
  }
  return out;
}

double rms_error(const Vec& approx, const Vec& ref, const std::vector<std::size_t>& mask) {
  if (approx.size() != ref.size()) throw_data(kModule, "rms_error: vectors differ in length");
  if (mask.empty()) throw_data(kModule, "rms_error: empty mask");
  double s = 0.0;
  for (auto i : mask) {
    if (i >= static_cast<std::size_t>(approx.size())) throw_data(kModule, "rms_error: mask index out of range");
    const double d = approx[static_cast<Eigen::Index>(i)] - ref[static_cast<Eigen::Index>(i)];
    s += d * d;
  }
  return std::sqrt(s / static_cast<double>(mask.size()));
}

double max_node_difference(const Grid2D& coarse, const Vec& q_coarse, const Grid2D& fine,
                           const Vec& q_fine) {
  if (fine.n1() != 2 * coarse.n1() || fine.n2() != 2 * coarse.n2()) {
    throw_config(kModule, "the fine grid must have twice the coarse resolution");
  }
  double out = 0.0;
  for (std::size_t i = 0; i < coarse.n1(); ++i) {
    for (std::size_t j = 0; j < coarse.n2(); ++j) {
      const double d = q_fine[static_cast<Eigen::Index>(fine.index(2 * i, 2 * j))] -
                       q_coarse[static_cast<Eigen::Index>(coarse.index(i, j))];
      out = std::max(out, std::abs(d));
    }
  }
  return out;
}

}  // namespace tptmap
