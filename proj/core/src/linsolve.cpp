#include "tptmap/linsolve.hpp"

#include "tptmap/error.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/LU>
#include <Eigen/SparseLU>

#include <sstream>

namespace tptmap {

namespace {

SparseMatrix replace_rows(const SparseMatrix& a, const std::vector<char>& fixed) {
  const Eigen::Index n = a.rows();
  std::vector<int> counts(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    counts[static_cast<std::size_t>(i)] =
        fixed[static_cast<std::size_t>(i)] ? 1 : static_cast<int>(a.outerIndexPtr()[i + 1] - a.outerIndexPtr()[i]);
  }
  SparseMatrix out(n, n);
  std::size_t nnz = 0;
  for (int c : counts) nnz += static_cast<std::size_t>(c);
  out.resizeNonZeros(static_cast<Eigen::Index>(nnz));
  int* outer = out.outerIndexPtr();
  int* inner = out.innerIndexPtr();
  double* values = out.valuePtr();
  outer[0] = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    int p = outer[i];
    if (fixed[static_cast<std::size_t>(i)]) {
      inner[p] = static_cast<int>(i);
      values[p] = 1.0;
      ++p;
    } else {
      for (int q = a.outerIndexPtr()[i]; q < a.outerIndexPtr()[i + 1]; ++q, ++p) {
        inner[p] = a.innerIndexPtr()[q];
        values[p] = a.valuePtr()[q];
      }
    }
    outer[i + 1] = p;
  }
  out.finalize();
  return out;
}

}  // namespace

SolveResult solve_dirichlet(const SparseMatrix& a, const std::vector<char>& fixed,
                            const Vec& values, const SolverOptions& options,
                            const char* module) {
  const auto n = static_cast<std::size_t>(a.rows());
  if (a.rows() != a.cols() || fixed.size() != n || static_cast<std::size_t>(values.size()) != n) {
    throw_data(module, "solve_dirichlet: size mismatch");
  }
  SparseMatrix m = replace_rows(a, fixed);
  Vec rhs = Vec::Zero(a.rows());
  for (std::size_t i = 0; i < n; ++i) {
    if (fixed[i]) rhs[static_cast<Eigen::Index>(i)] = values[static_cast<Eigen::Index>(i)];
  }

  SolveResult out;
  if (n <= options.direct_max_n) {
    const double fill = static_cast<double>(m.nonZeros()) / (static_cast<double>(n) * static_cast<double>(n));
    if (fill > options.dense_fill_threshold) {
      Mat dense = Mat(m);
      m.resize(0, 0);
      Eigen::PartialPivLU<Mat> lu(dense);
      out.x = lu.solve(rhs);
      out.method = "dense-lu";
    } else {
      Eigen::SparseMatrix<double, Eigen::ColMajor, int> cm = m;
      Eigen::SparseLU<Eigen::SparseMatrix<double, Eigen::ColMajor, int>, Eigen::COLAMDOrdering<int>> lu;
      lu.compute(cm);
      if (lu.info() != Eigen::Success) {
        throw_numerical(module, "sparse LU factorization failed: " + lu.lastErrorMessage());
      }
      out.x = lu.solve(rhs);
      if (lu.info() != Eigen::Success) throw_numerical(module, "sparse LU solve failed");
      out.method = "sparse-lu";
    }
  } else {
    Eigen::BiCGSTAB<SparseMatrix, Eigen::IncompleteLUT<double, int>> solver;
    solver.setTolerance(options.tolerance);
    solver.setMaxIterations(options.max_iterations);
    solver.compute(m);
    if (solver.info() != Eigen::Success) throw_numerical(module, "preconditioner setup failed");
    out.x = solver.solveWithGuess(rhs, rhs);
    out.iterations = static_cast<int>(solver.iterations());
    out.estimated_error = solver.error();
    out.method = "bicgstab";
    if (solver.info() != Eigen::Success) {
      std::ostringstream msg;
      msg << "BiCGSTAB did not converge after " << solver.iterations()
          << " iterations (estimated error " << solver.error() << ")";
      throw_numerical(module, msg.str());
    }
  }
  if (!out.x.allFinite()) throw_numerical(module, "linear solve produced non-finite values");
  return out;
}

}  // namespace tptmap
