#include "tptmap/generator.hpp"

#include "tptmap/error.hpp"
#include "tptmap/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace tptmap {

namespace {
constexpr const char* kModule = "genmat";

Vec sparse_row_sums(const SparseMatrix& m) {
  const auto n = static_cast<std::size_t>(m.rows());
  Vec out(m.rows());
  const int* outer = m.outerIndexPtr();
  const double* values = m.valuePtr();
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      double s = 0.0;
      for (int p = outer[i]; p < outer[i + 1]; ++p) s += values[p];
      out[static_cast<Eigen::Index>(i)] = s;
    }
  });
  return out;
}
}  // namespace

Vec row_sums(const KernelMatrix& k) { return sparse_row_sums(k.k); }

GeneratorMatrix build_generator(KernelMatrix k, double alpha, double beta) {
  if (!std::isfinite(alpha)) throw_config(kModule, "alpha must be finite");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw_config(kModule, "beta must be positive");
  SparseMatrix& m = k.k;
  if (!m.isCompressed()) m.makeCompressed();
  const auto n = static_cast<std::size_t>(m.rows());
  const Vec p = sparse_row_sums(m);
  Vec scale(m.rows());
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (!(p[i] > 0.0)) {
      std::ostringstream msg;
      msg << "kernel row " << i << " sums to " << p[i];
      throw_numerical(kModule, msg.str());
    }
    scale[i] = std::pow(p[i], -alpha);
  }

  const int* outer = m.outerIndexPtr();
  const int* inner = m.innerIndexPtr();
  double* values = m.valuePtr();
  const double inv_eps = 1.0 / k.epsilon;
  std::vector<double> stoch(n, 0.0);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      double d = 0.0;
      for (int q = outer[i]; q < outer[i + 1]; ++q) {
        values[q] *= scale[inner[q]];
        d += values[q];
      }
      double total = 0.0;
      double off = 0.0;
      int diag = -1;
      for (int q = outer[i]; q < outer[i + 1]; ++q) {
        values[q] /= d;
        total += values[q];
        if (static_cast<std::size_t>(inner[q]) == i) {
          diag = q;
        } else {
          values[q] *= inv_eps;
          off += values[q];
        }
      }
      stoch[i] = std::abs(total - 1.0);
      // Every kernel row stores its unit diagonal.
      values[diag] = -off;
    }
  });

  GeneratorMatrix g;
  g.l = std::move(m);
  g.epsilon = k.epsilon;
  g.alpha = alpha;
  g.kind = k.kind;
  g.beta = beta;
  g.stochasticity_error = stoch.empty() ? 0.0 : *std::max_element(stoch.begin(), stoch.end());
  return g;
}

Vec apply(const GeneratorMatrix& l, const Vec& f) {
  if (static_cast<std::size_t>(f.size()) != l.size()) {
    std::ostringstream msg;
    msg << "vector length " << f.size() << " does not match generator size " << l.size();
    throw_data(kModule, msg.str());
  }
  return l.l * f;
}

GeneratorDiagnostics diagnose(const GeneratorMatrix& l) {
  GeneratorDiagnostics out;
  out.max_diagonal = -std::numeric_limits<double>::infinity();
  double min_off = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < l.l.outerSize(); ++i) {
    double s = 0.0;
    for (SparseMatrix::InnerIterator it(l.l, i); it; ++it) {
      s += it.value();
      if (it.col() == i) {
        out.max_diagonal = std::max(out.max_diagonal, it.value());
      } else {
        min_off = std::min(min_off, it.value());
      }
    }
    out.max_row_sum = std::max(out.max_row_sum, std::abs(s));
  }
  out.min_off_diagonal = std::isfinite(min_off) ? min_off : 0.0;
  const Vec ones = Vec::Ones(l.l.rows());
  out.max_abs_l_times_one = apply(l, ones).cwiseAbs().maxCoeff();
  return out;
}

}  // namespace tptmap
