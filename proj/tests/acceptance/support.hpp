#pragma once

#include "tptmap/cv_system.hpp"
#include "tptmap/generator.hpp"

#include <cstdint>

namespace acceptance {

/// n exact samples from N(0, cov).
tptmap::RowMatrix gaussian_samples(const tptmap::Mat& cov, std::size_t n, std::uint64_t seed);

/// n equispaced points on a ring of the given period.
tptmap::PointCloud ring(std::size_t n, double period);

/// Subsampled trajectory of a built-in system.
tptmap::PointCloud trajectory_cloud(const tptmap::CvSystem& system, const tptmap::Vec& x0, double dt,
                                    std::size_t n_steps, std::size_t stride, std::uint64_t seed);

tptmap::GeneratorMatrix generator(const tptmap::PointCloud& cloud, const tptmap::TensorField* field,
                                  tptmap::KernelKind kind, double eps, double alpha, double beta);

}  // namespace acceptance
