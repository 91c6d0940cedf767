#pragma once

#include <vector>

#include "clusterkit/distance_matrix.hpp"
#include "clusterkit/embedded_dataset.hpp"

namespace clusterkit {

/// Double-centered Gram matrix G = -1/2 J D2 J, where D2 holds squared
/// distances and J = I - (1/n) 1 1^T. Rows sum to zero; G is PSD exactly
/// when d is realizable by Euclidean points.
std::vector<std::vector<double>> gram_matrix(const DistanceMatrix& d);

struct EigenResult {
  std::vector<double> values;                // sorted descending
  std::vector<std::vector<double>> vectors;  // vectors[i] pairs with values[i], orthonormal
};

/// Cyclic Jacobi eigendecomposition with a fixed sweep order, so results
/// are bit-reproducible for identical input. Input must be symmetric.
/// Satisfies mat * v = lambda * v within tol * ||mat||.
EigenResult symmetric_eigen(const std::vector<std::vector<double>>& mat, double tol = 1e-12);

struct GramAnalysis {
  std::vector<double> eigenvalues;  // sorted descending
  double min_eigenvalue = 0.0;
  bool is_psd = false;              // min >= -tol * max(1, max eigenvalue)
  double required_delta = 0.0;      // smallest squared shift making d embeddable
};

/// Spectral embeddability report. Shifting squared distances by delta
/// moves every non-trivial Gram eigenvalue up by delta/2, so
/// required_delta = 2 * max(0, -min_eigenvalue) is minimal.
GramAnalysis analyze(const DistanceMatrix& d, double tol = 1e-10);

/// Classical coordinates from the Gram eigendecomposition; dimensions with
/// eigenvalues at or below tol * (largest eigenvalue) are dropped, so the
/// result has dim <= n - 1. Requires analyze(d, tol).is_psd.
EmbeddedDataset embed(const DistanceMatrix& d, double tol = 1e-10);

struct EuclideanizeResult {
  EmbeddedDataset points;
  double delta_used = 0.0;
  GramAnalysis analysis;  // of the input matrix
};

/// Embeds d directly when PSD, otherwise applies the minimal squared shift
/// first. The result reproduces the (possibly shifted) distances.
EuclideanizeResult euclideanize(const DistanceMatrix& d, double tol = 1e-10);

}  // namespace clusterkit
