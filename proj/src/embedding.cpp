#include "clusterkit/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "clusterkit/transforms.hpp"

namespace clusterkit {

std::vector<std::vector<double>> gram_matrix(const DistanceMatrix& d) {
  int n = d.size();
  std::vector<std::vector<double>> sq(static_cast<std::size_t>(n),
                                      std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double v = d(i, j);
      sq[i][j] = v * v;
    }
  std::vector<double> row_mean(static_cast<std::size_t>(n), 0.0);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += sq[i][j];
    row_mean[i] = acc / static_cast<double>(n);
    total += acc;
  }
  double grand_mean = total / (static_cast<double>(n) * static_cast<double>(n));
  std::vector<std::vector<double>> g(static_cast<std::size_t>(n),
                                     std::vector<double>(static_cast<std::size_t>(n), 0.0));
  // Fill the upper triangle and mirror: the centering sum rounds
  // differently for (i, j) and (j, i), and the eigensolver rejects any
  // bitwise asymmetry.
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double v = -0.5 * (sq[i][j] - row_mean[i] - row_mean[j] + grand_mean);
      g[i][j] = v;
      g[j][i] = v;
    }
  return g;
}

EigenResult symmetric_eigen(const std::vector<std::vector<double>>& mat, double tol) {
  int n = static_cast<int>(mat.size());
  if (n < 1) throw std::invalid_argument("symmetric_eigen: empty matrix");
  for (const auto& row : mat)
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("symmetric_eigen: not square");
  double frob = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (mat[i][j] != mat[j][i]) throw std::invalid_argument("symmetric_eigen: not symmetric");
      frob += mat[i][j] * mat[i][j];
    }
  frob = std::sqrt(frob);

  // Work on a flat copy; v starts as the identity and accumulates rotations.
  std::vector<double> a(static_cast<std::size_t>(n) * n);
  std::vector<double> v(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    v[static_cast<std::size_t>(i) * n + i] = 1.0;
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i) * n + j] = mat[i][j];
  }
  auto at = [&a, n](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };
  auto vt = [&v, n](int i, int j) -> double& { return v[static_cast<std::size_t>(i) * n + j]; };

  double stop = std::max(tol, 1e-15) * std::max(frob, 1e-300);
  const int max_sweeps = 64;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += 2.0 * at(p, q) * at(p, q);
    if (std::sqrt(off) <= stop) break;
    // Fixed row-major sweep order keeps the iteration deterministic.
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = at(p, q);
        if (apq == 0.0) continue;
        double app = at(p, p);
        double aqq = at(q, q);
        double theta = (aqq - app) / (2.0 * apq);
        double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int i = 0; i < n; ++i) {
          double aip = at(i, p);
          double aiq = at(i, q);
          at(i, p) = c * aip - s * aiq;
          at(i, q) = s * aip + c * aiq;
        }
        for (int j = 0; j < n; ++j) {
          double apj = at(p, j);
          double aqj = at(q, j);
          at(p, j) = c * apj - s * aqj;
          at(q, j) = s * apj + c * aqj;
        }
        for (int i = 0; i < n; ++i) {
          double vip = vt(i, p);
          double viq = vt(i, q);
          vt(i, p) = c * vip - s * viq;
          vt(i, q) = s * vip + c * viq;
        }
      }
    }
  }

  // Sort descending; equal values keep their sweep order. Fix each
  // vector's sign by its largest-magnitude component.
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return at(x, x) > at(y, y); });
  EigenResult result;
  result.values.resize(static_cast<std::size_t>(n));
  result.vectors.assign(static_cast<std::size_t>(n),
                        std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int idx = 0; idx < n; ++idx) {
    int col = order[idx];
    result.values[idx] = at(col, col);
    double extreme = 0.0;
    for (int i = 0; i < n; ++i) {
      result.vectors[idx][i] = vt(i, col);
      if (std::abs(result.vectors[idx][i]) > std::abs(extreme)) extreme = result.vectors[idx][i];
    }
    if (extreme < 0.0)
      for (double& x : result.vectors[idx]) x = -x;
  }
  return result;
}

GramAnalysis analyze(const DistanceMatrix& d, double tol) {
  EigenResult eig = symmetric_eigen(gram_matrix(d));
  GramAnalysis out;
  out.eigenvalues = eig.values;
  out.min_eigenvalue = eig.values.back();
  double lambda_max = eig.values.front();
  out.is_psd = out.min_eigenvalue >= -tol * std::max(1.0, lambda_max);
  out.required_delta = out.is_psd ? 0.0 : 2.0 * (-out.min_eigenvalue);
  return out;
}

EmbeddedDataset embed(const DistanceMatrix& d, double tol) {
  int n = d.size();
  GramAnalysis check = analyze(d, tol);
  if (!check.is_psd)
    throw std::invalid_argument("embed: matrix is not Euclidean-realizable; shift it first");
  EigenResult eig = symmetric_eigen(gram_matrix(d));
  double lambda_max = eig.values.front();
  std::vector<int> kept;
  for (int i = 0; i < n; ++i)
    if (eig.values[i] > tol * lambda_max) kept.push_back(i);
  EmbeddedDataset points;
  points.n = n;
  points.dim = static_cast<int>(kept.size());
  points.coords.assign(static_cast<std::size_t>(n) * points.dim, 0.0);
  for (int c = 0; c < points.dim; ++c) {
    double root = std::sqrt(eig.values[kept[c]]);
    for (int i = 0; i < n; ++i) points.at(i, c) = root * eig.vectors[kept[c]][i];
  }
  return points;
}

EuclideanizeResult euclideanize(const DistanceMatrix& d, double tol) {
  EuclideanizeResult out;
  out.analysis = analyze(d, tol);
  out.delta_used = out.analysis.required_delta;
  if (out.analysis.is_psd) {
    out.points = embed(d, tol);
  } else {
    out.points = embed(shift_squared(d, out.delta_used), tol);
  }
  return out;
}

}  // namespace clusterkit
