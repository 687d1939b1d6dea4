#pragma once

#include "swflow/checks.hpp"

#include <Eigen/Dense>

#include <functional>
#include <random>

namespace swflow::testing {

/// Dense matrix of a real linear map, column j = op(e_j).
template <class In, class Out>
Eigen::MatrixXd dense(const Lattice& lat, const std::function<Out(const In&)>& op) {
  In e(lat);
  const Eigen::Index n = static_cast<Eigen::Index>(e.size());
  Eigen::MatrixXd M;
  for (Eigen::Index j = 0; j < n; ++j) {
    e[j] = 1.0;
    const Out col = op(e);
    if (M.size() == 0) M.resize(static_cast<Eigen::Index>(col.size()), n);
    for (Eigen::Index i = 0; i < M.rows(); ++i) M(i, j) = col[i];
    e[j] = 0.0;
  }
  return M;
}

inline double max_abs(const OneForm& a) {
  double m = 0.0;
  for (double v : a.values()) m = std::max(m, std::abs(v));
  return m;
}

template <class S>
double max_diff(const SpinorFieldT<S>& u, const SpinorFieldT<S>& v) {
  double m = 0.0;
  for (std::size_t x = 0; x < u.sites(); ++x) m = std::max(m, std::sqrt((u[x] - v[x]).norm2()));
  return m;
}

inline SpinorPlus random_spinor(std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  SpinorPlus p;
  for (int c = 0; c < 2; ++c) p[c] = cplx(n01(rng), n01(rng));
  return p;
}

}  // namespace swflow::testing
