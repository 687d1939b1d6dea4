#include "swflow/clifford.hpp"

#include <stdexcept>

namespace swflow {

namespace {
constexpr cplx I{0.0, 1.0};
}

std::array<Mat2, 3> pauli() {
  return {Mat2{{0.0, 1.0, 1.0, 0.0}}, Mat2{{0.0, -I, I, 0.0}}, Mat2{{1.0, 0.0, 0.0, -1.0}}};
}

CliffordTable::CliffordTable(const std::array<Mat2, kDim>& sigma) : sigma_(sigma) {
  for (int mu = 0; mu < kDim; ++mu)
    for (int nu = 0; nu < kDim; ++nu)
      bivector_[mu * kDim + nu] = cplx(-1.0) * (sigma_[mu].adjoint() * sigma_[nu]);
}

double CliffordTable::clifford_defect() const {
  double d = 0.0;
  for (int mu = 0; mu < kDim; ++mu)
    for (int nu = 0; nu < kDim; ++nu) {
      const Mat2 target = mu == nu ? cplx(2.0) * Mat2::identity() : Mat2{};
      const Mat2 left = sigma_[mu].adjoint() * sigma_[nu] + sigma_[nu].adjoint() * sigma_[mu];
      const Mat2 right = sigma_[mu] * sigma_[nu].adjoint() + sigma_[nu] * sigma_[mu].adjoint();
      d = std::max({d, left.distance(target), right.distance(target)});
    }
  return d;
}

double CliffordTable::unitarity_defect() const {
  double d = 0.0;
  for (const Mat2& s : sigma_) d = std::max(d, (s.adjoint() * s).distance(Mat2::identity()));
  return d;
}

const CliffordTable& standard_table() {
  static const CliffordTable table = [] {
    const auto tau = pauli();
    return CliffordTable({-I * tau[0], -I * tau[1], -I * tau[2], Mat2::identity()});
  }();
  return table;
}

SpinorMinus clifford_mult(const CliffordTable& tbl, int mu, const SpinorPlus& phi) {
  if (mu < 0 || mu >= kDim) throw std::out_of_range("clifford_mult: direction out of range");
  return tbl.sigma(mu).apply<SpinorPlus, SpinorMinus>(phi);
}

SpinorPlus clifford_mult_adjoint(const CliffordTable& tbl, int mu, const SpinorMinus& psi) {
  if (mu < 0 || mu >= kDim) throw std::out_of_range("clifford_mult_adjoint: direction out of range");
  return tbl.sigma(mu).adjoint().apply<SpinorMinus, SpinorPlus>(psi);
}

PlaneFiber quadratic_form(const CliffordTable& tbl, const SpinorPlus& phi) {
  PlaneFiber out{};
  for (int p = 0; p < kPlanes; ++p) {
    const SpinorPlus b = tbl.plane_bivector(p).apply(phi);
    out[p] = (0.25 * I * inner(b, phi)).real();
  }
  return out;
}

SpinorPlus two_form_action(const CliffordTable& tbl, const PlaneFiber& w, const SpinorPlus& phi) {
  SpinorPlus out;
  for (int p = 0; p < kPlanes; ++p) out += cplx(w[p]) * tbl.plane_bivector(p).apply(phi);
  return out;
}

SpinorPlus selfdual_action(const CliffordTable& tbl, const PlaneFiber& w, const SpinorPlus& phi) {
  const PlaneFiber plus = selfdual_fiber(w);
  double total = 0.0;
  double anti = 0.0;
  for (int p = 0; p < kPlanes; ++p) {
    total += w[p] * w[p];
    anti += (w[p] - plus[p]) * (w[p] - plus[p]);
  }
  if (std::sqrt(anti) > 1e-10 * std::sqrt(total))
    throw std::invalid_argument("selfdual_action: 2-form is not self-dual");
  return two_form_action(tbl, w, phi);
}

}  // namespace swflow
