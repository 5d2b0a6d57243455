#include "spincorr/quantum_core.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spincorr {

namespace {

constexpr double inv_sqrt2 = 1.0 / std::numbers::sqrt2;

const Spinor& pick(const SpinorPair& p, int sign) { return sign > 0 ? p.plus : p.minus; }

}  // namespace

SpinorPair make_r_basis(const BlochDirection& r) {
  const double c = std::cos(0.5 * r.theta());
  const double s = std::sin(0.5 * r.theta());
  const Complex phase = std::polar(1.0, r.phi());
  SpinorPair out;
  out.plus = Spinor{{Complex{c}, phase * s}};
  out.minus = Spinor{{-std::conj(phase) * s, Complex{c}}};
  return out;
}

BipartiteState singlet() {
  return BipartiteState{{Complex{0.0}, Complex{inv_sqrt2}, Complex{-inv_sqrt2}, Complex{0.0}}};
}

BipartiteState singlet_in_basis(const BlochDirection& r) {
  const auto basis = make_r_basis(r);
  return Complex{inv_sqrt2} * (tensor(basis.plus, basis.minus) - tensor(basis.minus, basis.plus));
}

Operator2 spin_projection(const BlochDirection& n) {
  const Vec3 v = n.vector();
  Operator2 op;
  op(0, 0) = v.z;
  op(0, 1) = Complex{v.x, -v.y};
  op(1, 0) = Complex{v.x, v.y};
  op(1, 1) = -v.z;
  return op;
}

Operator4 joint_projection(const BlochDirection& a, const BlochDirection& b) {
  return kron(spin_projection(a), spin_projection(b));
}

double correlation_exact(const BlochDirection& a, const BlochDirection& b) {
  const auto psi = singlet();
  return expectation(psi, joint_projection(a, b), psi).real();
}

Complex CorrelationBreakdown::channel_sum() const {
  Complex acc = 0.0;
  for (const auto& ch : channels) acc += ch.eigenvalue ? double(*ch.eigenvalue) * ch.weight : ch.weight;
  return acc;
}

CorrelationBreakdown decompose_intermediate(const BlochDirection& a, const BlochDirection& b,
                                            const BlochDirection& r) {
  const auto psi = singlet();
  const auto basis = make_r_basis(r);
  const Operator4 left = kron(spin_projection(a), Operator2::identity());
  const Operator4 right = kron(Operator2::identity(), spin_projection(b));
  const BipartiteState left_bra = left * psi;  // (sigma.a (x) I) is Hermitian
  const BipartiteState right_ket = right * psi;

  // Psi^1 = |+r>|-r>, Psi^2 = |-r>|+r>, Psi^3 = |+r>|+r>, Psi^4 = |-r>|-r>
  constexpr std::array<std::pair<int, int>, 4> signs{{{+1, -1}, {-1, +1}, {+1, +1}, {-1, -1}}};

  CorrelationBreakdown out;
  out.mode = BreakdownMode::intermediate;
  for (int k = 0; k < 4; ++k) {
    const auto [s1, s2] = signs[k];
    const BipartiteState mid = tensor(pick(basis, s1), pick(basis, s2));
    out.channels[k] = {k + 1, inner(left_bra, mid) * inner(mid, right_ket), std::nullopt};
  }
  out.total = out.channel_sum().real();
  return out;
}

std::pair<int, int> channel_signs(int k) {
  switch (k) {
    case 1: return {+1, -1};
    case 2: return {-1, +1};
    case 3: return {+1, +1};
    case 4: return {-1, -1};
    default: throw std::out_of_range("channel index must be 1..4");
  }
}

BipartiteState eigenbasis_state(const BlochDirection& a, const BlochDirection& b, int k) {
  const auto [alpha, beta] = channel_signs(k);
  return tensor(pick(make_r_basis(a), alpha), pick(make_r_basis(b), beta));
}

CorrelationBreakdown decompose_eigenbasis(const BlochDirection& a, const BlochDirection& b) {
  const auto psi = singlet();
  CorrelationBreakdown out;
  out.mode = BreakdownMode::eigenbasis;
  for (int k = 1; k <= 4; ++k) {
    const auto [alpha, beta] = channel_signs(k);
    const double weight = std::norm(inner(eigenbasis_state(a, b, k), psi));
    out.channels[k - 1] = {k, Complex{weight}, alpha * beta};
  }
  out.total = out.channel_sum().real();
  return out;
}

Complex single_spin_correlation(const Spinor& psi, const BlochDirection& a, const BlochDirection& b) {
  return expectation(psi, spin_projection(a) * spin_projection(b), psi);
}

double off_diagonal_modulus(const BlochDirection& r, const BlochDirection& a) {
  const auto basis = make_r_basis(r);
  return std::abs(expectation(basis.minus, spin_projection(a), basis.plus));
}

}  // namespace spincorr
