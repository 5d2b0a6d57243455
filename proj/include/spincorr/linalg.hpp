#pragma once

#include <array>
#include <complex>
#include <cstddef>

namespace spincorr {

using Complex = std::complex<double>;

/// Single-spin state over the z basis: index 0 is |+z>, index 1 is |-z>.
struct Spinor {
  std::array<Complex, 2> amp{};

  Complex& operator[](std::size_t i) { return amp[i]; }
  const Complex& operator[](std::size_t i) const { return amp[i]; }
};

/// Two-spin state over the product z basis, ordered (++, +-, -+, --);
/// index = 2 * i1 + i2.
struct BipartiteState {
  std::array<Complex, 4> amp{};

  Complex& operator[](std::size_t i) { return amp[i]; }
  const Complex& operator[](std::size_t i) const { return amp[i]; }
};

/// Dense N x N complex matrix, row-major.
template <std::size_t N>
struct Operator {
  std::array<Complex, N * N> m{};

  Complex& operator()(std::size_t r, std::size_t c) { return m[r * N + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return m[r * N + c]; }

  static Operator identity() {
    Operator out;
    for (std::size_t i = 0; i < N; ++i) out(i, i) = 1.0;
    return out;
  }
};

using Operator2 = Operator<2>;
using Operator4 = Operator<4>;

/// <u|v>, conjugate-linear in the first argument.
Complex inner(const Spinor& u, const Spinor& v);
Complex inner(const BipartiteState& u, const BipartiteState& v);

double norm(const Spinor& s);
double norm(const BipartiteState& s);

/// amplitude(i, j) = s1(i) * s2(j).
BipartiteState tensor(const Spinor& s1, const Spinor& s2);
Operator4 kron(const Operator2& a, const Operator2& b);

Spinor operator*(const Operator2& op, const Spinor& s);
BipartiteState operator*(const Operator4& op, const BipartiteState& s);
Operator2 operator*(const Operator2& a, const Operator2& b);
Operator4 operator*(const Operator4& a, const Operator4& b);

BipartiteState operator-(const BipartiteState& u, const BipartiteState& v);
BipartiteState operator*(Complex c, const BipartiteState& s);

/// Matrix element <u| op |v>.
Complex expectation(const Spinor& u, const Operator2& op, const Spinor& v);
Complex expectation(const BipartiteState& u, const Operator4& op, const BipartiteState& v);

/// |u><v|.
Operator4 outer(const BipartiteState& u, const BipartiteState& v);

template <std::size_t N>
Operator<N> adjoint(const Operator<N>& op) {
  Operator<N> out;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c) out(r, c) = std::conj(op(c, r));
  return out;
}

template <std::size_t N>
Complex trace(const Operator<N>& op) {
  Complex t = 0.0;
  for (std::size_t i = 0; i < N; ++i) t += op(i, i);
  return t;
}

/// Largest entrywise modulus of a - b.
template <std::size_t N>
double max_abs_diff(const Operator<N>& a, const Operator<N>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < N * N; ++i) worst = std::max(worst, std::abs(a.m[i] - b.m[i]));
  return worst;
}

template <std::size_t N>
Operator<N> operator+(const Operator<N>& a, const Operator<N>& b) {
  Operator<N> out;
  for (std::size_t i = 0; i < N * N; ++i) out.m[i] = a.m[i] + b.m[i];
  return out;
}

/// |<u|v>|, the global-phase-insensitive overlap used for state comparison.
double fidelity_amplitude(const BipartiteState& u, const BipartiteState& v);

}  // namespace spincorr
