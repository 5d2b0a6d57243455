#include "spincorr/linalg.hpp"

#include <cmath>

namespace spincorr {

namespace {

template <std::size_t N>
Complex inner_impl(const std::array<Complex, N>& u, const std::array<Complex, N>& v) {
  Complex acc = 0.0;
  for (std::size_t i = 0; i < N; ++i) acc += std::conj(u[i]) * v[i];
  return acc;
}

template <std::size_t N>
std::array<Complex, N> apply(const Operator<N>& op, const std::array<Complex, N>& v) {
  std::array<Complex, N> out{};
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c) out[r] += op(r, c) * v[c];
  return out;
}

template <std::size_t N>
Operator<N> multiply(const Operator<N>& a, const Operator<N>& b) {
  Operator<N> out;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t k = 0; k < N; ++k)
      for (std::size_t c = 0; c < N; ++c) out(r, c) += a(r, k) * b(k, c);
  return out;
}

}  // namespace

Complex inner(const Spinor& u, const Spinor& v) { return inner_impl(u.amp, v.amp); }
Complex inner(const BipartiteState& u, const BipartiteState& v) { return inner_impl(u.amp, v.amp); }

double norm(const Spinor& s) { return std::sqrt(inner(s, s).real()); }
double norm(const BipartiteState& s) { return std::sqrt(inner(s, s).real()); }

BipartiteState tensor(const Spinor& s1, const Spinor& s2) {
  BipartiteState out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) out[2 * i + j] = s1[i] * s2[j];
  return out;
}

Operator4 kron(const Operator2& a, const Operator2& b) {
  Operator4 out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) out(2 * i + j, 2 * k + l) = a(i, k) * b(j, l);
  return out;
}

Spinor operator*(const Operator2& op, const Spinor& s) { return {apply(op, s.amp)}; }
BipartiteState operator*(const Operator4& op, const BipartiteState& s) { return {apply(op, s.amp)}; }
Operator2 operator*(const Operator2& a, const Operator2& b) { return multiply(a, b); }
Operator4 operator*(const Operator4& a, const Operator4& b) { return multiply(a, b); }

BipartiteState operator-(const BipartiteState& u, const BipartiteState& v) {
  BipartiteState out;
  for (std::size_t i = 0; i < 4; ++i) out[i] = u[i] - v[i];
  return out;
}

BipartiteState operator*(Complex c, const BipartiteState& s) {
  BipartiteState out;
  for (std::size_t i = 0; i < 4; ++i) out[i] = c * s[i];
  return out;
}

Complex expectation(const Spinor& u, const Operator2& op, const Spinor& v) {
  return inner(u, op * v);
}

Complex expectation(const BipartiteState& u, const Operator4& op, const BipartiteState& v) {
  return inner(u, op * v);
}

Operator4 outer(const BipartiteState& u, const BipartiteState& v) {
  Operator4 out;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) out(r, c) = u[r] * std::conj(v[c]);
  return out;
}

double fidelity_amplitude(const BipartiteState& u, const BipartiteState& v) {
  return std::abs(inner(u, v));
}

}  // namespace spincorr
