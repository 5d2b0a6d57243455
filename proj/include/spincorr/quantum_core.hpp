#pragma once

// Exact two-spin correlation engine for the singlet state.
//
// Every quantity here is computed from explicit spinors and 2x2 / 4x4
// matrices; closed-form trigonometric expressions appear only in the
// *_closed_form helpers that tests use as cross-checks.

#include <array>
#include <optional>
#include <utility>

#include "spincorr/bloch_direction.hpp"
#include "spincorr/linalg.hpp"

namespace spincorr {

/// Eigenvector pair of sigma.r: first is |+r> (eigenvalue +1), second |-r>.
struct SpinorPair {
  Spinor plus;
  Spinor minus;
};

SpinorPair make_r_basis(const BlochDirection& r);

/// Singlet (0, 1/sqrt2, -1/sqrt2, 0) in the product z basis.
BipartiteState singlet();

/// The singlet assembled from an arbitrary r basis:
/// (|+r>|-r> - |-r>|+r>) / sqrt2.
BipartiteState singlet_in_basis(const BlochDirection& r);

/// sigma.n = n_x X + n_y Y + n_z Z.
Operator2 spin_projection(const BlochDirection& n);

/// (sigma.a) (x) (sigma.b).
Operator4 joint_projection(const BlochDirection& a, const BlochDirection& b);

/// <Psi0| (sigma.a)(x)(sigma.b) |Psi0> by full 4x4 matrix expectation.
double correlation_exact(const BlochDirection& a, const BlochDirection& b);

enum class BreakdownMode { intermediate, eigenbasis };

struct ChannelRecord {
  int k = 0;                      // 1..4
  Complex weight;                 // F_k, or C_k (real) in eigenbasis mode
  std::optional<int> eigenvalue;  // A_k, eigenbasis mode only
};

struct CorrelationBreakdown {
  BreakdownMode mode = BreakdownMode::intermediate;
  std::array<ChannelRecord, 4> channels{};
  double total = 0.0;

  /// Sum of channel contributions: sum F_k, or sum A_k C_k.
  Complex channel_sum() const;
};

/// Expansion over the r-basis product states
/// |+r-r>, |-r+r>, |+r+r>, |-r-r> (channels 1..4).
CorrelationBreakdown decompose_intermediate(const BlochDirection& a, const BlochDirection& b,
                                            const BlochDirection& r);

/// Expansion over the joint eigenstates
/// |+a>|-b>, |-a>|+b>, |+a>|+b>, |-a>|-b> with C_k = |<phi_k|Psi0>|^2.
CorrelationBreakdown decompose_eigenbasis(const BlochDirection& a, const BlochDirection& b);

/// Channel k of the joint eigenbasis (k in 1..4).
BipartiteState eigenbasis_state(const BlochDirection& a, const BlochDirection& b, int k);

/// Outcome signs (alpha_k, beta_k) of eigenbasis channel k.
std::pair<int, int> channel_signs(int k);

/// <psi| (sigma.a)(sigma.b) |psi> for a single spin. Complex in general;
/// real and equal to a.b when psi = |+a>.
Complex single_spin_correlation(const Spinor& psi, const BlochDirection& a, const BlochDirection& b);

/// |<-r| sigma.a |+r>|, which equals |r x a|.
double off_diagonal_modulus(const BlochDirection& r, const BlochDirection& a);

}  // namespace spincorr
