#pragma once

#include "psq/group.hpp"

namespace psq {

enum class ScalarKind { Bar, Tilde, Hat };

// bar: (a, b) -> (beta a, b); tilde: (a, b) -> (a, beta b), beta a unit mod p.
// hat: x -> beta x mod p^2 on the integer labels, beta a unit mod p^2.
Perm scalar_map(int p, ScalarKind kind, long long beta);

// Smallest primitive root mod p.
long long smallest_primitive_root(int p);

// N_{S_{p^2}}(P_i): <tau, gamma_i, gamma_{i+1}, hat beta> for i < p with beta
// of order p - 1 mod p^2, and <tau, gamma_p, bar beta, tilde beta> at i = p.
PermGroup normalizer_Pi(int p, int i);
// N_{S_{p^2}}(P'_i): AGL(2, p) at i = 1, otherwise
// <rho1, rho2, gamma_i, gamma_{i+1}, bar beta, tilde beta>.
PermGroup normalizer_Pi_prime(int p, int i);

} // namespace psq
