#include "psq/normalizers.hpp"
#include "psq/pgroups.hpp"

namespace psq {

long long smallest_primitive_root(int p) {
  if (!is_prime(p))
    throw DomainError("p must be prime");
  if (p == 2)
    return 1;
  for (long long g = 2; g < p; ++g)
    if (multiplicative_order(g, p) == p - 1)
      return g;
  throw std::logic_error("no primitive root");
}

Perm scalar_map(int p, ScalarKind kind, long long beta) {
  if (!is_prime(p))
    throw DomainError("p must be prime");
  int n = p * p;
  std::vector<int> img(n);
  if (kind == ScalarKind::Hat) {
    beta = mod_norm(beta, n);
    if (beta % p == 0)
      throw DomainError("beta must be a unit mod p^2");
    for (int x = 0; x < n; ++x)
      img[x] = static_cast<int>(beta * x % n);
    return Perm(img);
  }
  beta = mod_norm(beta, p);
  if (beta == 0)
    throw DomainError("beta must be a unit mod p");
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b) {
      int x = a + b * p;
      img[x] = kind == ScalarKind::Bar ? static_cast<int>(beta * a % p) + b * p
                                       : a + static_cast<int>(beta * b % p) * p;
    }
  return Perm(img);
}

namespace {

void check_index(int p, int i) {
  if (!is_prime(p))
    throw DomainError("p must be prime");
  if (i < 1 || i > p)
    throw DomainError("index i must satisfy 1 <= i <= p");
}

PermGroup wreath_normalizer(int p) {
  long long b = smallest_primitive_root(p);
  return PermGroup(p * p, {std_tau(p), std_gamma(p, p), scalar_map(p, ScalarKind::Bar, b),
                           scalar_map(p, ScalarKind::Tilde, b)});
}

} // namespace

PermGroup normalizer_Pi(int p, int i) {
  check_index(p, i);
  if (i == p)
    return wreath_normalizer(p);
  // r^p has order p - 1 mod p^2 when r is a primitive root mod p.
  long long n = static_cast<long long>(p) * p;
  long long beta = 1, r = smallest_primitive_root(p);
  for (int k = 0; k < p; ++k)
    beta = beta * r % n;
  return PermGroup(n, {std_tau(p), std_gamma(p, i), std_gamma(p, i + 1),
                       scalar_map(p, ScalarKind::Hat, beta)});
}

PermGroup normalizer_Pi_prime(int p, int i) {
  check_index(p, i);
  if (i == p)
    return wreath_normalizer(p);
  long long b = smallest_primitive_root(p);
  if (i == 1) {
    std::vector<int> shear(p * p), swap(p * p);
    for (int a = 0; a < p; ++a)
      for (int c = 0; c < p; ++c) {
        shear[a + c * p] = (a + c) % p + c * p;
        swap[a + c * p] = c + a * p;
      }
    return PermGroup(p * p, {std_rho1(p), std_rho2(p), Perm(shear), Perm(swap),
                             scalar_map(p, ScalarKind::Bar, b)});
  }
  return PermGroup(p * p, {std_rho1(p), std_rho2(p), std_gamma(p, i), std_gamma(p, i + 1),
                           scalar_map(p, ScalarKind::Bar, b),
                           scalar_map(p, ScalarKind::Tilde, b)});
}

} // namespace psq
