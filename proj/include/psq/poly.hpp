#pragma once

#include <string>
#include <utility>
#include <vector>

namespace psq {

long long mod_norm(long long a, long long n);
long long mod_inverse(long long a, long long n); // throws if not a unit

// Polynomial with coefficients in Z_n, lowest degree first, no trailing zeros.
class ModPoly {
public:
  explicit ModPoly(long long n = 2, std::vector<long long> coeffs = {});

  static ModPoly one(long long n) { return ModPoly(n, {1}); }
  static ModPoly monomial(long long n, int k, long long c = 1);
  static ModPoly x_pow_minus_one(long long n, int p);
  static ModPoly parse(std::string const &text, long long n);

  long long modulus() const { return n_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  long long coeff(int k) const { return k < static_cast<int>(c_.size()) ? c_[k] : 0; }
  long long leading() const { return c_.empty() ? 0 : c_.back(); }
  std::vector<long long> const &coeffs() const { return c_; }
  std::vector<long long> to_vector(int length) const;

  ModPoly with_modulus(long long m) const;
  ModPoly scaled(long long c) const;
  ModPoly monic() const;

  std::string str() const;

  friend ModPoly operator+(ModPoly const &a, ModPoly const &b);
  friend ModPoly operator-(ModPoly const &a, ModPoly const &b);
  friend ModPoly operator*(ModPoly const &a, ModPoly const &b);
  bool operator==(ModPoly const &o) const { return n_ == o.n_ && c_ == o.c_; }
  bool operator!=(ModPoly const &o) const { return !(*this == o); }
  bool operator<(ModPoly const &o) const;

private:
  void trim();
  long long n_;
  std::vector<long long> c_;
};

// Division by b, whose leading coefficient must be a unit.
std::pair<ModPoly, ModPoly> divmod(ModPoly const &a, ModPoly const &b);
bool divides(ModPoly const &b, ModPoly const &a);
// Monic gcd over a prime field.
ModPoly poly_gcd(ModPoly a, ModPoly b);
// Returns (g, s, t) with s*a + t*b = g over a prime field.
struct PolyExtGcd {
  ModPoly g, s, t;
};
PolyExtGcd poly_ext_gcd(ModPoly const &a, ModPoly const &b);

// Reduction modulo x^p - 1 and the substitution x -> x^k.
ModPoly mod_cyclic(ModPoly const &a, int p);
ModPoly substitute_power(ModPoly const &a, int k, int p);
ModPoly pow_mod_cyclic(ModPoly const &a, int e, int p);

// Monic irreducible factors of x^p - 1 over the prime field F_q, sorted
// by degree and then by coefficients.
std::vector<ModPoly> factor_xp_minus_1(int p, long long q);
bool is_irreducible(ModPoly const &f);

// Unique monic divisor of x^p - 1 over Z_{q^t} reducing to f mod q.
ModPoly hensel_lift(ModPoly const &f, int p, int t);

int multiplicative_order(long long a, long long n);

} // namespace psq
