#pragma once

#include "psq/poly.hpp"

#include <vector>

namespace psq {

// F_q with q = r^t, realized as F_r[y]/(m(y)) for the least irreducible
// monic m of degree t. Element k encodes the polynomial whose base-r digits
// are the coefficients of k, so 0 and 1 are the usual constants and the
// prime subfield is {0, ..., r-1}.
class FieldTower {
public:
  FieldTower(int r, int t);

  int r() const { return r_; }
  int t() const { return t_; }
  int q() const { return q_; }
  ModPoly const &modulus() const { return modulus_; }

  int add(int a, int b) const { return add_[a * q_ + b]; }
  int sub(int a, int b) const { return add(a, neg_[b]); }
  int mul(int a, int b) const { return mul_[a * q_ + b]; }
  int neg(int a) const { return neg_[a]; }
  int inv(int a) const;
  int pow(int a, long long e) const;
  // A generator of the multiplicative group.
  int primitive() const { return prim_; }
  // Frobenius x -> x^r.
  int frob(int a) const { return pow(a, r_); }

private:
  int r_, t_, q_, prim_ = 1;
  ModPoly modulus_;
  std::vector<int> add_, mul_, neg_, inv_;
};

// Projective points of F_q^d, each normalized so its first nonzero
// coordinate is 1, in lexicographic order.
std::vector<std::vector<int>> projective_points(FieldTower const &f, int d);
int projective_index(std::vector<std::vector<int>> const &pts, std::vector<int> v,
                     FieldTower const &f);

} // namespace psq
