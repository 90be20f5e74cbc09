#include "psq/field.hpp"
#include "psq/perm.hpp"

#include <algorithm>

namespace psq {

namespace {

std::vector<long long> digits(int k, int r, int t) {
  std::vector<long long> d(t);
  for (int i = 0; i < t; ++i) {
    d[i] = k % r;
    k /= r;
  }
  return d;
}

int from_digits(ModPoly const &a, int r, int t) {
  int k = 0;
  for (int i = t - 1; i >= 0; --i)
    k = k * r + static_cast<int>(a.coeff(i));
  return k;
}

} // namespace

FieldTower::FieldTower(int r, int t) : r_(r), t_(t), q_(1), modulus_(r) {
  if (!is_prime(r) || t < 1)
    throw DomainError("field needs a prime r and t >= 1");
  for (int i = 0; i < t; ++i)
    q_ *= r;
  if (q_ > 256)
    throw DomainError("field too large");
  // Least irreducible monic of degree t, scanning coefficients in base r.
  if (t == 1) {
    modulus_ = ModPoly(r, {0, 1});
  } else {
    for (int k = 0; k < q_; ++k) {
      auto c = digits(k, r, t);
      c.push_back(1);
      ModPoly m(r, c);
      if (is_irreducible(m)) {
        modulus_ = m;
        break;
      }
    }
  }
  add_.resize(q_ * q_);
  mul_.resize(q_ * q_);
  neg_.resize(q_);
  inv_.assign(q_, 0);
  for (int a = 0; a < q_; ++a) {
    ModPoly pa(r, digits(a, r, t));
    neg_[a] = from_digits(pa.scaled(-1), r, t);
    for (int b = 0; b < q_; ++b) {
      ModPoly pb(r, digits(b, r, t));
      add_[a * q_ + b] = from_digits(pa + pb, r, t);
      mul_[a * q_ + b] = t == 1 ? static_cast<int>(a * b % r)
                                : from_digits(divmod(pa * pb, modulus_).second, r, t);
    }
  }
  for (int a = 1; a < q_; ++a)
    for (int b = 1; b < q_; ++b)
      if (mul(a, b) == 1)
        inv_[a] = b;
  for (int g = 1; g < q_; ++g) {
    int x = g, ord = 1;
    while (x != 1) {
      x = mul(x, g);
      ++ord;
    }
    if (ord == q_ - 1) {
      prim_ = g;
      break;
    }
  }
}

int FieldTower::inv(int a) const {
  if (a == 0)
    throw DomainError("zero has no inverse");
  return inv_[a];
}

int FieldTower::pow(int a, long long e) const {
  int x = 1;
  for (long long i = 0; i < e; ++i)
    x = mul(x, a);
  return x;
}

std::vector<std::vector<int>> projective_points(FieldTower const &f, int d) {
  std::vector<std::vector<int>> out;
  for (int lead = 0; lead < d; ++lead) {
    int free = d - 1 - lead;
    long long count = 1;
    for (int i = 0; i < free; ++i)
      count *= f.q();
    for (long long k = 0; k < count; ++k) {
      std::vector<int> v(d, 0);
      v[lead] = 1;
      long long x = k;
      for (int i = d - 1; i > lead; --i) {
        v[i] = static_cast<int>(x % f.q());
        x /= f.q();
      }
      out.push_back(v);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int projective_index(std::vector<std::vector<int>> const &pts, std::vector<int> v,
                     FieldTower const &f) {
  auto it = std::find_if(v.begin(), v.end(), [](int x) { return x != 0; });
  if (it == v.end())
    throw DomainError("zero vector is not a projective point");
  int s = f.inv(*it);
  for (auto &x : v)
    x = f.mul(x, s);
  auto pos = std::lower_bound(pts.begin(), pts.end(), v);
  if (pos == pts.end() || *pos != v)
    throw DomainError("point not found");
  return static_cast<int>(pos - pts.begin());
}

} // namespace psq
