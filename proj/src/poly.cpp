#include "psq/poly.hpp"
#include "psq/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace psq {

long long mod_norm(long long a, long long n) { return ((a % n) + n) % n; }

long long mod_inverse(long long a, long long n) {
  long long g = n, x = 0, r = mod_norm(a, n), y = 1;
  while (r != 0) {
    long long q = g / r;
    std::tie(g, r) = std::make_pair(r, g - q * r);
    std::tie(x, y) = std::make_pair(y, x - q * y);
  }
  if (g != 1)
    throw DomainError("element is not a unit");
  return mod_norm(x, n);
}

ModPoly::ModPoly(long long n, std::vector<long long> coeffs) : n_(n), c_(std::move(coeffs)) {
  if (n < 2)
    throw DomainError("polynomial modulus must be at least 2");
  for (auto &c : c_)
    c = mod_norm(c, n_);
  trim();
}

void ModPoly::trim() {
  while (!c_.empty() && c_.back() == 0)
    c_.pop_back();
}

ModPoly ModPoly::monomial(long long n, int k, long long c) {
  std::vector<long long> v(k + 1, 0);
  v[k] = c;
  return ModPoly(n, v);
}

ModPoly ModPoly::x_pow_minus_one(long long n, int p) {
  std::vector<long long> v(p + 1, 0);
  v[0] = n - 1;
  v[p] = 1;
  return ModPoly(n, v);
}

std::vector<long long> ModPoly::to_vector(int length) const {
  if (degree() >= length)
    throw DomainError("polynomial degree exceeds vector length");
  std::vector<long long> v(length, 0);
  std::copy(c_.begin(), c_.end(), v.begin());
  return v;
}

ModPoly ModPoly::with_modulus(long long m) const { return ModPoly(m, c_); }

ModPoly ModPoly::scaled(long long c) const {
  auto v = c_;
  for (auto &x : v)
    x = (x * mod_norm(c, n_)) % n_;
  return ModPoly(n_, v);
}

ModPoly ModPoly::monic() const {
  if (is_zero())
    return *this;
  return scaled(mod_inverse(leading(), n_));
}

std::string ModPoly::str() const {
  if (c_.empty())
    return "0";
  std::ostringstream os;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (k)
      os << " + ";
    os << c_[k];
    if (k == 1)
      os << "*x";
    else if (k > 1)
      os << "*x^" << k;
  }
  return os.str();
}

ModPoly ModPoly::parse(std::string const &text, long long n) {
  std::vector<long long> v;
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch)))
      s.push_back(ch);
  if (s.empty())
    throw DomainError("empty polynomial text");
  std::size_t i = 0;
  auto read_num = [&](long long &out) {
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
      return false;
    out = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
      out = out * 10 + (s[i++] - '0');
    return true;
  };
  while (i < s.size()) {
    long long sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    }
    long long c = 1, e = 0;
    bool have_c = read_num(c);
    if (i < s.size() && s[i] == '*')
      ++i;
    if (i < s.size() && s[i] == 'x') {
      ++i;
      e = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        if (!read_num(e))
          throw DomainError("bad exponent in polynomial text");
      }
    } else if (!have_c) {
      throw DomainError("bad term in polynomial text");
    }
    if (static_cast<long long>(v.size()) <= e)
      v.resize(e + 1, 0);
    v[e] += sign * c;
    if (i < s.size() && s[i] != '+' && s[i] != '-')
      throw DomainError("unexpected character in polynomial text");
  }
  return ModPoly(n, v);
}

ModPoly operator+(ModPoly const &a, ModPoly const &b) {
  if (a.n_ != b.n_)
    throw DomainError("modulus mismatch");
  std::vector<long long> v(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t k = 0; k < v.size(); ++k)
    v[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
  return ModPoly(a.n_, v);
}

ModPoly operator-(ModPoly const &a, ModPoly const &b) { return a + b.scaled(-1); }

ModPoly operator*(ModPoly const &a, ModPoly const &b) {
  if (a.n_ != b.n_)
    throw DomainError("modulus mismatch");
  if (a.is_zero() || b.is_zero())
    return ModPoly(a.n_);
  std::vector<long long> v(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      v[i + j] = (v[i + j] + a.c_[i] * b.c_[j]) % a.n_;
  return ModPoly(a.n_, v);
}

bool ModPoly::operator<(ModPoly const &o) const {
  if (degree() != o.degree())
    return degree() < o.degree();
  return std::lexicographical_compare(c_.rbegin(), c_.rend(), o.c_.rbegin(), o.c_.rend());
}

std::pair<ModPoly, ModPoly> divmod(ModPoly const &a, ModPoly const &b) {
  if (b.is_zero())
    throw DomainError("division by zero polynomial");
  long long n = a.modulus();
  long long inv = mod_inverse(b.leading(), n);
  std::vector<long long> r = a.coeffs();
  int db = b.degree();
  std::vector<long long> q(std::max(0, a.degree() - db + 1), 0);
  for (int k = a.degree(); k >= db; --k) {
    long long c = r[k] * inv % n;
    if (c == 0)
      continue;
    q[k - db] = c;
    for (int j = 0; j <= db; ++j)
      r[k - db + j] = mod_norm(r[k - db + j] - c * b.coeff(j), n);
  }
  return {ModPoly(n, q), ModPoly(n, r)};
}

bool divides(ModPoly const &b, ModPoly const &a) { return divmod(a, b).second.is_zero(); }

ModPoly poly_gcd(ModPoly a, ModPoly b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

PolyExtGcd poly_ext_gcd(ModPoly const &a, ModPoly const &b) {
  long long n = a.modulus();
  ModPoly r0 = a, r1 = b, s0 = ModPoly::one(n), s1(n), t0(n), t1 = ModPoly::one(n);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    ModPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  long long inv = r0.is_zero() ? 1 : mod_inverse(r0.leading(), n);
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

ModPoly mod_cyclic(ModPoly const &a, int p) {
  std::vector<long long> v(p, 0);
  for (int k = 0; k <= a.degree(); ++k)
    v[k % p] += a.coeff(k);
  return ModPoly(a.modulus(), v);
}

ModPoly substitute_power(ModPoly const &a, int k, int p) {
  std::vector<long long> v(p, 0);
  for (int e = 0; e <= a.degree(); ++e)
    v[static_cast<long long>(e) * k % p] += a.coeff(e);
  return ModPoly(a.modulus(), v);
}

ModPoly pow_mod_cyclic(ModPoly const &a, int e, int p) {
  ModPoly r = ModPoly::one(a.modulus());
  for (int i = 0; i < e; ++i)
    r = mod_cyclic(r * a, p);
  return r;
}

namespace {

// All monic polynomials of degree d over F_q, in increasing coefficient order.
template <class F> bool for_each_monic(long long q, int d, F f) {
  std::vector<long long> c(d + 1, 0);
  c[d] = 1;
  while (true) {
    if (!f(ModPoly(q, c)))
      return false;
    int k = 0;
    while (k < d && ++c[k] == q)
      c[k++] = 0;
    if (k == d)
      return true;
  }
}

} // namespace

bool is_irreducible(ModPoly const &f) {
  if (f.degree() < 1)
    return false;
  long long q = f.modulus();
  if (!is_prime(q))
    throw DomainError("irreducibility test needs a prime field");
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    bool found = false;
    for_each_monic(q, d, [&](ModPoly const &g) {
      if (divides(g, f)) {
        found = true;
        return false;
      }
      return true;
    });
    if (found)
      return false;
  }
  return true;
}

std::vector<ModPoly> factor_xp_minus_1(int p, long long q) {
  if (!is_prime(q))
    throw DomainError("factorization is implemented over prime fields");
  if (p % q == 0)
    throw DomainError("p must not be divisible by q");
  ModPoly rest = ModPoly::x_pow_minus_one(q, p);
  std::vector<ModPoly> out;
  for (int d = 1; rest.degree() > 0; ++d) {
    if (d > rest.degree())
      throw DomainError("factorization failed");
    for_each_monic(q, d, [&](ModPoly const &g) {
      auto [quo, rem] = divmod(rest, g);
      if (rem.is_zero()) {
        out.push_back(g);
        rest = quo;
      }
      return rest.degree() > 0;
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

ModPoly hensel_lift(ModPoly const &f, int p, int t) {
  long long q = f.modulus();
  if (!is_prime(q))
    throw DomainError("hensel_lift expects a polynomial over a prime field");
  if (p % q == 0)
    throw DomainError("p must not be divisible by q");
  if (f.leading() != 1)
    throw DomainError("factor must be monic");
  ModPoly xp = ModPoly::x_pow_minus_one(q, p);
  auto [h, rem] = divmod(xp, f);
  if (!rem.is_zero())
    throw DomainError("polynomial does not divide x^p - 1");
  auto eg = poly_ext_gcd(f, h);
  if (eg.g.degree() != 0)
    throw DomainError("factor and cofactor are not coprime");

  // Linear lifting: from a factorization mod q^k to one mod q^(k+1).
  std::vector<long long> fc = f.coeffs(), hc = h.coeffs();
  long long qk = 1;
  for (int k = 1; k < t; ++k) {
    qk *= q;
    long long big = qk * q;
    ModPoly F(big, fc), H(big, hc);
    ModPoly err = ModPoly::x_pow_minus_one(big, p) - F * H;
    std::vector<long long> e(err.coeffs().size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (err.coeffs()[i] % qk != 0)
        throw DomainError("lifting invariant violated");
      e[i] = err.coeffs()[i] / qk;
    }
    ModPoly E(q, e);
    ModPoly df = divmod(eg.t * E, f).second;
    ModPoly dh = divmod(eg.s * E, h).second;
    fc.resize(std::max<std::size_t>(fc.size(), df.coeffs().size()), 0);
    hc.resize(std::max<std::size_t>(hc.size(), dh.coeffs().size()), 0);
    for (int i = 0; i <= df.degree(); ++i)
      fc[i] = mod_norm(fc[i] + qk * df.coeff(i), big);
    for (int i = 0; i <= dh.degree(); ++i)
      hc[i] = mod_norm(hc[i] + qk * dh.coeff(i), big);
  }
  long long n = 1;
  for (int k = 0; k < t; ++k)
    n *= q;
  ModPoly g(n, fc);
  if (!divides(g, ModPoly::x_pow_minus_one(n, p)))
    throw DomainError("lifted polynomial fails exact division");
  return g;
}

int multiplicative_order(long long a, long long n) {
  a = mod_norm(a, n);
  if (std::gcd(a, n) != 1)
    throw DomainError("element is not a unit");
  long long x = a;
  int k = 1;
  while (x != 1 % n) {
    x = x * a % n;
    ++k;
  }
  return k;
}

} // namespace psq
