#include "psq/codes.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace psq {

namespace {

long long power(long long b, int e) {
  long long r = 1;
  while (e-- > 0)
    r *= b;
  return r;
}

int valuation(long long x, long long q, int t) {
  if (x == 0)
    return t;
  int v = 0;
  while (x % q == 0) {
    x /= q;
    ++v;
  }
  return v;
}

struct Howell {
  std::vector<Vec> rows;
  std::vector<int> cols, vals;
};

// Howell form of the row span over Z_{q^t}.
Howell howell_form(long long q, int t, int width, std::vector<Vec> pool) {
  long long n = power(q, t);
  Howell h;
  auto drop_zero = [](std::vector<Vec> &rows) {
    rows.erase(std::remove_if(rows.begin(), rows.end(),
                              [](Vec const &r) {
                                return std::all_of(r.begin(), r.end(),
                                                   [](long long x) { return x == 0; });
                              }),
               rows.end());
  };
  for (auto &r : pool)
    r = normalize_vec(std::move(r), n);
  drop_zero(pool);
  for (int j = 0; j < width && !pool.empty(); ++j) {
    int best = -1, bv = t;
    for (int r = 0; r < static_cast<int>(pool.size()); ++r) {
      int v = valuation(pool[r][j], q, t);
      if (v < bv) {
        bv = v;
        best = r;
      }
    }
    if (best < 0)
      continue;
    Vec piv = std::move(pool[best]);
    pool.erase(pool.begin() + best);
    long long qv = power(q, bv);
    long long unit = piv[j] / qv;
    long long inv = mod_inverse(unit, n);
    for (auto &x : piv)
      x = x * inv % n;
    for (auto &r : pool) {
      if (r[j] == 0)
        continue;
      long long c = r[j] / qv;
      for (int k = j; k < width; ++k)
        r[k] = mod_norm(r[k] - c * piv[k], n);
    }
    if (bv > 0) {
      long long s = power(q, t - bv);
      Vec sat(width);
      for (int k = 0; k < width; ++k)
        sat[k] = piv[k] * s % n;
      pool.push_back(std::move(sat));
    }
    drop_zero(pool);
    h.rows.push_back(std::move(piv));
    h.cols.push_back(j);
    h.vals.push_back(bv);
  }
  for (std::size_t k = 0; k < h.rows.size(); ++k) {
    int j = h.cols[k];
    long long qv = power(q, h.vals[k]);
    for (std::size_t r = 0; r < k; ++r) {
      long long c = h.rows[r][j] / qv;
      if (c == 0)
        continue;
      for (int i = j; i < width; ++i)
        h.rows[r][i] = mod_norm(h.rows[r][i] - c * h.rows[k][i], n);
    }
  }
  return h;
}

// Rows of a Howell form over width w1 + w2 whose first w1 entries vanish,
// truncated to their last w2 entries.
std::vector<Vec> tail_rows(long long q, int t, int w1, int w2, std::vector<Vec> rows) {
  auto h = howell_form(q, t, w1 + w2, std::move(rows));
  std::vector<Vec> out;
  for (std::size_t k = 0; k < h.rows.size(); ++k)
    if (h.cols[k] >= w1)
      out.emplace_back(h.rows[k].begin() + w1, h.rows[k].end());
  return out;
}

std::vector<std::pair<long long, int>> factor_int(long long n) {
  std::vector<std::pair<long long, int>> out;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      int e = 0;
      while (n % d == 0) {
        n /= d;
        ++e;
      }
      out.emplace_back(d, e);
    }
  if (n > 1)
    out.emplace_back(n, 1);
  return out;
}

} // namespace

Vec normalize_vec(Vec v, long long n) {
  for (auto &x : v)
    x = mod_norm(x, n);
  return v;
}

Vec shift_vec(Vec const &v) {
  Vec w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    w[(i + 1) % v.size()] = v[i];
  return w;
}

Vec permute_vec(Vec const &v, Perm const &sigma) {
  Vec w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    w[sigma[static_cast<int>(i)]] = v[i];
  return w;
}

ModPoly vec_poly(Vec const &v, long long n) { return ModPoly(n, v); }

int hamming_weight(Vec const &v) {
  return static_cast<int>(std::count_if(v.begin(), v.end(), [](long long x) { return x != 0; }));
}

Code::Code(long long q, int t, int length, std::vector<Vec> gens)
    : q_(q), n_(power(q, t)), t_(t), m_(length) {
  if (!is_prime(q) || t < 1)
    throw DomainError("code modulus must be a prime power");
  for (auto const &g : gens)
    if (static_cast<int>(g.size()) != length)
      throw DomainError("generator length mismatch");
  auto h = howell_form(q, t, length, std::move(gens));
  rows_ = std::move(h.rows);
  piv_col_ = std::move(h.cols);
  piv_val_ = std::move(h.vals);
}

Code Code::full(long long q, int t, int length) {
  std::vector<Vec> g;
  for (int i = 0; i < length; ++i) {
    Vec e(length, 0);
    e[i] = 1;
    g.push_back(e);
  }
  return Code(q, t, length, g);
}

Code Code::repetition(long long q, int t, int length) {
  return Code(q, t, length, {Vec(length, 1)});
}

Code Code::sum_zero(long long q, int t, int length) {
  std::vector<Vec> g;
  for (int i = 1; i < length; ++i) {
    Vec e(length, 0);
    e[0] = -1;
    e[i] = 1;
    g.push_back(e);
  }
  return Code(q, t, length, g);
}

Code Code::from_generator(ModPoly const &g, int length) {
  auto f = factor_int(g.modulus());
  if (f.size() != 1)
    throw DomainError("code modulus must be a prime power");
  ModPoly r = mod_cyclic(g, length);
  std::vector<Vec> rows;
  for (int k = 0; k < length; ++k) {
    rows.push_back(r.to_vector(length));
    r = mod_cyclic(r * ModPoly::monomial(g.modulus(), 1), length);
  }
  return Code(f[0].first, f[0].second, length, rows);
}

BigInt Code::size() const {
  BigInt s = 1;
  for (int v : piv_val_)
    s *= power(q_, t_ - v);
  return s;
}

int Code::dimension() const {
  int d = 0;
  for (int v : piv_val_)
    d += t_ - v;
  return d;
}

bool Code::is_full() const { return size() == pow(BigInt(n_), static_cast<unsigned>(m_)); }

bool Code::contains(Vec const &v0) const {
  if (static_cast<int>(v0.size()) != m_)
    throw DomainError("vector length mismatch");
  Vec v = normalize_vec(v0, n_);
  std::size_t k = 0;
  for (int j = 0; j < m_; ++j) {
    if (k < rows_.size() && piv_col_[k] == j) {
      long long qv = power(q_, piv_val_[k]);
      if (v[j] % qv != 0)
        return false;
      long long c = v[j] / qv;
      for (int i = j; i < m_; ++i)
        v[i] = mod_norm(v[i] - c * rows_[k][i], n_);
      ++k;
    } else if (v[j] != 0) {
      return false;
    }
  }
  return true;
}

bool Code::contains(Code const &c) const {
  if (c.n_ != n_ || c.m_ != m_)
    return false;
  return std::all_of(c.rows_.begin(), c.rows_.end(), [&](Vec const &r) { return contains(r); });
}

bool Code::operator==(Code const &o) const {
  return q_ == o.q_ && t_ == o.t_ && m_ == o.m_ && rows_ == o.rows_;
}

Code Code::sum(Code const &o) const {
  if (o.n_ != n_ || o.m_ != m_)
    throw DomainError("code shape mismatch");
  auto g = rows_;
  g.insert(g.end(), o.rows_.begin(), o.rows_.end());
  return Code(q_, t_, m_, g);
}

Code Code::intersect(Code const &o) const {
  if (o.n_ != n_ || o.m_ != m_)
    throw DomainError("code shape mismatch");
  std::vector<Vec> big;
  for (auto const &r : rows_) {
    Vec x = r;
    x.insert(x.end(), r.begin(), r.end());
    big.push_back(x);
  }
  for (auto const &r : o.rows_) {
    Vec x = r;
    x.resize(2 * m_, 0);
    big.push_back(x);
  }
  return Code(q_, t_, m_, tail_rows(q_, t_, m_, m_, big));
}

Code Code::dual() const {
  int r = static_cast<int>(rows_.size());
  if (r == 0)
    return full(q_, t_, m_);
  std::vector<Vec> big;
  for (int j = 0; j < m_; ++j) {
    Vec x(r + m_, 0);
    for (int k = 0; k < r; ++k)
      x[k] = rows_[k][j];
    x[r + j] = 1;
    big.push_back(x);
  }
  return Code(q_, t_, m_, tail_rows(q_, t_, r, m_, big));
}

Code Code::scaled(long long c) const {
  auto g = rows_;
  for (auto &r : g)
    for (auto &x : r)
      x = x * mod_norm(c, n_) % n_;
  return Code(q_, t_, m_, g);
}

Code Code::permuted(Perm const &sigma) const {
  if (sigma.degree() != m_)
    throw DomainError("permutation degree mismatch");
  std::vector<Vec> g;
  for (auto const &r : rows_)
    g.push_back(permute_vec(r, sigma));
  return Code(q_, t_, m_, g);
}

bool Code::is_cyclic() const {
  return std::all_of(rows_.begin(), rows_.end(), [&](Vec const &r) { return contains(shift_vec(r)); });
}

Code Code::colon(int k) const {
  if (k <= 0)
    return *this;
  if (k >= t_)
    return full(q_, t_, m_);
  long long qk = power(q_, k);
  std::vector<Vec> big;
  for (int j = 0; j < m_; ++j) {
    Vec x(2 * m_, 0);
    x[j] = qk;
    x[m_ + j] = 1;
    big.push_back(x);
  }
  for (auto const &r : rows_) {
    Vec x = r;
    x.resize(2 * m_, 0);
    big.push_back(x);
  }
  return Code(q_, t_, m_, tail_rows(q_, t_, m_, m_, big));
}

Code Code::reduce_mod_prime() const {
  auto g = rows_;
  for (auto &r : g)
    for (auto &x : r)
      x %= q_;
  return Code(q_, 1, m_, g);
}

std::vector<Vec> Code::elements(unsigned long long limit) const {
  if (size() > limit)
    throw DomainError("code too large to enumerate");
  std::vector<Vec> out{Vec(m_, 0)};
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    long long ord = power(q_, t_ - piv_val_[k]);
    std::vector<Vec> next;
    next.reserve(out.size() * ord);
    for (auto const &v : out)
      for (long long c = 0; c < ord; ++c) {
        Vec w = v;
        for (int i = 0; i < m_; ++i)
          w[i] = (w[i] + c * rows_[k][i]) % n_;
        next.push_back(std::move(w));
      }
    out = std::move(next);
  }
  return out;
}

std::string Code::str() const {
  std::ostringstream os;
  os << "Code(Z_" << n_ << ", length " << m_ << ", order " << size() << ")[";
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    os << (k ? "; " : "");
    for (int i = 0; i < m_; ++i)
      os << (i ? " " : "") << rows_[k][i];
  }
  os << "]";
  return os.str();
}

ModPoly generator_polynomial(Code const &c) {
  if (c.exponent() != 1)
    throw DomainError("generator polynomial needs a prime field");
  if (!c.is_cyclic())
    throw DomainError("code is not cyclic");
  ModPoly g = ModPoly::x_pow_minus_one(c.modulus(), c.length());
  for (auto const &r : c.rows())
    g = poly_gcd(g, vec_poly(r, c.modulus()));
  return g;
}

// ---------------------------------------------------------------------------
// Induced codes

std::optional<Vec> z_exponents(Perm const &x, int p) {
  if (x.degree() != p * p)
    throw DomainError("degree must be p^2");
  Vec e(p, 0);
  for (int a = 0; a < p; ++a) {
    int y = x[a];
    if (y % p != a)
      return std::nullopt;
    int s = y / p;
    for (int b = 0; b < p; ++b)
      if (x[a + b * p] != a + ((b + s) % p) * p)
        return std::nullopt;
    e[a] = s;
  }
  return e;
}

Code code_of_standard(std::vector<Perm> const &gens, int p) {
  std::vector<Vec> rows;
  for (auto const &g : gens) {
    auto e = z_exponents(g, p);
    if (!e)
      throw DomainError("element is not a product of the z_i");
    rows.push_back(*e);
  }
  return Code(p, 1, p, rows);
}

namespace {

// Exponent e with h|blk = c^e, where c walks `lev` cyclically, or -1.
int power_on_levels(Perm const &h, std::vector<int> const &lev) {
  int p = static_cast<int>(lev.size());
  auto it = std::find(lev.begin(), lev.end(), h[lev[0]]);
  if (it == lev.end())
    return -1;
  int e = static_cast<int>(it - lev.begin());
  for (int b = 0; b < p; ++b)
    if (h[lev[b]] != lev[(b + e) % p])
      return -1;
  return e;
}

std::vector<int> levels_for_block(PermGroup const &p0, std::vector<int> const &blk) {
  bool sorted_ok = std::all_of(p0.generators().begin(), p0.generators().end(),
                               [&](Perm const &h) { return power_on_levels(h, blk) >= 0; });
  if (sorted_ok)
    return blk;
  for (auto const &h : p0.generators()) {
    if (h[blk[0]] == blk[0])
      continue;
    std::vector<int> lev{blk[0]};
    for (std::size_t b = 1; b < blk.size(); ++b)
      lev.push_back(h[lev.back()]);
    std::vector<int> s = lev;
    std::sort(s.begin(), s.end());
    if (s != blk || h[lev.back()] != lev[0])
      throw DomainError("group is not inside a conjugate of <z_i>");
    return lev;
  }
  return blk;
}

} // namespace

Perm block_frame(PermGroup const &p0, BlockSystem const &blocks, std::optional<Perm> const &mover) {
  int p = static_cast<int>(blocks.blocks.size());
  int n = p0.degree();
  if (p * p != n || !is_prime(p))
    throw DomainError("need p blocks of size p on p^2 points");
  for (auto const &b : blocks.blocks)
    if (static_cast<int>(b.size()) != p)
      throw DomainError("need p blocks of size p on p^2 points");
  std::vector<std::vector<int>> lev(p);
  if (mover) {
    lev[0] = levels_for_block(p0, blocks.blocks[0]);
    std::vector<bool> seen(p, false);
    Perm gk(n);
    for (int k = 0; k < p; ++k) {
      int blk = blocks.block_of[gk[lev[0][0]]];
      if (seen[blk])
        throw DomainError("mover does not permute the blocks cyclically");
      seen[blk] = true;
      if (k > 0)
        for (int b = 0; b < p; ++b)
          lev[k].push_back(gk[lev[0][b]]);
      gk = gk * *mover;
    }
  } else {
    for (int k = 0; k < p; ++k)
      lev[k] = levels_for_block(p0, blocks.blocks[k]);
  }
  std::vector<int> img(n);
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      img[a + b * p] = lev[a][b];
  return Perm(img);
}

Code induced_code(PermGroup const &p0, BlockSystem const &blocks, std::optional<Perm> const &mover) {
  for (auto const &h : p0.generators())
    if (!block_action(h, blocks).is_identity())
      throw DomainError("group moves a block");
  Perm lam = block_frame(p0, blocks, mover);
  Perm lam_inv = lam.inverse();
  int p = static_cast<int>(blocks.blocks.size());
  std::vector<Vec> rows;
  for (auto const &h : p0.generators()) {
    auto e = z_exponents(h.conj(lam_inv), p);
    if (!e)
      throw DomainError("group is not inside a conjugate of <z_i>");
    rows.push_back(*e);
  }
  return Code(p, 1, p, rows);
}

PermGroup group_from_code(Code const &c) {
  int p = c.length();
  if (c.exponent() != 1 || c.modulus() != p)
    throw DomainError("group_from_code needs a code of length p over F_p");
  if (!c.is_cyclic())
    throw DomainError("code is not cyclic");
  std::vector<Perm> gens;
  for (auto const &r : c.rows()) {
    std::vector<int> img(p * p);
    for (int a = 0; a < p; ++a)
      for (int b = 0; b < p; ++b)
        img[a + b * p] = a + static_cast<int>((b + r[a]) % p) * p;
    gens.emplace_back(img);
  }
  std::vector<int> rho2(p * p);
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      rho2[a + b * p] = (a + 1) % p + b * p;
  gens.emplace_back(rho2);
  return PermGroup(p * p, gens);
}

// ---------------------------------------------------------------------------
// Degeneracy

namespace {

Code project(Code const &c, std::vector<int> const &coords) {
  std::vector<Vec> rows;
  for (auto const &r : c.rows()) {
    Vec x;
    for (int i : coords)
      x.push_back(r[i]);
    rows.push_back(x);
  }
  return Code(c.prime(), c.exponent(), static_cast<int>(coords.size()), rows);
}

// Partitions of the unused coordinates into parts of size k; parts are
// sorted and the first part always holds the least unused coordinate.
bool partitions(std::vector<bool> &used, int k, std::vector<std::vector<int>> &parts,
                std::function<bool(std::vector<std::vector<int>> const &)> const &f) {
  int m = static_cast<int>(used.size());
  int first = -1;
  for (int i = 0; i < m; ++i)
    if (!used[i]) {
      first = i;
      break;
    }
  if (first < 0)
    return f(parts);
  std::vector<int> part{first};
  used[first] = true;
  std::function<bool(int)> extend = [&](int from) -> bool {
    if (static_cast<int>(part.size()) == k) {
      parts.push_back(part);
      bool r = partitions(used, k, parts, f);
      parts.pop_back();
      return r;
    }
    for (int i = from; i < m; ++i) {
      if (used[i])
        continue;
      used[i] = true;
      part.push_back(i);
      bool r = extend(i + 1);
      part.pop_back();
      used[i] = false;
      if (r)
        return true;
    }
    return false;
  };
  bool r = extend(first + 1);
  used[first] = false;
  return r;
}

} // namespace

bool is_degenerate(Code const &c) {
  int m = c.length();
  if (m > 12)
    throw DomainError("degeneracy scan limited to length 12");
  for (int k = 1; k < m; ++k) {
    if (m % k)
      continue;
    std::vector<bool> used(m, false);
    std::vector<std::vector<int>> parts;
    bool found = partitions(used, k, parts, [&](std::vector<std::vector<int>> const &ps) {
      Code d = project(c, ps[0]);
      for (std::size_t i = 1; i < ps.size(); ++i)
        if (project(c, ps[i]) != d)
          return false;
      return c.size() == pow(d.size(), static_cast<unsigned>(m / k));
    });
    if (found)
      return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Monomial maps

MonomialMap MonomialMap::identity(int length, long long n) { return {Perm(length), Vec(length, 1), n}; }

MonomialMap MonomialMap::from_perm(Perm const &sigma, long long n) {
  return {sigma, Vec(sigma.degree(), 1), n};
}

Vec MonomialMap::apply(Vec const &v) const {
  if (v.size() != d.size())
    throw DomainError("vector length mismatch");
  Vec w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    w[sigma[static_cast<int>(i)]] = mod_norm(v[i] * d[i], n);
  return w;
}

MonomialMap MonomialMap::operator*(MonomialMap const &o) const {
  Vec e(d.size());
  for (std::size_t i = 0; i < d.size(); ++i)
    e[i] = d[i] * o.d[sigma[static_cast<int>(i)]] % n;
  return {sigma * o.sigma, e, n};
}

MonomialMap MonomialMap::inverse() const {
  Perm si = sigma.inverse();
  Vec e(d.size());
  for (std::size_t j = 0; j < d.size(); ++j)
    e[j] = mod_inverse(d[si[static_cast<int>(j)]], n);
  return {si, e, n};
}

bool is_invariant(Code const &c, std::vector<MonomialMap> const &gens) {
  for (auto const &g : gens) {
    if (static_cast<int>(g.d.size()) != c.length())
      throw DomainError("map length mismatch");
    for (auto const &r : c.rows())
      if (!c.contains(g.apply(r)))
        return false;
  }
  return true;
}

bool is_invariant(Code const &c, std::vector<Perm> const &gens) {
  for (auto const &g : gens) {
    if (g.degree() != c.length())
      throw DomainError("permutation degree mismatch");
    for (auto const &r : c.rows())
      if (!c.contains(permute_vec(r, g)))
        return false;
  }
  return true;
}

MonomialGroup monomial_aut(Code const &c, AutMode mode) {
  int m = c.length();
  long long n = c.modulus();
  bool full = mode == AutMode::Full;
  if (m > (full ? 5 : 7))
    throw DomainError("monomial automorphism search space too large");
  std::vector<long long> units;
  for (long long u = 1; u < n; ++u)
    if (std::gcd(u, n) == 1)
      units.push_back(u);
  if (!full)
    units = {1};
  MonomialGroup out;
  std::vector<Perm> sigmas;
  std::vector<int> a(m);
  std::iota(a.begin(), a.end(), 0);
  do {
    Perm s(a);
    bool any = false;
    std::vector<std::size_t> idx(m, 0);
    while (true) {
      Vec d(m);
      for (int i = 0; i < m; ++i)
        d[i] = units[idx[i]];
      MonomialMap g{s, d, n};
      bool ok = true;
      for (auto const &r : c.rows())
        if (!c.contains(g.apply(r))) {
          ok = false;
          break;
        }
      if (ok) {
        out.elements.push_back(g);
        any = true;
      }
      int k = 0;
      while (k < m && ++idx[k] == units.size())
        idx[k++] = 0;
      if (k == m)
        break;
    }
    if (any)
      sigmas.push_back(s);
  } while (std::next_permutation(a.begin(), a.end()));
  out.permutation_part = group_from_elements(m, sigmas);
  return out;
}

bool is_affine_invariant(Code const &c) {
  int p = c.length();
  if (!is_prime(p))
    throw DomainError("affine invariance needs prime length");
  std::vector<int> shift(p), mult(p);
  int beta = 1;
  for (int b = 2; b < p; ++b)
    if (multiplicative_order(b, p) == p - 1) {
      beta = b;
      break;
    }
  for (int i = 0; i < p; ++i) {
    shift[i] = (i + 1) % p;
    mult[i] = i * beta % p;
  }
  return is_invariant(c, std::vector<Perm>{Perm(shift), Perm(mult)});
}

// ---------------------------------------------------------------------------
// Invariant cyclic codes

std::vector<int> unit_subgroup(int p, std::vector<int> const &gens) {
  std::vector<int> elems{1};
  std::vector<bool> in(p, false);
  in[1] = true;
  for (std::size_t k = 0; k < elems.size(); ++k)
    for (int g : gens) {
      int y = static_cast<int>(static_cast<long long>(elems[k]) * mod_norm(g, p) % p);
      if (y == 0)
        throw DomainError("multiplier is not a unit mod p");
      if (!in[y]) {
        in[y] = true;
        elems.push_back(y);
      }
    }
  std::sort(elems.begin(), elems.end());
  return elems;
}

std::vector<std::vector<int>> unit_subgroups(int p) {
  int beta = 1;
  for (int b = 2; b < p; ++b)
    if (multiplicative_order(b, p) == p - 1) {
      beta = b;
      break;
    }
  std::vector<std::vector<int>> out;
  for (int d = 1; d <= p - 1; ++d) {
    if ((p - 1) % d)
      continue;
    long long g = 1;
    for (int k = 0; k < (p - 1) / d; ++k)
      g = g * beta % p;
    out.push_back(unit_subgroup(p, {static_cast<int>(g)}));
  }
  return out;
}

int invariant_code_exponent(int p, long long q, std::vector<int> const &a) {
  auto gens = a;
  gens.push_back(static_cast<int>(q % p));
  return 1 + (p - 1) / static_cast<int>(unit_subgroup(p, gens).size());
}

std::vector<Code> invariant_cyclic_codes(int p, long long q, std::vector<int> const &a) {
  if (!is_prime(p))
    throw DomainError("length must be prime");
  if (!is_prime(q))
    throw DomainError("only prime fields are supported");
  std::vector<Code> out;
  if (q == p) {
    // Every cyclic code over F_p of length p has generator (x-1)^i.
    ModPoly g = ModPoly::one(q), lin(q, {-1, 1});
    for (int i = 0; i <= p; ++i) {
      out.push_back(Code::from_generator(g, p));
      g = g * lin;
    }
    return out;
  }
  auto factors = factor_xp_minus_1(p, q);
  int r = static_cast<int>(factors.size());
  std::vector<int> comp(r);
  std::iota(comp.begin(), comp.end(), 0);
  std::function<int(int)> find = [&](int x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };
  ModPoly xp = ModPoly::x_pow_minus_one(q, p);
  for (int i = 0; i < r; ++i)
    for (int mult : a) {
      ModPoly img = poly_gcd(substitute_power(factors[i], mod_norm(mult, p), p), xp);
      auto it = std::find(factors.begin(), factors.end(), img);
      if (it == factors.end())
        throw std::logic_error("factor image is not irreducible");
      comp[find(i)] = find(static_cast<int>(it - factors.begin()));
    }
  std::vector<std::vector<int>> orbit_list;
  std::map<int, int> slot;
  for (int i = 0; i < r; ++i) {
    int root = find(i);
    if (!slot.count(root)) {
      slot[root] = static_cast<int>(orbit_list.size());
      orbit_list.emplace_back();
    }
    orbit_list[slot[root]].push_back(i);
  }
  int k = static_cast<int>(orbit_list.size());
  std::vector<std::pair<Vec, Code>> keyed;
  for (int mask = 0; mask < (1 << k); ++mask) {
    ModPoly g = ModPoly::one(q);
    for (int o = 0; o < k; ++o)
      if (mask >> o & 1)
        for (int i : orbit_list[o])
          g = g * factors[i];
    Vec key = g.coeffs();
    key.resize(p + 1, 0);
    keyed.emplace_back(key, Code::from_generator(g, p));
  }
  std::sort(keyed.begin(), keyed.end(),
            [](auto const &x, auto const &y) { return x.first < y.first; });
  for (auto &kc : keyed)
    out.push_back(std::move(kc.second));
  return out;
}

// ---------------------------------------------------------------------------
// Composite moduli

BigInt CompositeCode::size() const {
  BigInt s = 1;
  for (auto const &c : parts)
    s *= c.size();
  return s;
}

bool CompositeCode::contains(Vec const &v) const {
  for (std::size_t i = 0; i < parts.size(); ++i) {
    Vec w = normalize_vec(v, moduli[i]);
    if (!parts[i].contains(w))
      return false;
  }
  return true;
}

std::vector<Vec> CompositeCode::generators() const {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    long long ni = moduli[i], rest = n / ni;
    // e = 1 mod ni, 0 mod rest.
    long long e = rest * mod_inverse(rest % ni, ni) % n;
    for (auto const &r : parts[i].rows()) {
      Vec x(length);
      for (int j = 0; j < length; ++j)
        x[j] = static_cast<long long>(static_cast<__int128>(r[j]) * e % n);
      out.push_back(x);
    }
  }
  return out;
}

CompositeCode crt_decompose(long long n, int length, std::vector<Vec> const &gens) {
  if (n < 2)
    throw DomainError("modulus must be at least 2");
  CompositeCode out;
  out.n = n;
  out.length = length;
  for (auto [q, t] : factor_int(n)) {
    long long ni = power(q, t);
    std::vector<Vec> g;
    for (auto const &v : gens)
      g.push_back(normalize_vec(v, ni));
    out.moduli.push_back(ni);
    out.parts.emplace_back(q, t, length, g);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Chains

CodeChain chain_of_code(Code const &c) {
  CodeChain ch{c.prime(), c.exponent(), {}};
  for (int i = 0; i < c.exponent(); ++i)
    ch.levels.push_back(c.colon(i).reduce_mod_prime());
  return ch;
}

std::vector<Perm> tag_generators(GroupTag const &tag, int p) {
  std::vector<int> shift(p);
  for (int i = 0; i < p; ++i)
    shift[i] = (i + 1) % p;
  switch (tag.kind) {
  case GroupTag::Cyclic:
    return {Perm(shift)};
  case GroupTag::Affine: {
    std::vector<Perm> g{Perm(shift)};
    for (int a : tag.multipliers) {
      std::vector<int> img(p);
      for (int i = 0; i < p; ++i)
        img[i] = static_cast<int>(static_cast<long long>(i) * mod_norm(a, p) % p);
      g.emplace_back(img);
    }
    return g;
  }
  case GroupTag::Alternating:
    return PermGroup::alternating(p).generators();
  case GroupTag::Symmetric:
    return PermGroup::symmetric(p).generators();
  }
  return {};
}

Code code_from_chain(CodeChain const &ch, GroupTag const &tag) {
  if (static_cast<int>(ch.levels.size()) != ch.t || ch.t < 1)
    throw DomainError("chain must have t levels");
  int p = ch.levels[0].length();
  long long q = ch.q;
  long long n = power(q, ch.t);
  auto gens = tag_generators(tag, p);
  for (std::size_t i = 0; i < ch.levels.size(); ++i) {
    auto const &l = ch.levels[i];
    if (l.prime() != q || l.exponent() != 1 || l.length() != p)
      throw DomainError("chain levels must be codes over F_q of equal length");
    if (i > 0 && !l.contains(ch.levels[i - 1]))
      throw DomainError("chain is not increasing");
    if (!l.is_cyclic() || !is_invariant(l, gens))
      throw DomainError("chain level is not invariant under the tagged group");
  }
  std::vector<Vec> rows;
  long long qi = 1;
  for (int i = 0; i < ch.t; ++i, qi *= q) {
    auto const &l = ch.levels[i];
    if (l.is_zero())
      continue;
    ModPoly g(n);
    if (l.is_full())
      g = ModPoly::one(n);
    else if (l == Code::repetition(q, 1, p))
      g = ModPoly(n, Vec(p, 1));
    else if (l == Code::sum_zero(q, 1, p))
      g = ModPoly(n, {-1, 1});
    else
      g = hensel_lift(generator_polynomial(l), p, ch.t);
    Code ideal = Code::from_generator(g, p);
    for (auto const &r : ideal.rows()) {
      Vec x(p);
      for (int j = 0; j < p; ++j)
        x[j] = r[j] * qi % n;
      rows.push_back(x);
    }
  }
  Code c(q, ch.t, p, rows);
  if (!(chain_of_code(c) == ch))
    throw std::logic_error("constructed code does not reproduce its chain");
  return c;
}

} // namespace psq
