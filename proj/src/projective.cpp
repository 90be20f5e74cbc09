#include "psq/projective.hpp"
#include "psq/pgroups.hpp"

#include <algorithm>

namespace psq {

std::vector<TupleH> hyperplane_tuples(int r, int t, int d, int c) {
  if (!is_prime(r) || t < 1 || d < 2)
    throw DomainError("need r prime, t >= 1, d >= 2");
  if (c < 1 || t % c)
    throw DomainError("c must divide t");
  std::vector<TupleH> out;
  // Tuples are determined by their first c entries.
  TupleH head(c, 1);
  while (true) {
    TupleH s(t);
    for (int j = 0; j < t; ++j)
      s[j] = head[j % c];
    bool ok = true;
    for (int j = 0; j < t && ok; ++j) {
      int v = r * s[(j + 1) % t] - s[j];
      ok = v >= 0 && v <= (r - 1) * d;
    }
    if (ok)
      out.push_back(s);
    int k = c - 1;
    while (k >= 0 && head[k] == d - 1)
      head[k--] = 1;
    if (k < 0)
      break;
    ++head[k];
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<TupleH> hyperplane_tuples_zero(int r, int t, int d, int c) {
  auto h = hyperplane_tuples(r, t, d, c);
  h.insert(h.begin(), TupleH(t, 0));
  return h;
}

bool tuple_leq(TupleH const &a, TupleH const &b) {
  if (a == b)
    return true;
  auto zero = [](TupleH const &s) {
    return std::all_of(s.begin(), s.end(), [](int x) { return x == 0; });
  };
  if (zero(a) || zero(b))
    return false;
  for (std::size_t j = 0; j < a.size(); ++j)
    if (a[j] > b[j])
      return false;
  return true;
}

std::vector<std::vector<int>> basis_monomials(int q, int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> b(d, 0);
  while (true) {
    int deg = 0;
    bool top = true;
    for (int x : b) {
      deg += x;
      top = top && x == q - 1;
    }
    if (deg % (q - 1) == 0 && !top)
      out.push_back(b);
    int k = d - 1;
    while (k >= 0 && b[k] == q - 1)
      b[k--] = 0;
    if (k < 0)
      break;
    ++b[k];
  }
  return out;
}

int digit_rotation(int k, int r, int t) {
  int q = 1;
  for (int i = 0; i < t; ++i)
    q *= r;
  if (k < 0 || k >= q)
    throw DomainError("digit rotation argument out of range");
  // The top digit moves to the bottom, the others shift up.
  int top = k / (q / r);
  return (k % (q / r)) * r + top;
}

TupleH tuple_of_monomial(std::vector<int> const &x, FieldTower const &f, int d) {
  int q = f.q();
  if (static_cast<int>(x.size()) != d)
    throw DomainError("monomial has the wrong number of variables");
  int deg = 0;
  bool top = true;
  for (int b : x) {
    if (b < 0 || b >= q)
      throw DomainError("not a basis monomial");
    deg += b;
    top = top && b == q - 1;
  }
  if (deg % (q - 1) || top)
    throw DomainError("not a basis monomial");
  TupleH s(f.t());
  std::vector<int> cur = x;
  for (int e = 0; e < f.t(); ++e) {
    int sum = 0;
    for (int b : cur)
      sum += b;
    s[e] = sum / (q - 1);
    for (auto &b : cur)
      b = digit_rotation(b, f.r(), f.t());
  }
  return s;
}

bool is_poset_ideal(PosetIdeal const &ideal, std::vector<TupleH> const &poset) {
  for (auto const &a : ideal) {
    if (std::find(poset.begin(), poset.end(), a) == poset.end())
      return false;
    for (auto const &b : poset)
      if (tuple_leq(b, a) && !ideal.count(b))
        return false;
  }
  return true;
}

std::vector<PosetIdeal> poset_ideals(std::vector<TupleH> const &poset) {
  if (poset.size() > 24)
    throw DomainError("poset too large for ideal enumeration");
  std::vector<PosetIdeal> out;
  for (unsigned long mask = 0; mask < (1UL << poset.size()); ++mask) {
    PosetIdeal s;
    for (std::size_t k = 0; k < poset.size(); ++k)
      if (mask >> k & 1)
        s.insert(poset[k]);
    if (is_poset_ideal(s, poset))
      out.push_back(s);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](auto const &a, auto const &b) { return a.size() < b.size(); });
  return out;
}

std::vector<int> evaluate_monomial(std::vector<int> const &x, FieldTower const &f, int d) {
  auto pts = projective_points(f, d);
  std::vector<int> out;
  for (auto const &v : pts) {
    int val = 1;
    for (int i = 0; i < d; ++i)
      val = f.mul(val, f.pow(v[i], x[i]));
    out.push_back(val);
  }
  return out;
}

Code module_from_ideal(PosetIdeal const &ideal, FieldTower const &f, int d) {
  int r = f.r(), t = f.t(), q = f.q();
  int n = static_cast<int>(projective_points(f, d).size());
  if (!is_poset_ideal(ideal, hyperplane_tuples_zero(r, t, d, t)))
    throw DomainError("not an ideal of H_0");
  std::vector<std::vector<int>> rows;
  for (auto const &x : basis_monomials(q, d))
    if (ideal.count(tuple_of_monomial(x, f, d)))
      rows.push_back(evaluate_monomial(x, f, d));
  if (rows.empty())
    return Code::zero(r, 1, n);
  // Elements of the F_q-span sum_k c_k w_k with c_k = sum_e x_{k,e} y^e;
  // the F_r-rational ones are cut out by linear conditions on the x_{k,e}.
  int k = static_cast<int>(rows.size());
  auto digit = [&](int z, int e) {
    for (int i = 0; i < e; ++i)
      z /= r;
    return z % r;
  };
  int ye = 1;
  std::vector<std::vector<int>> scaled(k * t); // y^e w_k
  for (int e = 0; e < t; ++e, ye *= r)
    for (int a = 0; a < k; ++a) {
      auto &row = scaled[a * t + e];
      for (int v : rows[a])
        row.push_back(f.mul(ye, v));
    }
  std::vector<Vec> cond;
  for (int j = 0; j < n; ++j)
    for (int e = 1; e < t; ++e) {
      Vec c(k * t);
      for (int u = 0; u < k * t; ++u)
        c[u] = digit(scaled[u][j], e);
      cond.push_back(c);
    }
  Code kernel = Code(r, 1, k * t, cond).dual();
  std::vector<Vec> gens;
  for (auto const &x : kernel.rows()) {
    Vec u(n, 0);
    for (int j = 0; j < n; ++j)
      for (int v = 0; v < k * t; ++v)
        u[j] += x[v] * digit(scaled[v][j], 0);
    gens.push_back(u);
  }
  return Code(r, 1, n, gens);
}

std::vector<InvariantModule> all_invariant_modules(FieldTower const &f, int d) {
  long long n = 0, qk = 1;
  for (int i = 0; i < d; ++i, qk *= f.q())
    n += qk;
  if (!is_prime(n))
    throw DomainError("(q^d - 1)/(q - 1) is not prime");
  auto psl = psl_projective(d, f.r(), f.t());
  std::vector<InvariantModule> out;
  for (auto const &ideal : poset_ideals(hyperplane_tuples_zero(f.r(), f.t(), d, f.t()))) {
    Code m = module_from_ideal(ideal, f, d);
    if (!is_invariant(m, psl.generators()))
      throw std::logic_error("module is not PSL-invariant");
    for (auto const &o : out)
      if (o.module == m)
        throw std::logic_error("distinct ideals gave equal modules");
    out.push_back({ideal, m});
  }
  return out;
}

} // namespace psq
