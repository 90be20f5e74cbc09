#include "psq/wreath.hpp"
#include "psq/pgroups.hpp"
#include "psq/poly.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace psq {

namespace {

long long vec_count(int p, long long n) {
  long long c = 1;
  for (int i = 0; i < p; ++i) {
    c *= n;
    if (c > 4'000'000)
      throw DomainError("module too large for explicit cosets");
  }
  return c;
}

Vec decode(long long e, int p, long long n) {
  Vec v(p);
  for (int i = 0; i < p; ++i) {
    v[i] = e % n;
    e /= n;
  }
  return v;
}

Vec vadd(Vec a, Vec const &b, long long n) {
  for (std::size_t i = 0; i < a.size(); ++i)
    a[i] = (a[i] + b[i]) % n;
  return a;
}

// (h.v)_i = v_{h^-1(i)}, i.e. w[h(i)] = v[i].
Vec vact(Perm const &h, Vec const &v) {
  Vec w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    w[h[static_cast<int>(i)]] = v[i];
  return w;
}

// Additive span of gens in (Z_n)^p, all elements sorted.
std::vector<Vec> additive_span(int p, long long n, std::vector<Vec> const &gens) {
  std::set<Vec> seen{Vec(p, 0)};
  std::deque<Vec> queue{Vec(p, 0)};
  while (!queue.empty()) {
    Vec x = queue.front();
    queue.pop_front();
    for (auto const &g : gens) {
      Vec y = vadd(x, g, n);
      if (seen.insert(y).second)
        queue.push_back(y);
    }
  }
  return {seen.begin(), seen.end()};
}

bool is_odd(Perm const &x) {
  int swaps = 0;
  for (auto const &c : x.cycles())
    swaps += static_cast<int>(c.size()) - 1;
  return swaps % 2;
}

std::vector<Perm> sorted_elements(PermGroup const &g) {
  auto e = g.elements();
  std::sort(e.begin(), e.end());
  return e;
}

Perm wreath_element(int p, Perm const &h, std::vector<Perm> const &v) {
  std::vector<int> img(p * p);
  for (int a = 0; a < p; ++a)
    for (int j = 0; j < p; ++j)
      img[a + j * p] = h[a] + v[a][j] * p;
  return Perm(img);
}

// (h, v) with v_a = c^{u_a}.
Perm lift(WreathTuple const &t, Perm const &h, Vec const &u) {
  std::vector<Perm> v;
  for (int a = 0; a < t.p; ++a)
    v.push_back(t.coset_gen.pow(u[a]));
  return wreath_element(t.p, h, v);
}

// Components of an element of S_p wr S_p on a + j p.
std::pair<Perm, std::vector<Perm>> wreath_parts(int p, Perm const &g) {
  std::vector<int> h(p);
  std::vector<Perm> v;
  for (int a = 0; a < p; ++a) {
    h[a] = g[a] % p;
    std::vector<int> img(p);
    for (int j = 0; j < p; ++j) {
      int y = g[a + j * p];
      if (y % p != h[a])
        throw DomainError("element does not preserve the standard blocks");
      img[j] = y / p;
    }
    v.emplace_back(img);
  }
  return {Perm(h), v};
}

} // namespace

QuotientModule::QuotientModule(int p, long long n, std::vector<Vec> const &k_gens)
    : p_(p), n_(n), k_gens_(k_gens) {
  if (p < 1 || n < 1)
    throw DomainError("invalid module parameters");
  for (auto &g : k_gens_) {
    if (static_cast<int>(g.size()) != p)
      throw DomainError("subgroup generator has the wrong length");
    for (auto &x : g)
      x = mod_norm(x, n);
  }
  long long total = vec_count(p, n);
  k_ = additive_span(p, n, k_gens_);
  index_.assign(total, -1);
  for (long long e = 0; e < total; ++e) {
    if (index_[e] >= 0)
      continue;
    Vec v = decode(e, p, n), best;
    std::vector<long long> members;
    for (auto const &k : k_) {
      Vec w = vadd(v, k, n);
      if (best.empty() || w < best)
        best = w;
      members.push_back(encode(w));
    }
    int id = static_cast<int>(reps_.size());
    reps_.push_back(best);
    for (auto m : members)
      index_[m] = id;
  }
}

long long QuotientModule::encode(Vec const &v) const {
  long long e = 0;
  for (int i = p_ - 1; i >= 0; --i)
    e = e * n_ + mod_norm(v[i], n_);
  return e;
}

int QuotientModule::index(Vec const &v) const {
  if (static_cast<int>(v.size()) != p_)
    throw DomainError("vector has the wrong length");
  return index_[encode(v)];
}

int QuotientModule::add(int a, int b) const { return index(vadd(reps_[a], reps_[b], n_)); }

int QuotientModule::neg(int a) const {
  Vec v = reps_[a];
  for (auto &x : v)
    x = mod_norm(-x, n_);
  return index(v);
}

int QuotientModule::act(Perm const &h, int a) const { return index(vact(h, reps_[a])); }

bool QuotientModule::is_invariant(std::vector<Perm> const &gens) const {
  for (auto const &g : gens)
    for (auto const &k : k_gens_)
      if (index(vact(g, k)) != 0)
        return false;
  return true;
}

std::vector<std::vector<Vec>> invariant_subgroups(int p, long long n,
                                                  std::vector<Perm> const &gens) {
  long long total = vec_count(p, n);
  auto enc = [&](Vec const &v) {
    long long e = 0;
    for (int i = p - 1; i >= 0; --i)
      e = e * n + v[i];
    return e;
  };
  std::vector<Vec> all;
  for (long long e = 0; e < total; ++e)
    all.push_back(decode(e, p, n));
  auto plus = [&](long long a, long long b) { return enc(vadd(all[a], all[b], n)); };
  std::vector<std::vector<long long>> act(gens.size(), std::vector<long long>(total));
  for (std::size_t g = 0; g < gens.size(); ++g)
    for (long long e = 0; e < total; ++e)
      act[g][e] = enc(vact(gens[g], all[e]));

  // S + span(orbit of v), S closed: close S under the orbit elements.
  auto extend = [&](std::vector<long long> const &S, long long v) {
    std::vector<long long> orb{v};
    std::vector<char> in_orb(total, 0);
    in_orb[v] = 1;
    for (std::size_t k = 0; k < orb.size(); ++k)
      for (auto const &a : act)
        if (!in_orb[a[orb[k]]]) {
          in_orb[a[orb[k]]] = 1;
          orb.push_back(a[orb[k]]);
        }
    std::vector<char> in(total, 0);
    std::vector<long long> out = S;
    for (auto x : S)
      in[x] = 1;
    for (std::size_t k = 0; k < out.size(); ++k)
      for (auto w : orb) {
        long long y = plus(out[k], w);
        if (!in[y]) {
          in[y] = 1;
          out.push_back(y);
        }
      }
    std::sort(out.begin(), out.end());
    return out;
  };

  std::set<std::vector<long long>> seen{{0}};
  std::vector<std::vector<long long>> queue{{0}};
  for (std::size_t k = 0; k < queue.size(); ++k) {
    // S + orbit(v) depends only on the coset v + S.
    std::vector<char> done(total, 0);
    for (long long v = 0; v < total; ++v) {
      if (done[v])
        continue;
      for (auto s : queue[k])
        done[plus(v, s)] = 1;
      if (v == 0)
        continue;
      auto ext = extend(queue[k], v);
      if (seen.insert(ext).second)
        queue.push_back(ext);
    }
  }
  std::vector<std::vector<Vec>> out;
  for (auto const &S : queue) {
    std::vector<Vec> vs;
    for (auto e : S)
      vs.push_back(all[e]);
    std::sort(vs.begin(), vs.end());
    out.push_back(vs);
  }
  std::sort(out.begin(), out.end(), [](auto const &a, auto const &b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

bool normal_form_hypothesis(int p, long long n) {
  if (n == 2 || (p - 1) % n == 0)
    return true;
  // p = (q^m - 1)/(q - 1) for a prime power q and m >= 2.
  for (long long q = 2; q < p; ++q) {
    long long r = 2;
    while (q % r)
      ++r;
    long long x = q;
    while (x % r == 0)
      x /= r;
    if (x != 1)
      continue;
    long long sum = 1 + q, m = 2, pw = q;
    while (sum < p) {
      pw *= q;
      sum += pw;
      ++m;
    }
    if (sum == p && m % n == 0)
      return true;
  }
  return false;
}

int CrossedHom::value(Perm const &h) const {
  auto it = std::lower_bound(elements.begin(), elements.end(), h);
  if (it == elements.end() || *it != h)
    throw DomainError("element not in the domain of the crossed homomorphism");
  return values[it - elements.begin()];
}

CrossedHom zero_crossed_hom(PermGroup const &H, QuotientModule const &m) {
  auto e = sorted_elements(H);
  return {H, m, e, std::vector<int>(e.size(), m.zero())};
}

CrossedHom principal_crossed_hom(PermGroup const &H, QuotientModule const &m, int a) {
  auto phi = zero_crossed_hom(H, m);
  for (std::size_t k = 0; k < phi.elements.size(); ++k)
    phi.values[k] = m.sub(m.act(phi.elements[k].inverse(), a), a);
  return phi;
}

bool validate_crossed_hom(CrossedHom const &phi) {
  auto const &m = phi.module;
  if (phi.elements.size() != phi.values.size() ||
      BigInt(phi.elements.size()) != phi.H.order())
    throw DomainError("crossed homomorphism table is incomplete");
  for (std::size_t x = 0; x < phi.elements.size(); ++x) {
    Perm xi = phi.elements[x].inverse();
    for (std::size_t y = 0; y < phi.elements.size(); ++y) {
      int lhs = phi.value(phi.elements[x] * phi.elements[y]);
      int rhs = m.add(phi.values[x], m.act(xi, phi.values[y]));
      if (lhs != rhs)
        return false;
    }
  }
  return true;
}

std::optional<int> cohomologous(CrossedHom const &a, CrossedHom const &b) {
  if (!(a.module == b.module))
    throw DomainError("crossed homomorphisms have different modules");
  if (a.elements != b.elements)
    throw DomainError("crossed homomorphisms have different domains");
  auto const &m = a.module;
  std::vector<int> diff(a.elements.size());
  std::vector<Perm> inv;
  for (std::size_t k = 0; k < diff.size(); ++k) {
    diff[k] = m.sub(a.values[k], b.values[k]);
    inv.push_back(a.elements[k].inverse());
  }
  for (int x = 0; x < m.size(); ++x) {
    bool ok = true;
    for (std::size_t k = 0; k < diff.size() && ok; ++k)
      ok = diff[k] == m.sub(m.act(inv[k], x), x);
    if (ok)
      return x;
  }
  return std::nullopt;
}

std::vector<CrossedHom> all_crossed_homs(PermGroup const &H, QuotientModule const &m) {
  auto elems = sorted_elements(H);
  int N = static_cast<int>(elems.size()), V = m.size();
  std::vector<Perm> gens;
  for (auto const &g : H.generators())
    if (!g.is_identity())
      gens.push_back(g);
  // Fewer generators means fewer assignments to scan.
  if (gens.size() > 2) {
    BigInt order = H.order();
    bool done = false;
    for (std::size_t i = 0; i < elems.size() && !done; ++i) {
      if (BigInt(elems[i].order()) == order) {
        gens = {elems[i]};
        done = true;
      }
      for (std::size_t j = i + 1; j < elems.size() && j < i + 64 && !done; ++j)
        if (PermGroup(H.degree(), {elems[i], elems[j]}).order() == order) {
          gens = {elems[i], elems[j]};
          done = true;
        }
    }
  }
  int G = static_cast<int>(gens.size());
  double assignments = 1;
  for (int k = 0; k < G; ++k)
    assignments *= V;
  if (assignments > 5e6)
    throw DomainError("too many generator assignments");
  auto idx = [&](Perm const &x) {
    return static_cast<int>(std::lower_bound(elems.begin(), elems.end(), x) - elems.begin());
  };
  std::vector<std::vector<int>> next(N, std::vector<int>(G));
  std::vector<std::vector<int>> actinv(N, std::vector<int>(V));
  for (int x = 0; x < N; ++x) {
    for (int g = 0; g < G; ++g)
      next[x][g] = idx(elems[x] * gens[g]);
    Perm xi = elems[x].inverse();
    for (int v = 0; v < V; ++v)
      actinv[x][v] = m.act(xi, v);
  }
  std::vector<int> addt;
  bool table = static_cast<long long>(V) * V <= 16'000'000;
  if (table) {
    addt.resize(static_cast<std::size_t>(V) * V);
    for (int a = 0; a < V; ++a)
      for (int b = 0; b < V; ++b)
        addt[static_cast<std::size_t>(a) * V + b] = m.add(a, b);
  }
  auto add = [&](int a, int b) {
    return table ? addt[static_cast<std::size_t>(a) * V + b] : m.add(a, b);
  };
  // BFS order over the Cayley graph.
  int id = idx(Perm(H.degree()));
  std::vector<int> order{id};
  std::vector<bool> seen(N, false);
  seen[id] = true;
  for (std::size_t k = 0; k < order.size(); ++k)
    for (int g = 0; g < G; ++g)
      if (!seen[next[order[k]][g]]) {
        seen[next[order[k]][g]] = true;
        order.push_back(next[order[k]][g]);
      }
  std::vector<CrossedHom> out;
  std::vector<int> assign(G, 0), phi(N);
  while (true) {
    std::fill(phi.begin(), phi.end(), -1);
    phi[id] = m.zero();
    bool ok = true;
    for (std::size_t k = 0; k < order.size() && ok; ++k) {
      int x = order[k];
      for (int g = 0; g < G && ok; ++g) {
        int y = next[x][g];
        int v = add(phi[x], actinv[x][assign[g]]);
        if (phi[y] < 0)
          phi[y] = v;
        else
          ok = phi[y] == v;
      }
    }
    if (ok)
      out.push_back({H, m, elems, phi});
    int k = 0;
    while (k < G && ++assign[k] == V)
      assign[k++] = 0;
    if (k == G)
      break;
  }
  return out;
}

std::optional<int> repetition_valued_witness(CrossedHom const &phi) {
  auto const &m = phi.module;
  std::set<int> rep;
  for (long long c = 0; c < m.n(); ++c)
    rep.insert(m.index(Vec(m.p(), c)));
  std::vector<Perm> inv;
  for (auto const &e : phi.elements)
    inv.push_back(e.inverse());
  for (int x = 0; x < m.size(); ++x) {
    bool ok = true;
    for (std::size_t k = 0; k < inv.size() && ok; ++k)
      ok = rep.count(m.sub(phi.values[k], m.sub(m.act(inv[k], x), x))) > 0;
    if (ok)
      return x;
  }
  return std::nullopt;
}

std::vector<CrossedHom> standard_crossed_homs(PermGroup const &H, long long n,
                                              std::vector<Vec> const &k_gens) {
  int p = H.degree();
  if (!is_prime(p))
    throw DomainError("degree must be prime");
  QuotientModule m(p, n, k_gens);
  if (!m.is_invariant(H.generators()))
    throw DomainError("subgroup is not invariant under H");
  std::vector<CrossedHom> out;
  auto base = zero_crossed_hom(H, m);
  Perm shift = PermGroup::cyclic(p).generators()[0];
  bool affine = H.contains(shift);
  for (auto const &g : H.generators()) {
    long long alpha = mod_norm(g[1] - g[0], p);
    for (int x = 0; x < p && affine; ++x)
      affine = g[x] == mod_norm(alpha * x + g[0], p);
  }
  BigInt order = H.order();
  BigInt fact = 1;
  for (int k = 2; k <= p; ++k)
    fact *= k;
  if (affine) {
    int mdeg = static_cast<int>(order / p);
    long long g0 = 1;
    for (long long g = 1; g < p; ++g)
      if (multiplicative_order(g, p) == p - 1) {
        g0 = g;
        break;
      }
    long long beta = 1;
    for (int k = 0; k < (p - 1) / mdeg; ++k)
      beta = beta * g0 % p;
    for (long long c = 0; c < n; ++c) {
      if (m.index(Vec(p, mdeg * c % n)) != 0)
        continue;
      auto phi = base;
      for (std::size_t k = 0; k < phi.elements.size(); ++k) {
        long long alpha = mod_norm(phi.elements[k][1] - phi.elements[k][0], p);
        long long a = 0, pw = 1;
        while (pw != alpha) {
          pw = pw * beta % p;
          ++a;
        }
        phi.values[k] = m.index(Vec(p, a * c % n));
      }
      out.push_back(phi);
    }
  } else if (order == fact) {
    for (long long c = 0; c < n; ++c) {
      if (m.index(Vec(p, 2 * c % n)) != 0)
        continue;
      auto phi = base;
      for (std::size_t k = 0; k < phi.elements.size(); ++k)
        phi.values[k] = is_odd(phi.elements[k]) ? m.index(Vec(p, c)) : m.zero();
      out.push_back(phi);
    }
  } else if (order * 2 == fact && p >= 5) {
    out.push_back(base);
  } else {
    throw DomainError("H must be a subgroup of AGL(1,p) containing Z_p, A_p or S_p");
  }
  for (auto const &phi : out)
    if (!validate_crossed_hom(phi))
      throw std::logic_error("representative cocycle fails the cocycle identity");
  return out;
}

bool is_simple_group(PermGroup const &g) {
  if (g.is_trivial())
    return false;
  BigInt o = g.order();
  if (o > 100'000)
    throw DomainError("group too large for the simplicity scan");
  if (o < 1'000'000 && is_prime(static_cast<long long>(o)))
    return true;
  bool simple = true;
  std::set<Perm> done;
  g.for_each_element([&](Perm const &x) {
    if (!simple || x.is_identity() || done.count(x))
      return;
    if (!normal_closure(g, {x}).equals(g))
      simple = false;
    // Conjugates of x generate the same normal subgroup.
    for (auto const &s : g.generators())
      done.insert(x.conj(s));
  });
  return simple;
}

void normalizer_data(PermGroup const &L, PermGroup &nl, Perm &gen, long long &n) {
  int p = L.degree();
  if (p > 8)
    throw DomainError("normalizer scan needs degree <= 8");
  nl = brute_normalizer(PermGroup::symmetric(p), L);
  n = static_cast<long long>(nl.order() / L.order());
  gen = Perm(p);
  if (n == 1)
    return;
  for (auto const &x : sorted_elements(nl)) {
    bool ok = true;
    for (long long k = 1; k < n && ok; ++k)
      ok = !L.contains(x.pow(k));
    if (ok) {
      gen = x;
      return;
    }
  }
  throw std::logic_error("N(L)/L is not cyclic");
}

long long coset_class(WreathTuple const &t, Perm const &x) {
  Perm ci = t.coset_gen.inverse(), y = x;
  for (long long k = 0; k < t.n; ++k, y = ci * y)
    if (t.L.contains(y))
      return k;
  throw DomainError("element does not normalize L");
}

WreathTuple make_wreath_tuple(PermGroup const &H, PermGroup const &L, std::vector<Vec> const &k,
                              CrossedHom const &phi) {
  int p = H.degree();
  if (!is_prime(p) || L.degree() != p)
    throw DomainError("H and L must act on the same prime number of points");
  if (!H.is_transitive() || !L.is_transitive())
    throw DomainError("H and L must be transitive");
  if (!is_simple_group(L))
    throw DomainError("L must be simple");
  WreathTuple t{p, H, L, PermGroup::trivial(p), Perm(p), 1, phi};
  normalizer_data(L, t.NL, t.coset_gen, t.n);
  QuotientModule m(p, t.n, k);
  if (!m.is_invariant(H.generators()))
    throw DomainError("K is not H-invariant");
  if (!(phi.module == m))
    throw DomainError("crossed homomorphism has the wrong module");
  if (!phi.H.equals(H))
    throw DomainError("crossed homomorphism has the wrong domain");
  if (!validate_crossed_hom(phi))
    throw DomainError("not a crossed homomorphism");
  return t;
}

PermGroup wreath_kernel(WreathTuple const &t) {
  int p = t.p;
  Perm id(p);
  std::vector<Perm> gens;
  for (int a = 0; a < p; ++a)
    for (auto const &l : t.L.generators()) {
      std::vector<Perm> v(p, id);
      v[a] = l;
      gens.push_back(wreath_element(p, id, v));
    }
  for (auto const &k : t.phi.module.subgroup_generators())
    gens.push_back(lift(t, id, k));
  return PermGroup(p * p, gens);
}

BigInt wreath_kernel_order(WreathTuple const &t) {
  BigInt o = 1;
  for (int a = 0; a < t.p; ++a)
    o *= t.L.order();
  return o * BigInt(t.phi.module.subgroup().size());
}

PermGroup build_G(WreathTuple const &t) {
  auto gens = wreath_kernel(t).generators();
  for (auto const &h : t.H.generators())
    gens.push_back(lift(t, h, t.phi.module.rep(t.phi.value(h))));
  PermGroup g(t.p * t.p, gens);
  if (g.order() != wreath_kernel_order(t) * t.H.order())
    throw std::logic_error("constructed group has the wrong order");
  return g;
}

WreathDecomposition decompose_G(PermGroup const &G) {
  int n = G.degree(), p = 0;
  for (int q = 2; q * q <= n; ++q)
    if (q * q == n)
      p = q;
  if (!p || !is_prime(p))
    throw DomainError("degree is not the square of a prime");
  if (!G.is_transitive())
    throw DomainError("group is not transitive");
  if (G.order() % BigInt(ipow(p, p + 1)) != 0)
    throw DomainError("Sylow p-subgroup is not the wreath product");
  auto systems = block_systems(G, p);
  if (systems.empty())
    throw DomainError("group is primitive");
  auto const &B = systems[0];

  // t[a] maps block 0 to block a.
  std::vector<std::optional<Perm>> t(p);
  t[0] = Perm(n);
  std::vector<int> todo{0};
  for (std::size_t k = 0; k < todo.size(); ++k)
    for (auto const &s : G.generators()) {
      Perm x = *t[todo[k]] * s;
      int b = B.block_of[x[B.blocks[0][0]]];
      if (!t[b]) {
        t[b] = x;
        todo.push_back(b);
      }
    }

  PermGroup P = sylow_subgroup(G, p);
  PermGroup base = block_fixer(P, B);
  PermGroup lhat = normal_closure(G, base.generators());
  std::vector<Perm> l0;
  for (auto const &g : lhat.generators())
    l0.push_back(restrict_to(g, B.blocks[0]));
  PermGroup L0(p, l0);
  Perm cyc;
  L0.for_each_element([&](Perm const &x) {
    if (cyc.degree() == 0 && x.order() == p)
      cyc = x;
  });
  std::vector<int> img(n);
  for (int j = 0, pos = 0; j < p; ++j, pos = cyc[pos])
    for (int a = 0; a < p; ++a)
      img[a + j * p] = (*t[a])[B.blocks[0][pos]];
  Perm lambda(img);
  Perm frame = lambda.inverse();
  PermGroup Gs = G.conjugate(frame);

  auto sb = standard_blocks(p);
  PermGroup H = block_quotient(Gs, sb);
  std::vector<Perm> lg;
  PermGroup lstd = lhat.conjugate(frame);
  for (auto const &g : lstd.generators())
    lg.push_back(wreath_parts(p, g).second[0]);
  PermGroup L(p, lg);

  WreathTuple tup{p, H, L, PermGroup::trivial(p), Perm(p), 1, {}};
  normalizer_data(L, tup.NL, tup.coset_gen, tup.n);
  auto classes = [&](Perm const &g) {
    auto [h, v] = wreath_parts(p, g);
    Vec u(p);
    for (int a = 0; a < p; ++a)
      u[a] = coset_class(tup, v[a]);
    return std::make_pair(h, u);
  };
  std::vector<Vec> kg;
  PermGroup kfix = block_fixer(Gs, sb);
  for (auto const &k : kfix.generators())
    kg.push_back(classes(k).second);
  QuotientModule m(p, tup.n, kg);

  // A representative of G over each element of H.
  std::map<Perm, Perm> over;
  over[Perm(p)] = Perm(n);
  std::vector<Perm> queue{Perm(p)};
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (auto const &s : Gs.generators()) {
      Perm g = over[queue[k]] * s;
      Perm h = wreath_parts(p, g).first;
      if (!over.count(h)) {
        over[h] = g;
        queue.push_back(h);
      }
    }
  auto phi = zero_crossed_hom(H, m);
  for (std::size_t k = 0; k < phi.elements.size(); ++k)
    phi.values[k] = m.index(classes(over.at(phi.elements[k])).second);
  WreathTuple out = make_wreath_tuple(H, L, kg, phi);
  if (!build_G(out).equals(Gs))
    throw std::logic_error("decomposition does not rebuild the group");
  return {out, frame};
}

std::optional<TupleEquivalence> equivalent_tuples(WreathTuple const &t1, WreathTuple const &t2) {
  int p = t1.p;
  if (t2.p != p)
    return std::nullopt;
  if (p > 5)
    throw DomainError("block permutation search needs p <= 5");
  if (!t1.L.equals(t2.L))
    throw DomainError("tuples must share L");
  if (t1.phi.module.subgroup().size() != t2.phi.module.subgroup().size() ||
      t1.H.order() != t2.H.order())
    return std::nullopt;
  auto const &m2 = t2.phi.module;
  std::set<Vec> k2(m2.subgroup().begin(), m2.subgroup().end());
  PermGroup G1 = build_G(t1), G2 = build_G(t2);
  std::optional<TupleEquivalence> found;
  auto attempt = [&](Perm const &g) {
    if (found || !t1.H.conjugate(g).equals(t2.H))
      return;
    for (auto const &k : t1.phi.module.subgroup())
      if (!k2.count(vact(g, k)))
        return;
    auto psi = t2.phi;
    Perm gi = g.inverse();
    for (std::size_t k = 0; k < psi.elements.size(); ++k) {
      Perm h = psi.elements[k];
      psi.values[k] = m2.index(vact(g, t1.phi.module.rep(t1.phi.value(h.conj(gi)))));
    }
    auto a = cohomologous(psi, t2.phi);
    if (!a)
      return;
    Perm gh = wreath_element(p, g, std::vector<Perm>(p, Perm(p)));
    Perm ah = lift(t2, Perm(p), m2.rep(*a));
    for (Perm const &x : {gh, gh.inverse()})
      for (Perm const &y : {ah, ah.inverse()})
        for (Perm const &d : {x * y, y * x})
          if (!found && G1.conjugate(d).equals(G2))
            found = TupleEquivalence{g, *a, d};
    if (!found)
      throw std::logic_error("equivalent tuples without a conjugating element");
  };
  attempt(Perm(p));
  PermGroup::symmetric(p).for_each_element(attempt);
  return found;
}

Perm product_pair(Perm const &sigma, Perm const &tau) {
  int p = sigma.degree();
  std::vector<int> img(p * p);
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      img[a + b * p] = sigma[a] + tau[b] * p;
  return Perm(img);
}

namespace {

std::pair<Perm, Perm> product_parts(int p, Perm const &g) {
  std::vector<int> s(p), t(p);
  for (int a = 0; a < p; ++a)
    s[a] = g[a] % p;
  for (int b = 0; b < p; ++b)
    t[b] = g[b * p] / p;
  Perm sigma(s), tau(t);
  if (product_pair(sigma, tau) != g)
    throw DomainError("group is not contained in S_p x S_p");
  return {sigma, tau};
}

} // namespace

ProductDecomposition product_decompose(PermGroup const &G) {
  int n = G.degree(), p = 0;
  for (int q = 2; q * q <= n; ++q)
    if (q * q == n)
      p = q;
  if (!p)
    throw DomainError("degree is not a square");
  std::vector<Perm> hs;
  for (auto const &g : G.generators())
    hs.push_back(product_parts(p, g).first);
  PermGroup H(p, hs);
  PermGroup k = kernel_of_action(G, p, [&](Perm const &g) { return product_parts(p, g).first; });
  std::vector<Perm> ks;
  for (auto const &g : k.generators())
    ks.push_back(product_parts(p, g).second);
  ProductDecomposition d{H, PermGroup(p, ks), {}};
  std::map<Perm, Perm> over;
  over[Perm(p)] = Perm(p);
  std::vector<Perm> queue{Perm(p)};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (auto const &g : G.generators()) {
      auto [s, t] = product_parts(p, g);
      Perm ns = queue[i] * s;
      if (!over.count(ns)) {
        over[ns] = over[queue[i]] * t;
        queue.push_back(ns);
      }
    }
  d.f.assign(over.begin(), over.end());
  return d;
}

PermGroup product_reconstruct(ProductDecomposition const &d) {
  int p = d.H.degree();
  std::vector<Perm> gens;
  for (auto const &[s, t] : d.f)
    gens.push_back(product_pair(s, t));
  for (auto const &k : d.K.generators())
    gens.push_back(product_pair(Perm(p), k));
  return PermGroup(p * p, gens);
}

PermGroup dual_overgroup(PermGroup const &hsub) {
  int n = hsub.degree(), p = 0;
  for (int q = 2; q * q <= n; ++q)
    if (q * q == n)
      p = q;
  if (!p || !is_prime(p) || p < 3)
    throw DomainError("degree must be p^2 with p an odd prime");
  for (auto const &g : hsub.generators()) {
    auto [s, t] = product_parts(p, g);
    long long alpha = mod_norm(t[1] - t[0], p);
    for (int b = 0; b < p; ++b)
      if (t[b] != mod_norm(alpha * b + t[0], p))
        throw DomainError("second coordinate is not affine");
    (void)s;
  }
  auto gens = hsub.generators();
  for (int i = 0; i + 1 < p; ++i)
    gens.push_back(std_z(p, i) * std_z(p, i + 1).inverse());
  return PermGroup(n, gens);
}

} // namespace psq
