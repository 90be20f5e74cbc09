#include "psq/pgroups.hpp"
#include "psq/field.hpp"

#include <algorithm>
#include <numeric>

namespace psq {

namespace {

int prime_of_degree(int n) {
  for (int p = 2; p * p <= n; ++p)
    if (p * p == n && is_prime(p))
      return p;
  throw DomainError("degree is not the square of a prime");
}

// i with |P| = p^(i+1), after checking P is a transitive p-group.
int p_group_rank(PermGroup const &P, int p) {
  if (!P.is_transitive())
    throw DomainError("group is not transitive");
  if (!is_p_group(P, p))
    throw DomainError("group is not a p-group");
  BigInt n = P.order();
  int e = 0;
  while (n > 1) {
    n /= p;
    ++e;
  }
  return e - 1;
}

struct StopScan {};

} // namespace

std::vector<long long> binomial_row(int p, int i) {
  if (!is_prime(p))
    throw DomainError("p must be prime");
  if (i < 0 || i > p)
    throw DomainError("binomial row index out of range");
  // Pascal's triangle mod p.
  std::vector<long long> c(i + 1, 0);
  c[0] = 1;
  for (int k = 1; k <= i; ++k)
    for (int j = k; j >= 1; --j)
      c[j] = (c[j] + c[j - 1]) % p;
  std::vector<long long> row(p, 0);
  for (int j = 0; j < p && j <= i; ++j)
    row[j] = mod_norm((i - j) % 2 ? -c[j] : c[j], p);
  return row;
}

Perm z_product(int p, Vec const &v) {
  std::vector<int> img(p * p);
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      img[a + b * p] = a + static_cast<int>(mod_norm(b + v[a], p)) * p;
  return Perm(img);
}

Perm std_z(int p, int i) {
  if (!is_prime(p))
    throw DomainError("p must be prime");
  if (i < 0 || i >= p)
    throw DomainError("z index out of range");
  Vec v(p, 0);
  v[i] = 1;
  return z_product(p, v);
}

Perm std_rho1(int p) {
  if (!is_prime(p))
    throw DomainError("p must be prime");
  return z_product(p, Vec(p, 1));
}

Perm std_rho2(int p) {
  if (!is_prime(p))
    throw DomainError("p must be prime");
  std::vector<int> img(p * p);
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      img[a + b * p] = (a + 1) % p + b * p;
  return Perm(img);
}

Perm std_tau(int p) {
  if (!is_prime(p))
    throw DomainError("p must be prime");
  std::vector<int> img(p * p);
  for (int x = 0; x < p * p; ++x)
    img[x] = (x + 1) % (p * p);
  return Perm(img);
}

Perm std_gamma(int p, int i) {
  if (!is_prime(p))
    throw DomainError("p must be prime");
  if (i < 1 || i > p)
    throw DomainError("gamma index out of range");
  return z_product(p, binomial_row(p, p - i));
}

Perm standard_generator(int p, StdGen name, int index) {
  switch (name) {
  case StdGen::Tau:
    return std_tau(p);
  case StdGen::Rho1:
    return std_rho1(p);
  case StdGen::Rho2:
    return std_rho2(p);
  case StdGen::Z:
    return std_z(p, index);
  case StdGen::Gamma:
    return std_gamma(p, index);
  }
  throw DomainError("unknown generator");
}

Perm fiber_scale(int p, long long beta) {
  beta = mod_norm(beta, p);
  if (beta == 0)
    throw DomainError("scale must be a unit");
  std::vector<int> img(p * p);
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      img[a + b * p] = a + static_cast<int>(beta * b % p) * p;
  return Perm(img);
}

BlockSystem standard_blocks(int p) {
  std::vector<std::vector<int>> blocks(p);
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      blocks[a].push_back(a + b * p);
  return make_block_system(p * p, blocks);
}

std::string family_name(PFamily f) {
  switch (f) {
  case PFamily::Cyclic:
    return "cyclic";
  case PFamily::Elementary:
    return "elementary";
  case PFamily::Wreath:
    return "wreath";
  }
  return "";
}

PermGroup build_P(int p, int i, PFamily family) {
  if (!is_prime(p))
    throw DomainError("p must be prime");
  if (i < 1 || i > p)
    throw DomainError("index i must satisfy 1 <= i <= p");
  if (family == PFamily::Wreath && i != p)
    throw DomainError("the wreath family only exists at i = p");
  if (family == PFamily::Cyclic)
    return PermGroup(p * p, {std_tau(p), std_gamma(p, i)});
  return PermGroup(p * p, {std_rho1(p), std_rho2(p), std_gamma(p, i)});
}

PFrame p_frame(PermGroup const &P) {
  int n = P.degree();
  int p = prime_of_degree(n);
  p_group_rank(P, p);

  // Repeated commutators with generators descend the lower central series,
  // so this ends at a nontrivial central element.
  Perm x;
  for (auto const &g : P.generators())
    if (!g.is_identity()) {
      x = g;
      break;
    }
  for (bool moved = true; moved;) {
    moved = false;
    for (auto const &g : P.generators()) {
      Perm c = x.inverse() * g.inverse() * x * g;
      if (!c.is_identity()) {
        x = c;
        moved = true;
        break;
      }
    }
  }
  x = x.pow(x.order() / p);

  PFrame f{p, x, make_block_system(n, x.cycles()), PermGroup::trivial(n),
           Perm(n), Perm(n), Code::zero(p, 1, p), Vec(p, 0)};
  if (static_cast<int>(f.blocks.blocks.size()) != p)
    throw std::logic_error("central element of order p is not semiregular");
  f.fixer = block_fixer(P, f.blocks);
  bool found = false;
  for (auto const &g : P.generators())
    if (!block_action(g, f.blocks).is_identity()) {
      f.mover = g;
      found = true;
      break;
    }
  if (!found)
    throw DomainError("group is not transitive");

  // lambda(a + b p) = mover^a (x^b (0)).
  std::vector<int> img(n);
  for (int b = 0; b < p; ++b) {
    int pt = x.pow(b)[0];
    for (int a = 0; a < p; ++a) {
      img[a + b * p] = pt;
      pt = f.mover[pt];
    }
  }
  f.lambda = Perm(img);
  Perm li = f.lambda.inverse();
  std::vector<Perm> fix_std;
  for (auto const &h : f.fixer.generators())
    fix_std.push_back(h.conj(li));
  f.code = code_of_standard(fix_std, p);
  auto v = z_exponents(f.mover.conj(li) * std_rho2(p).inverse(), p);
  if (!v)
    throw std::logic_error("mover is not a z-product times rho2 in its frame");
  f.shift = *v;
  return f;
}

PSubgroupKind recognize_p_subgroup(PermGroup const &P) {
  int n = P.degree();
  int p = prime_of_degree(n);
  int i = p_group_rank(P, p);
  if (i < 1 || i > p)
    throw DomainError("transitive p-subgroup of S_{p^2} must have order p^2..p^(p+1)");
  Perm id(n);
  if (i == p) {
    PermGroup w = build_P(p, p, PFamily::Cyclic);
    if (P.equals(w))
      return {PFamily::Wreath, p, id};
  } else {
    if (P.equals(build_P(p, i, PFamily::Cyclic)))
      return {PFamily::Cyclic, i, id};
    if (P.equals(build_P(p, i, PFamily::Elementary)))
      return {PFamily::Elementary, i, id};
  }

  PFrame f = p_frame(P);
  Perm delta = f.lambda.inverse();
  PFamily fam = PFamily::Wreath;
  if (i < p) {
    Vec v = f.shift;
    long long c = 0;
    for (auto a : v)
      c += a;
    c = mod_norm(c, p);
    Vec target(p, 0);
    if (c == 0) {
      fam = PFamily::Elementary;
    } else {
      fam = PFamily::Cyclic;
      long long beta = mod_inverse(c, p);
      delta = delta * fiber_scale(p, beta);
      for (auto &a : v)
        a = mod_norm(a * beta, p);
      target[p - 1] = 1;
    }
    // Conjugating by prod z_a^{w_a} adds w_{a+1} - w_a to v_a.
    Vec w(p, 0);
    for (int a = 0; a + 1 < p; ++a)
      w[a + 1] = mod_norm(w[a] + target[a] - v[a], p);
    delta = delta * z_product(p, w);
  }
  PermGroup target_group = build_P(p, i, fam == PFamily::Wreath ? PFamily::Cyclic : fam);
  if (!P.conjugate(delta).equals(target_group))
    throw std::logic_error("conjugator search failed");
  return {fam, i, delta};
}

WreathTests wreath_tests(PermGroup const &P) {
  PFrame f = p_frame(P);
  int p = f.p;
  WreathTests r{};
  r.is_wreath = P.order() == BigInt(ipow(p, p + 1)) && P.is_transitive();
  r.code_sums_zero = true;
  for (auto const &row : f.code.rows()) {
    long long s = 0;
    for (auto a : row)
      s += a;
    if (mod_norm(s, p) != 0)
      r.code_sums_zero = false;
  }
  // A regular Z_p^2 (resp. Z_{p^2}) exists iff the coset mover * fixer has
  // an element of order p (resp. p^2).
  bool order_p = false, order_p2 = false;
  try {
    f.fixer.for_each_element([&](Perm const &y) {
      Perm g = f.mover * y;
      if (g.pow(p).is_identity())
        order_p = true;
      else
        order_p2 = true;
      if (order_p && order_p2)
        throw StopScan{};
    });
  } catch (StopScan const &) {
  }
  r.has_both_regulars = order_p && order_p2;
  return r;
}

namespace {

bool is_affine_like(PermGroup const &G, PermGroup const &sylow, int p) {
  // A regular normal Z_p^2 lies in every Sylow p-subgroup and meets its
  // center; test the normal closures of central order-p elements.
  for (auto const &z : center(sylow).elements()) {
    if (z.is_identity() || z.order() != p)
      continue;
    PermGroup n = normal_closure(G, {z});
    if (n.order() == BigInt(p * p) && n.is_transitive())
      return true;
  }
  return false;
}

bool preserves(Perm const &g, BlockSystem const &b) {
  for (auto const &blk : b.blocks) {
    int target = b.block_of[g[blk[0]]];
    for (int x : blk)
      if (b.block_of[g[x]] != target)
        return false;
  }
  return true;
}

} // namespace

Classification classify_transitive(PermGroup const &G, std::uint64_t seed) {
  int n = G.degree();
  int p = prime_of_degree(n);
  if (!G.is_transitive())
    throw DomainError("group is not transitive");
  Classification c{};
  c.sylow = sylow_subgroup(G, p, std::nullopt, seed);
  c.sylow_normal = is_normal_subgroup(G, c.sylow);
  BigInt order = G.order();

  if (is_doubly_transitive(G)) {
    c.label = 1;
    BigInt full = 1;
    for (int k = 2; k <= n; ++k)
      full *= k;
    if (order * 2 >= full)
      c.tag = "alternating/symmetric";
    else if (is_affine_like(G, c.sylow, p))
      c.tag = "affine";
    else
      c.tag = "projective";
    return c;
  }
  if (is_primitive(G)) {
    c.label = 2;
    if (c.sylow_normal) {
      c.tag = "affine";
      return c;
    }
    c.tag = "index-2 product";
    if (order <= 1'000'000) {
      auto elems = G.elements();
      for (auto const &bs : block_systems(c.sylow, p)) {
        std::vector<Perm> keep;
        for (auto const &g : elems)
          if (preserves(g, bs))
            keep.push_back(g);
        if (2 * keep.size() != elems.size())
          continue;
        PermGroup h = group_from_elements(n, keep);
        if (h.is_transitive()) {
          c.product_subgroup = h;
          break;
        }
      }
    }
    return c;
  }

  c.sylow_kind = recognize_p_subgroup(c.sylow);
  auto const &kind = *c.sylow_kind;
  if (kind.family == PFamily::Wreath) {
    c.label = 6;
    c.tag = "wreath Sylow";
    return c;
  }
  if (kind.family == PFamily::Elementary && kind.i == 1) {
    c.label = 4;
    c.tag = "inside S_p x S_p";
    auto systems = block_systems(G, p);
    for (std::size_t s = 0; s < systems.size() && !c.product_coordinates; ++s)
      for (std::size_t t = 0; t < systems.size(); ++t) {
        if (s == t)
          continue;
        auto const &b1 = systems[s], &b2 = systems[t];
        std::vector<int> img(n);
        std::vector<bool> seen(n, false);
        bool ok = true;
        for (int x = 0; x < n && ok; ++x) {
          img[x] = b1.block_of[x] + p * b2.block_of[x];
          ok = !seen[img[x]];
          seen[img[x]] = true;
        }
        if (ok) {
          c.product_coordinates = Perm(img);
          break;
        }
      }
    return c;
  }
  if (kind.family == PFamily::Elementary && kind.i == p - 1) {
    c.label = 5;
    c.tag = "P'_{p-1} Sylow";
    PermGroup z1(n, {std_rho1(p)});
    bool ok = true;
    for (auto const &g : G.generators())
      ok = ok && normalizes(g.conj(kind.conjugator), z1);
    if (ok)
      c.frame_conjugator = kind.conjugator;
    return c;
  }
  c.label = 3;
  c.tag = "normal Sylow";
  return c;
}

PermGroup psl_projective(int d, int r, int t) {
  FieldTower f(r, t);
  auto pts = projective_points(f, d);
  int n = static_cast<int>(pts.size());
  std::vector<Perm> gens;
  // Transvections I + y^k E_{ij}; y^k over k < t spans F_q over F_r.
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i == j)
        continue;
      int lam = 1;
      for (int k = 0; k < t; ++k, lam *= r) {
        std::vector<int> img(n);
        for (int x = 0; x < n; ++x) {
          auto v = pts[x];
          // row vector times (I + lam E_ij): v_j += lam v_i
          v[j] = f.add(v[j], f.mul(lam, v[i]));
          img[x] = projective_index(pts, v, f);
        }
        gens.push_back(Perm(img));
      }
    }
  return PermGroup(n, gens);
}

namespace {

BigInt psl_order(int d, long long q) {
  BigInt o = 1;
  for (int k = 0; k < d * (d - 1) / 2; ++k)
    o *= q;
  for (int k = 2; k <= d; ++k) {
    BigInt qk = 1;
    for (int j = 0; j < k; ++j)
      qk *= q;
    o *= qk - 1;
  }
  return o / std::gcd(static_cast<long long>(d), q - 1);
}

Perm shifted(std::vector<std::vector<int>> cycles, int n, int offset) {
  for (auto &c : cycles)
    for (auto &x : c)
      x -= offset;
  return Perm::from_cycles(n, cycles);
}

// Relabel a transitive group of prime degree so it contains x -> x + 1.
PermGroup with_standard_cycle(PermGroup const &g) {
  int p = g.degree();
  Perm c;
  try {
    g.for_each_element([&](Perm const &x) {
      if (x.order() == p) {
        c = x;
        throw StopScan{};
      }
    });
  } catch (StopScan const &) {
  }
  std::vector<int> img(p);
  int pt = 0;
  for (int k = 0; k < p; ++k, pt = c[pt])
    img[k] = pt;
  return g.conjugate(Perm(img).inverse());
}

} // namespace

std::vector<NamedGroup> degree_p_catalog(int p) {
  if (!is_prime(p) || p > 23)
    throw DomainError("catalog covers primes p <= 23");
  std::vector<NamedGroup> out;
  Perm shift = PermGroup::cyclic(p).generators().at(0);
  long long beta = 0;
  for (long long g = 1; g < p && !beta; ++g)
    if (multiplicative_order(g, p) == p - 1)
      beta = g;
  for (int d = 1; d <= p - 1; ++d) {
    if ((p - 1) % d)
      continue;
    long long m = 1;
    for (int k = 0; k < (p - 1) / d; ++k)
      m = m * beta % p;
    std::vector<int> img(p);
    for (int x = 0; x < p; ++x)
      img[x] = static_cast<int>(m * x % p);
    std::string name = d == 1 ? "Z_" + std::to_string(p)
                              : "Z_" + std::to_string(p) + ":Z_" + std::to_string(d);
    out.push_back({name, PermGroup(p, {shift, Perm(img)}), BigInt(p * d)});
  }
  BigInt fact = 1;
  for (int k = 2; k <= p; ++k)
    fact *= k;
  if (p > 2)
    out.push_back({"A_" + std::to_string(p), PermGroup::alternating(p), fact / 2});
  out.push_back({"S_" + std::to_string(p), PermGroup::symmetric(p), fact});
  for (int d = 2; d <= 5; ++d)
    for (int r = 2; r <= p; ++r) {
      if (!is_prime(r))
        continue;
      long long q = r;
      for (int t = 1; q <= p; ++t, q *= r) {
        long long count = 0, qk = 1;
        for (int k = 0; k < d; ++k, qk *= q)
          count += qk;
        if (count != p)
          continue;
        out.push_back({"PSL(" + std::to_string(d) + "," + std::to_string(q) + ")",
                       with_standard_cycle(psl_projective(d, r, t)), psl_order(d, q)});
      }
    }
  if (p == 11) {
    out.push_back({"PSL(2,11)",
                   PermGroup(11, {shift,
                                  Perm({0, 3, 6, 9, 1, 4, 7, 10, 2, 5, 8}),
                                  Perm::from_cycles(11, {{2, 5}, {4, 7}, {6, 8}, {9, 10}})}),
                   BigInt(660)});
    out.push_back({"M_11",
                   PermGroup(11, {shift, shifted({{3, 7, 11, 8}, {4, 10, 5, 6}}, 11, 1)}),
                   BigInt(7920)});
  }
  if (p == 23)
    out.push_back({"M_23",
                   PermGroup(23, {shift, shifted({{3, 17, 10, 7, 9},
                                                  {4, 13, 14, 19, 5},
                                                  {8, 18, 11, 12, 23},
                                                  {15, 20, 22, 21, 16}},
                                                 23, 1)}),
                   BigInt(10200960)});
  return out;
}

} // namespace psq
