#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "psq/codes.hpp"

#include <random>

using namespace psq;

namespace {

std::vector<Vec> random_gens(std::mt19937_64 &rng, long long n, int m, int k) {
  std::vector<Vec> g(k, Vec(m));
  for (auto &v : g)
    for (auto &x : v)
      x = static_cast<long long>(rng() % n);
  return g;
}

std::set<Vec> as_set(Code const &c) {
  auto e = c.elements();
  return std::set<Vec>(e.begin(), e.end());
}

// z_a acts on the block a + bp by b -> b + 1.
Perm z(int p, int a) {
  std::vector<int> img(p * p);
  for (int x = 0; x < p * p; ++x)
    img[x] = x % p == a ? (x + p) % (p * p) : x;
  return Perm(img);
}

Perm tau(int p) {
  std::vector<int> img(p * p);
  for (int x = 0; x < p * p; ++x)
    img[x] = (x + 1) % (p * p);
  return Perm(img);
}

BlockSystem standard_blocks(int p) {
  std::vector<std::vector<int>> b(p);
  for (int x = 0; x < p * p; ++x)
    b[x % p].push_back(x);
  return make_block_system(p * p, b);
}

// Sizes of the q-cyclotomic cosets of Z_p, sorted.
std::vector<int> coset_sizes(int p, int q) {
  std::vector<bool> seen(p, false);
  std::vector<int> out;
  for (int s = 0; s < p; ++s) {
    if (seen[s])
      continue;
    int size = 0;
    for (long long x = s; !seen[x]; x = x * q % p) {
      seen[x] = true;
      ++size;
    }
    out.push_back(size);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Perm coord_mult(int p, int a) {
  std::vector<int> img(p);
  for (int i = 0; i < p; ++i)
    img[i] = i * a % p;
  return Perm(img);
}

// All cyclic codes of length p over F_q from subsets of irreducible factors.
std::vector<Code> all_cyclic_codes(int p, long long q) {
  auto f = factor_xp_minus_1(p, q);
  std::vector<Code> out;
  for (int mask = 0; mask < (1 << f.size()); ++mask) {
    ModPoly g = ModPoly::one(q);
    for (std::size_t i = 0; i < f.size(); ++i)
      if (mask >> i & 1)
        g = g * f[i];
    out.push_back(Code::from_generator(g, p));
  }
  return out;
}

} // namespace

TEST_CASE("polynomial arithmetic") {
  ModPoly a = ModPoly::parse("1 + 2*x + x^3", 5);
  CHECK(a.str() == "1 + 2*x + 0*x^2 + 1*x^3");
  CHECK(ModPoly::parse(a.str(), 5) == a);
  ModPoly b = ModPoly::parse("3 + x", 5);
  auto [qt, r] = divmod(a, b);
  CHECK(qt * b + r == a);
  CHECK(r.degree() < b.degree());
  CHECK_THROWS_AS(ModPoly::parse("1 + y", 5), DomainError);

  // (x - 1)^p = x^p - 1 over F_p.
  for (int p : {2, 3, 5, 7, 11, 13}) {
    ModPoly lin(p, {-1, 1}), pw = ModPoly::one(p);
    for (int i = 0; i < p; ++i)
      pw = pw * lin;
    CHECK(pw == ModPoly::x_pow_minus_one(p, p));
  }
}

TEST_CASE("factorization of x^p - 1 matches cyclotomic cosets") {
  for (int p : {3, 5, 7, 11, 13})
    for (int q : {2, 3, 5}) {
      if (p == q)
        continue;
      auto f = factor_xp_minus_1(p, q);
      ModPoly prod = ModPoly::one(q);
      std::vector<int> degs;
      for (auto const &g : f) {
        CHECK(is_irreducible(g));
        CHECK(g.leading() == 1);
        prod = prod * g;
        degs.push_back(g.degree());
      }
      std::sort(degs.begin(), degs.end());
      CHECK(prod == ModPoly::x_pow_minus_one(q, p));
      CHECK(degs == coset_sizes(p, q));
    }
  auto f72 = factor_xp_minus_1(7, 2);
  REQUIRE(f72.size() == 3);
  CHECK(f72[0] == ModPoly(2, {1, 1}));
}

TEST_CASE("hensel lift") {
  CHECK(hensel_lift(ModPoly(2, {1, 1}), 7, 2) == ModPoly(4, {-1, 1}));

  struct Case {
    ModPoly f;
    int p, t;
  };
  std::vector<Case> cases{{ModPoly(2, {1, 1, 0, 1}), 7, 2},
                          {ModPoly(2, {1, 0, 1, 1}), 7, 2},
                          {ModPoly(2, {1, 1, 1, 1, 1}), 5, 3},
                          {ModPoly(2, {1, 1, 0, 1}), 7, 3}};
  for (auto const &f : factor_xp_minus_1(11, 3))
    cases.push_back({f, 11, 2});
  for (auto const &c : cases) {
    ModPoly g = hensel_lift(c.f, c.p, c.t);
    long long q = c.f.modulus(), n = g.modulus();
    CHECK(g.with_modulus(q) == c.f);
    CHECK(g.leading() == 1);
    CHECK(g.degree() == c.f.degree());
    CHECK(divides(g, ModPoly::x_pow_minus_one(n, c.p)));
    // Uniqueness: no other monic lift of the same degree divides x^p - 1.
    int d = c.f.degree();
    long long step = n / q;
    int count = 0;
    std::vector<long long> h(d, 0);
    while (true) {
      Vec coeffs = c.f.coeffs();
      for (int i = 0; i < d; ++i)
        coeffs[i] += q * h[i];
      ModPoly cand(n, coeffs);
      if (divides(cand, ModPoly::x_pow_minus_one(n, c.p))) {
        ++count;
        CHECK(cand == g);
      }
      int k = 0;
      while (k < d && ++h[k] == step)
        h[k++] = 0;
      if (k == d)
        break;
    }
    CHECK(count == 1);
  }
  CHECK_THROWS_AS(hensel_lift(ModPoly(2, {1, 1, 1}), 7, 2), DomainError);
  CHECK_THROWS_AS(hensel_lift(ModPoly(3, {-1, 1}), 3, 2), DomainError);
}

TEST_CASE("howell form agrees with brute-force span") {
  std::mt19937_64 rng(5);
  for (auto [q, t] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {2, 3}, {3, 2}, {5, 1}}) {
    long long n = 1;
    for (int i = 0; i < t; ++i)
      n *= q;
    for (int trial = 0; trial < 12; ++trial) {
      int m = 3 + trial % 2;
      auto gens = random_gens(rng, n, m, 1 + trial % 3);
      for (auto &g : gens)
        if (trial % 4 == 0)
          for (auto &x : g)
            x = x * q % n;
      Code c(q, t, m, gens);
      auto s = oracle::span(n, m, gens);
      CHECK(c.size() == s.size());
      CHECK(as_set(c) == s);
      oracle::for_each_vector(n, m, [&](Vec const &v) { CHECK(c.contains(v) == (s.count(v) > 0)); });

      // A different generating set of the same module has the same rows.
      auto alt = gens;
      std::shuffle(alt.begin(), alt.end(), rng);
      Vec combo(m, 0);
      for (auto const &g : gens) {
        long long a = static_cast<long long>(rng() % n);
        for (int i = 0; i < m; ++i)
          combo[i] = (combo[i] + a * g[i]) % n;
      }
      alt.push_back(combo);
      CHECK(Code(q, t, m, alt) == c);

      auto gens2 = random_gens(rng, n, m, 1 + trial % 2);
      Code d(q, t, m, gens2);
      auto s2 = oracle::span(n, m, gens2);
      std::set<Vec> inter;
      for (auto const &v : s)
        if (s2.count(v))
          inter.insert(v);
      CHECK(as_set(c.intersect(d)) == inter);

      std::set<Vec> dual;
      oracle::for_each_vector(n, m, [&](Vec const &v) {
        bool ok = true;
        for (auto const &g : gens) {
          long long dot = 0;
          for (int i = 0; i < m; ++i)
            dot += v[i] * g[i];
          ok = ok && dot % n == 0;
        }
        if (ok)
          dual.insert(v);
      });
      CHECK(as_set(c.dual()) == dual);

      for (int k = 1; k < t; ++k) {
        std::set<Vec> col;
        long long qk = 1;
        for (int i = 0; i < k; ++i)
          qk *= q;
        oracle::for_each_vector(n, m, [&](Vec const &v) {
          Vec w(m);
          for (int i = 0; i < m; ++i)
            w[i] = v[i] * qk % n;
          if (s.count(w))
            col.insert(v);
        });
        CHECK(as_set(c.colon(k)) == col);
      }
    }
  }
}

TEST_CASE("cyclic codes over F_p have generator (x-1)^i") {
  for (int p : {3, 5, 7}) {
    auto codes = invariant_cyclic_codes(p, p, {});
    REQUIRE(codes.size() == static_cast<std::size_t>(p + 1));
    ModPoly g = ModPoly::one(p);
    for (int i = 0; i <= p; ++i) {
      CHECK(generator_polynomial(codes[i]) == (i == p ? ModPoly::x_pow_minus_one(p, p) : g));
      CHECK(codes[i].dimension() == p - i);
      CHECK(codes[i].size() == pow(BigInt(p), static_cast<unsigned>(p - i)));
      CHECK(is_affine_invariant(codes[i]));
      g = g * ModPoly(p, {-1, 1});
    }
  }
}

TEST_CASE("induced codes of standard subgroups") {
  int p = 3;
  auto blocks = standard_blocks(p);
  // gamma_2 = z_0^2 z_1 at p = 3.
  Perm gamma2 = z(p, 0).pow(2) * z(p, 1);
  PermGroup p2(9, {tau(p), gamma2});
  CHECK(p2.order() == 27);
  Code c2 = induced_code(block_fixer(p2, blocks), blocks);
  CHECK(c2.dimension() == 2);
  CHECK(generator_polynomial(c2) == ModPoly(3, {-1, 1}));

  PermGroup cyc(9, {tau(p)});
  Code c1 = induced_code(block_fixer(cyc, blocks), blocks);
  CHECK(c1 == Code::repetition(3, 1, 3));

  std::vector<Perm> wgens{tau(p)};
  for (int a = 0; a < p; ++a)
    wgens.push_back(z(p, a));
  Code cw = induced_code(block_fixer(PermGroup(9, wgens), blocks), blocks);
  CHECK(cw.is_full());

  CHECK_THROWS_AS(induced_code(cyc, blocks), DomainError);
  CHECK_THROWS_AS(induced_code(PermGroup(9, {Perm::parse("(0 3)", 9)}), blocks), DomainError);
}

TEST_CASE("induced code is a homomorphic image") {
  // v(gh) = v(g) + v(h) and v(g^r) = r v(g) on products of z_i.
  std::mt19937_64 rng(2);
  for (int p : {3, 5}) {
    for (int trial = 0; trial < 20; ++trial) {
      Vec a(p), b(p);
      Perm g(p * p), h(p * p);
      for (int i = 0; i < p; ++i) {
        a[i] = static_cast<long long>(rng() % p);
        b[i] = static_cast<long long>(rng() % p);
        g = g * z(p, i).pow(static_cast<int>(a[i]));
        h = h * z(p, i).pow(static_cast<int>(b[i]));
      }
      auto vg = z_exponents(g, p), vh = z_exponents(h, p), vgh = z_exponents(g * h, p);
      REQUIRE(vg);
      REQUIRE(vgh);
      CHECK(*vg == a);
      for (int i = 0; i < p; ++i)
        CHECK((*vgh)[i] == (a[i] + b[i]) % p);
      int r = 2 + trial % (p - 1);
      auto vr = z_exponents(g.pow(r), p);
      for (int i = 0; i < p; ++i)
        CHECK((*vr)[i] == a[i] * r % p);
    }
  }
}

TEST_CASE("group from code round trip") {
  CHECK(group_from_code(Code::repetition(3, 1, 3)).order() == 9);
  CHECK(group_from_code(Code::repetition(3, 1, 3)).is_transitive());
  CHECK(group_from_code(Code::full(3, 1, 3)).order() == 81);
  CHECK(group_from_code(Code::zero(3, 1, 3)).order() == 3);
  for (int p : {3, 5}) {
    auto blocks = standard_blocks(p);
    for (auto const &c : invariant_cyclic_codes(p, p, {})) {
      auto g = group_from_code(c);
      CHECK(g.order() == c.size() * p);
      CHECK(induced_code(block_fixer(g, blocks), blocks) == c);
      if (!c.is_zero())
        CHECK(g.is_transitive());
    }
  }
}

TEST_CASE("induced code in a conjugated frame") {
  // Relabel a standard group; the frame built from the block mover recovers
  // a code that is the original up to a global unit.
  std::mt19937_64 rng(9);
  int p = 5;
  auto codes = invariant_cyclic_codes(p, p, {});
  for (int trial = 0; trial < 10; ++trial) {
    Code c = codes[1 + trial % (p - 1)];
    auto g = group_from_code(c);
    std::vector<int> img(p * p);
    std::iota(img.begin(), img.end(), 0);
    std::shuffle(img.begin(), img.end(), rng);
    Perm x(img);
    auto gc = g.conjugate(x);
    auto sys = block_systems(gc);
    std::optional<BlockSystem> blk;
    for (auto const &s : sys)
      if (!block_fixer(gc, s).is_trivial() && block_fixer(gc, s).order() == c.size())
        blk = s;
    REQUIRE(blk);
    Perm mover = gc.generators().back();
    for (auto const &y : gc.generators())
      if (!block_action(y, *blk).is_identity())
        mover = y;
    CHECK(induced_code(block_fixer(gc, *blk), *blk, mover) == c);
  }
}

TEST_CASE("degeneracy") {
  CHECK(is_degenerate(Code::full(3, 1, 3)));
  CHECK_FALSE(is_degenerate(Code::repetition(3, 1, 3)));
  CHECK(is_degenerate(Code(3, 1, 4, {{1, 0, 1, 0}, {0, 1, 0, 1}})));
  CHECK(is_degenerate(Code::zero(3, 1, 5)));
  CHECK_FALSE(is_degenerate(Code(3, 1, 4, {{1, 1, 0, 0}, {0, 1, 1, 0}})));
  CHECK(is_degenerate(Code(3, 1, 4, {{1, 1, 0, 0}, {0, 0, 1, 1}})));
  // At prime length only the zero and full codes are degenerate.
  for (int p : {5, 7})
    for (auto const &c : all_cyclic_codes(p, 2))
      CHECK(is_degenerate(c) == (c.is_zero() || c.is_full()));
}

TEST_CASE("monomial maps") {
  std::mt19937_64 rng(4);
  long long n = 5;
  auto rand_map = [&](int m) {
    std::vector<int> a(m);
    std::iota(a.begin(), a.end(), 0);
    std::shuffle(a.begin(), a.end(), rng);
    Vec d(m);
    for (auto &x : d)
      x = 1 + static_cast<long long>(rng() % (n - 1));
    return MonomialMap{Perm(a), d, n};
  };
  for (int trial = 0; trial < 30; ++trial) {
    auto f = rand_map(5), g = rand_map(5);
    Vec v(5);
    for (auto &x : v)
      x = static_cast<long long>(rng() % n);
    CHECK((f * g).apply(v) == g.apply(f.apply(v)));
    CHECK((f * f.inverse()) == MonomialMap::identity(5, n));
    CHECK(hamming_weight(f.apply(v)) == hamming_weight(v));
  }
}

TEST_CASE("invariance") {
  Code rep = Code::repetition(3, 1, 3);
  CHECK(is_invariant(rep, std::vector<Perm>{Perm::parse("(0 2)", 3)}));
  Code c = Code::from_generator(ModPoly(3, {-1, 1}), 3);
  MonomialMap one_coord{Perm(3), {2, 1, 1}, 3};
  CHECK_FALSE(is_invariant(c, std::vector<MonomialMap>{one_coord}));
  CHECK_THROWS_AS(is_invariant(c, std::vector<Perm>{Perm(4)}), DomainError);

  // The (11, 6) ternary code and a PSL(2, 11) acting on 11 points.
  std::vector<Perm> psl{Perm::parse("(0 1 2 3 4 5 6 7 8 9 10)"), coord_mult(11, 3),
                        Perm::parse("(2 5)(4 7)(6 8)(9 10)", 11)};
  CHECK(PermGroup(11, psl).order() == 660);
  int hits = 0;
  for (auto const &code : invariant_cyclic_codes(11, 3, {})) {
    if (code.dimension() != 6)
      continue;
    hits += is_invariant(code, psl);
  }
  CHECK(hits == 1);
  Code golay = Code::from_generator(ModPoly(3, {2, 2, 1, 2, 0, 1}), 11);
  CHECK(golay.dimension() == 6);
  CHECK(is_invariant(golay, psl));
  CHECK(is_invariant(golay.dual(), psl));
}

TEST_CASE("monomial automorphism groups") {
  auto rep = monomial_aut(Code::repetition(5, 1, 5), AutMode::PermutationOnly);
  CHECK(rep.order() == 120);
  CHECK(rep.permutation_part.order() == 120);

  Code c = Code::from_generator(ModPoly(5, {1, -2, 1}), 5);
  CHECK(c.size() == 125);
  auto aut = monomial_aut(c, AutMode::Full);
  CHECK(aut.order() == 80);
  CHECK(aut.permutation_part.order() == 20);
  for (auto const &g : aut.elements)
    for (std::size_t i = 1; i < g.d.size(); ++i)
      CHECK(g.d[i] == g.d[0]);

  CHECK(monomial_aut(Code::zero(5, 1, 5), AutMode::Full).order() == 120 * 1024);
  CHECK_THROWS_AS(monomial_aut(Code::zero(2, 1, 7), AutMode::Full), DomainError);
  CHECK_THROWS_AS(monomial_aut(Code::zero(2, 1, 11), AutMode::PermutationOnly), DomainError);
}

TEST_CASE("invariant cyclic codes") {
  CHECK(invariant_cyclic_codes(7, 2, {}).size() == 8);
  CHECK(invariant_cyclic_codes(7, 2, {3}).size() == 4);
  auto t = invariant_cyclic_codes(11, 3, {});
  CHECK(t.size() == 8);
  std::set<int> dims;
  for (auto const &c : t)
    dims.insert(c.dimension());
  CHECK(dims.count(6));
  CHECK(dims.count(5));

  for (int p : {5, 7, 11, 13})
    for (int q : {2, 3}) {
      auto all = all_cyclic_codes(p, q);
      for (auto const &a : unit_subgroups(p)) {
        auto got = invariant_cyclic_codes(p, q, a);
        CHECK(got.size() == (std::size_t{1} << invariant_code_exponent(p, q, a)));
        std::vector<Perm> maps;
        for (int x : a)
          maps.push_back(coord_mult(p, x));
        std::vector<Code> filtered;
        for (auto const &c : all)
          if (is_invariant(c, maps))
            filtered.push_back(c);
        CHECK(filtered.size() == got.size());
        for (auto const &c : got) {
          CHECK(c.is_cyclic());
          CHECK(std::find(filtered.begin(), filtered.end(), c) != filtered.end());
        }
      }
    }
}

TEST_CASE("crt decomposition") {
  auto rep = crt_decompose(6, 3, {{1, 1, 1}});
  REQUIRE(rep.parts.size() == 2);
  CHECK(rep.parts[0] == Code::repetition(2, 1, 3));
  CHECK(rep.parts[1] == Code::repetition(3, 1, 3));

  auto two = crt_decompose(6, 3, {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}});
  CHECK(two.parts[0].is_zero());
  CHECK(two.parts[1].is_full());
  CHECK(two.size() == 27);

  auto single = crt_decompose(9, 3, {{3, 1, 0}});
  REQUIRE(single.parts.size() == 1);
  CHECK(single.parts[0] == Code(3, 2, 3, {{3, 1, 0}}));

  std::mt19937_64 rng(8);
  for (long long n : {6LL, 10LL, 12LL}) {
    for (int trial = 0; trial < 6; ++trial) {
      auto gens = random_gens(rng, n, 3, 1 + trial % 2);
      if (trial % 3 == 0)
        for (auto &g : gens)
          for (auto &x : g)
            x = x * 2 % n;
      auto d = crt_decompose(n, 3, gens);
      auto s = oracle::span(n, 3, gens);
      CHECK(d.size() == s.size());
      oracle::for_each_vector(n, 3, [&](Vec const &v) { CHECK(d.contains(v) == (s.count(v) > 0)); });
      CHECK(oracle::span(n, 3, d.generators()) == s);
    }
  }
}

TEST_CASE("chains of codes") {
  int p = 7;
  Code rep4 = Code::repetition(2, 2, p);
  auto ch = chain_of_code(rep4);
  REQUIRE(ch.levels.size() == 2);
  CHECK(ch.levels[0] == Code::repetition(2, 1, p));
  CHECK(ch.levels[1] == Code::repetition(2, 1, p));
  CHECK(code_from_chain(ch) == rep4);

  CodeChain zr{2, 2, {Code::zero(2, 1, p), Code::repetition(2, 1, p)}};
  Code c = code_from_chain(zr);
  CHECK(c == rep4.scaled(2));
  // phi_i images computed by enumeration.
  auto elems = c.elements();
  for (int i = 0; i < 2; ++i) {
    std::set<Vec> img;
    long long qi = i ? 2 : 1;
    for (auto const &v : elems) {
      if (std::all_of(v.begin(), v.end(), [&](long long x) { return x % qi == 0; })) {
        Vec w(p);
        for (int j = 0; j < p; ++j)
          w[j] = v[j] / qi % 2;
        img.insert(w);
      }
    }
    CHECK(img == as_set(zr.levels[i]));
  }

  CodeChain dd{2, 2, {Code::sum_zero(2, 1, p), Code::sum_zero(2, 1, p)}};
  CHECK(code_from_chain(dd) == Code::sum_zero(2, 2, p));

  CHECK_THROWS_AS(code_from_chain(CodeChain{2, 2, {Code::repetition(2, 1, p), Code::zero(2, 1, p)}}),
                  DomainError);
  auto f = factor_xp_minus_1(7, 2);
  Code cubic = Code::from_generator(f[1], 7);
  CodeChain cc{2, 2, {cubic, cubic}};
  CHECK_NOTHROW(code_from_chain(cc, {GroupTag::Affine, {2}}));
  CHECK_THROWS_AS(code_from_chain(cc, {GroupTag::Affine, {3}}), DomainError);
  CHECK_THROWS_AS(code_from_chain(cc, {GroupTag::Symmetric, {}}), DomainError);
}

TEST_CASE("chain round trip on all cyclic chains") {
  struct Grid {
    int q, t, p;
  };
  for (auto g : std::vector<Grid>{{2, 2, 7}, {2, 3, 7}, {3, 2, 5}, {2, 2, 5}, {3, 2, 13}}) {
    auto codes = all_cyclic_codes(g.p, g.q);
    // Enumerate increasing chains of length t.
    std::vector<std::size_t> idx(g.t, 0);
    int count = 0;
    while (true) {
      bool inc = true;
      for (int i = 1; i < g.t; ++i)
        inc = inc && codes[idx[i]].contains(codes[idx[i - 1]]);
      if (inc) {
        CodeChain ch{g.q, g.t, {}};
        for (auto k : idx)
          ch.levels.push_back(codes[k]);
        Code c = code_from_chain(ch);
        CHECK(chain_of_code(c) == ch);
        CHECK(c.is_cyclic());
        ++count;
      }
      int k = 0;
      while (k < g.t && ++idx[k] == codes.size())
        idx[k++] = 0;
      if (k == g.t)
        break;
    }
    CHECK(count > 0);
  }

  // Codes built from random ideals are determined by their chains.
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    int p = trial % 2 ? 7 : 5;
    long long n = trial % 3 ? 4 : 8;
    int t = n == 4 ? 2 : 3;
    std::vector<Vec> rows;
    for (int k = 0; k < 1 + trial % 3; ++k) {
      Vec v = random_gens(rng, n, p, 1)[0];
      for (int s = 0; s < p; ++s) {
        rows.push_back(v);
        v = shift_vec(v);
      }
    }
    Code c(2, t, p, rows);
    REQUIRE(c.is_cyclic());
    CHECK(code_from_chain(chain_of_code(c)) == c);
  }
}
