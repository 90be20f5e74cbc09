#include "psq/group.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>

namespace psq {

namespace {

void rebuild_orbit(ChainLevel &lv, int n) {
  lv.slot.assign(n, -1);
  lv.orbit.assign(1, lv.base);
  lv.reps.assign(1, Perm(n));
  lv.inv_reps.assign(1, Perm(n));
  lv.slot[lv.base] = 0;
  for (std::size_t k = 0; k < lv.orbit.size(); ++k) {
    int x = lv.orbit[k];
    for (auto const &s : lv.gens) {
      int y = s[x];
      if (lv.slot[y] >= 0)
        continue;
      lv.slot[y] = static_cast<int>(lv.orbit.size());
      lv.orbit.push_back(y);
      Perm r = lv.reps[k] * s;
      lv.inv_reps.push_back(r.inverse());
      lv.reps.push_back(std::move(r));
    }
  }
}

std::pair<Perm, int> strip_levels(std::vector<ChainLevel> const &levels, Perm x,
                                  int from) {
  for (int i = from; i < static_cast<int>(levels.size()); ++i) {
    auto const &lv = levels[i];
    int idx = lv.slot[x[lv.base]];
    if (idx < 0)
      return {std::move(x), i};
    x *= lv.inv_reps[idx];
  }
  return {std::move(x), static_cast<int>(levels.size())};
}

std::vector<ChainLevel> schreier_sims(int n, std::vector<Perm> const &gens,
                                      std::vector<int> const &prefix) {
  std::vector<ChainLevel> levels;
  for (int b : prefix) {
    ChainLevel lv;
    lv.base = b;
    levels.push_back(std::move(lv));
  }
  auto append_level = [&](Perm const &moved) {
    ChainLevel lv;
    lv.base = moved.smallest_moved_point();
    levels.push_back(std::move(lv));
  };

  for (auto const &g : gens) {
    if (g.is_identity())
      continue;
    int j = 0;
    while (j < static_cast<int>(levels.size()) && g[levels[j].base] == levels[j].base)
      ++j;
    if (j == static_cast<int>(levels.size()))
      append_level(g);
    for (int l = 0; l <= j; ++l)
      levels[l].gens.push_back(g);
  }
  for (auto &lv : levels)
    rebuild_orbit(lv, n);

  int i = static_cast<int>(levels.size()) - 1;
  while (i >= 0) {
    bool restarted = false;
    for (std::size_t k = 0; !restarted && k < levels[i].orbit.size(); ++k) {
      auto const &lv = levels[i];
      for (std::size_t si = 0; si < lv.gens.size(); ++si) {
        auto const &s = levels[i].gens[si];
        int y = s[levels[i].orbit[k]];
        Perm h = levels[i].reps[k] * s * levels[i].inv_reps[levels[i].slot[y]];
        auto [r, j] = strip_levels(levels, std::move(h), i + 1);
        if (r.is_identity())
          continue;
        if (j == static_cast<int>(levels.size()))
          append_level(r);
        for (int l = i + 1; l <= j; ++l) {
          levels[l].gens.push_back(r);
          rebuild_orbit(levels[l], n);
        }
        i = j;
        restarted = true;
        break;
      }
    }
    if (!restarted)
      --i;
  }
  return levels;
}

} // namespace

PermGroup::PermGroup(int degree, std::vector<Perm> gens, std::vector<int> base_prefix)
    : degree_(degree) {
  for (auto &g : gens) {
    if (g.degree() != degree)
      throw DomainError("generator degree mismatch");
    if (!g.is_identity())
      gens_.push_back(std::move(g));
  }
  for (int b : base_prefix)
    if (b < 0 || b >= degree)
      throw DomainError("base point out of range");
  chain_ = std::make_shared<std::vector<ChainLevel>>(
      schreier_sims(degree, gens_, base_prefix));
}

PermGroup PermGroup::symmetric(int n) {
  std::vector<Perm> gens;
  if (n >= 2) {
    std::vector<int> cyc(n);
    std::iota(cyc.begin(), cyc.end(), 0);
    gens.push_back(Perm::from_cycles(n, {cyc}));
    gens.push_back(Perm::from_cycles(n, {{0, 1}}));
  }
  return PermGroup(n, gens);
}

PermGroup PermGroup::alternating(int n) {
  std::vector<Perm> gens;
  for (int i = 2; i < n; ++i)
    gens.push_back(Perm::from_cycles(n, {{0, 1, i}}));
  return PermGroup(n, gens);
}

PermGroup PermGroup::cyclic(int n) {
  std::vector<int> cyc(n);
  std::iota(cyc.begin(), cyc.end(), 0);
  return PermGroup(n, {Perm::from_cycles(n, {cyc})});
}

std::vector<int> PermGroup::base() const {
  std::vector<int> b;
  for (auto const &lv : *chain_)
    b.push_back(lv.base);
  return b;
}

BigInt PermGroup::order() const {
  BigInt o = 1;
  for (auto const &lv : *chain_)
    o *= lv.orbit.size();
  return o;
}

unsigned long long PermGroup::order_u64() const {
  BigInt o = order();
  if (o > BigInt(std::numeric_limits<unsigned long long>::max()))
    throw DomainError("group order exceeds 64 bits");
  return o.convert_to<unsigned long long>();
}

std::pair<Perm, int> PermGroup::strip(Perm x, int from_level) const {
  return strip_levels(*chain_, std::move(x), from_level);
}

bool PermGroup::contains(Perm const &x) const {
  if (x.degree() != degree_)
    throw DomainError("degree mismatch in membership test");
  auto [r, j] = strip(x);
  return j == static_cast<int>(chain_->size()) && r.is_identity();
}

bool PermGroup::contains(PermGroup const &h) const {
  if (h.degree() != degree_)
    throw DomainError("degree mismatch in subgroup test");
  for (auto const &g : h.generators())
    if (!contains(g))
      return false;
  return true;
}

bool PermGroup::equals(PermGroup const &h) const {
  return degree_ == h.degree_ && order() == h.order() && contains(h);
}

PermGroup PermGroup::level_subgroup(int k) const {
  auto const &ch = *chain_;
  if (k >= static_cast<int>(ch.size()))
    return trivial(degree_);
  std::vector<int> rest;
  for (std::size_t i = k; i < ch.size(); ++i)
    rest.push_back(ch[i].base);
  return PermGroup(degree_, ch[k].gens, rest);
}

Perm PermGroup::random_element(std::mt19937_64 &rng) const {
  Perm x(degree_);
  for (auto it = chain_->rbegin(); it != chain_->rend(); ++it) {
    std::uniform_int_distribution<std::size_t> d(0, it->reps.size() - 1);
    x *= it->reps[d(rng)];
  }
  return x;
}

void PermGroup::for_each_element(std::function<void(Perm const &)> const &f) const {
  auto const &ch = *chain_;
  int L = static_cast<int>(ch.size());
  // element = r_{L-1} * ... * r_1 * r_0
  std::function<void(int, Perm const &)> rec = [&](int lvl, Perm const &acc) {
    if (lvl < 0) {
      f(acc);
      return;
    }
    for (auto const &r : ch[lvl].reps)
      rec(lvl - 1, acc * r);
  };
  rec(L - 1, Perm(degree_));
}

std::vector<Perm> PermGroup::elements(unsigned long long limit) const {
  if (order() > BigInt(limit))
    throw DomainError("group too large to enumerate");
  std::vector<Perm> out;
  out.reserve(order_u64());
  for_each_element([&](Perm const &x) { out.push_back(x); });
  return out;
}

bool PermGroup::is_transitive() const {
  return degree_ <= 1 || static_cast<int>(orbit(*this, 0).size()) == degree_;
}

PermGroup PermGroup::with(Perm const &g) const {
  auto gens = gens_;
  gens.push_back(g);
  return PermGroup(degree_, gens);
}

PermGroup PermGroup::conjugate(Perm const &g) const {
  std::vector<Perm> gens;
  for (auto const &x : gens_)
    gens.push_back(x.conj(g));
  return PermGroup(degree_, gens);
}

BlockSystem make_block_system(int degree, std::vector<std::vector<int>> blocks) {
  for (auto &b : blocks)
    std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end());
  BlockSystem bs;
  bs.block_of.assign(degree, -1);
  for (std::size_t k = 0; k < blocks.size(); ++k)
    for (int x : blocks[k]) {
      if (x < 0 || x >= degree || bs.block_of[x] >= 0)
        throw DomainError("blocks do not partition the point set");
      bs.block_of[x] = static_cast<int>(k);
    }
  for (int b : bs.block_of)
    if (b < 0)
      throw DomainError("blocks do not cover the point set");
  bs.blocks = std::move(blocks);
  return bs;
}

std::vector<int> orbit(PermGroup const &g, int x) {
  std::vector<char> seen(g.degree(), 0);
  std::vector<int> orb{x};
  seen[x] = 1;
  for (std::size_t k = 0; k < orb.size(); ++k)
    for (auto const &s : g.generators()) {
      int y = s[orb[k]];
      if (!seen[y]) {
        seen[y] = 1;
        orb.push_back(y);
      }
    }
  return orb;
}

std::vector<std::vector<int>> orbits(PermGroup const &g, std::vector<int> const &seeds) {
  std::vector<char> seen(g.degree(), 0);
  std::vector<std::vector<int>> out;
  for (int s : seeds) {
    if (seen[s])
      continue;
    auto o = orbit(g, s);
    for (int y : o)
      seen[y] = 1;
    std::sort(o.begin(), o.end());
    out.push_back(std::move(o));
  }
  return out;
}

std::vector<std::vector<int>> orbits(PermGroup const &g) {
  std::vector<int> all(g.degree());
  std::iota(all.begin(), all.end(), 0);
  return orbits(g, all);
}

std::vector<int> minimal_block(PermGroup const &g, int a, int b) {
  int n = g.degree();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  };
  std::deque<std::pair<int, int>> queue;
  parent[find(b)] = find(a);
  queue.emplace_back(a, b);
  while (!queue.empty()) {
    auto [x, y] = queue.front();
    queue.pop_front();
    for (auto const &s : g.generators()) {
      int u = find(s[x]), v = find(s[y]);
      if (u != v) {
        parent[v] = u;
        queue.emplace_back(s[x], s[y]);
      }
    }
  }
  std::vector<int> blk;
  int ra = find(a);
  for (int x = 0; x < n; ++x)
    if (find(x) == ra)
      blk.push_back(x);
  return blk;
}

namespace {

int default_block_size(int n) {
  int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  if (r * r != n)
    throw DomainError("degree is not a square; pass a block size");
  return r;
}

BlockSystem system_from_block(PermGroup const &g, std::vector<int> const &blk) {
  std::set<std::vector<int>> seen{blk};
  std::vector<std::vector<int>> blocks{blk};
  for (std::size_t k = 0; k < blocks.size(); ++k)
    for (auto const &s : g.generators()) {
      std::vector<int> img;
      for (int x : blocks[k])
        img.push_back(s[x]);
      std::sort(img.begin(), img.end());
      if (seen.insert(img).second)
        blocks.push_back(img);
    }
  return make_block_system(g.degree(), blocks);
}

} // namespace

std::vector<BlockSystem> block_systems(PermGroup const &g, int block_size) {
  if (!g.is_transitive())
    throw DomainError("group is not transitive");
  int n = g.degree();
  if (block_size < 0)
    block_size = default_block_size(n);
  std::set<std::vector<int>> found;
  std::vector<BlockSystem> out;
  for (int x = 1; x < n; ++x) {
    auto blk = minimal_block(g, 0, x);
    if (static_cast<int>(blk.size()) != block_size)
      continue;
    if (found.insert(blk).second)
      out.push_back(system_from_block(g, blk));
  }
  return out;
}

bool is_block_system(PermGroup const &g, BlockSystem const &b) {
  for (auto const &s : g.generators())
    for (auto const &blk : b.blocks) {
      int target = b.block_of[s[blk[0]]];
      for (int x : blk)
        if (b.block_of[s[x]] != target)
          return false;
    }
  return true;
}

bool is_primitive(PermGroup const &g) {
  if (!g.is_transitive())
    return false;
  for (int x = 1; x < g.degree(); ++x)
    if (static_cast<int>(minimal_block(g, 0, x).size()) != g.degree())
      return false;
  return true;
}

bool is_doubly_transitive(PermGroup const &g) {
  if (!g.is_transitive())
    throw DomainError("group is not transitive");
  int n = g.degree();
  if (n < 2)
    return true;
  std::vector<char> seen(n * n, 0);
  std::vector<int> queue{1};
  seen[1] = 1;
  for (std::size_t k = 0; k < queue.size(); ++k) {
    int a = queue[k] / n, b = queue[k] % n;
    for (auto const &s : g.generators()) {
      int c = s[a] * n + s[b];
      if (!seen[c]) {
        seen[c] = 1;
        queue.push_back(c);
      }
    }
  }
  return static_cast<long long>(queue.size()) == static_cast<long long>(n) * (n - 1);
}

Perm block_action(Perm const &g, BlockSystem const &b) {
  std::vector<int> img(b.blocks.size());
  for (std::size_t k = 0; k < b.blocks.size(); ++k)
    img[k] = b.block_of[g[b.blocks[k][0]]];
  return Perm(img);
}

PermGroup block_quotient(PermGroup const &g, BlockSystem const &b) {
  std::vector<Perm> gens;
  for (auto const &s : g.generators())
    gens.push_back(block_action(s, b));
  return PermGroup(static_cast<int>(b.blocks.size()), gens);
}

PermGroup kernel_of_action(PermGroup const &g, int m,
                           std::function<Perm(Perm const &)> const &act) {
  int n = g.degree();
  std::vector<Perm> combined;
  for (auto const &s : g.generators()) {
    Perm a = act(s);
    std::vector<int> img(n + m);
    for (int x = 0; x < n; ++x)
      img[x] = s[x];
    for (int y = 0; y < m; ++y)
      img[n + y] = n + a[y];
    combined.emplace_back(img);
  }
  std::vector<int> prefix(m);
  std::iota(prefix.begin(), prefix.end(), n);
  PermGroup big(n + m, combined, prefix);
  PermGroup ker = big.level_subgroup(m);
  std::vector<int> first(n);
  std::iota(first.begin(), first.end(), 0);
  std::vector<Perm> gens;
  for (auto const &k : ker.generators())
    gens.push_back(restrict_to(k, first));
  return PermGroup(n, gens);
}

PermGroup block_fixer(PermGroup const &g, BlockSystem const &b) {
  return kernel_of_action(g, static_cast<int>(b.blocks.size()),
                          [&](Perm const &s) { return block_action(s, b); });
}

Perm restrict_to(Perm const &g, std::vector<int> const &pts) {
  std::vector<int> pos(g.degree(), -1);
  for (std::size_t k = 0; k < pts.size(); ++k)
    pos[pts[k]] = static_cast<int>(k);
  std::vector<int> img(pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) {
    int y = pos[g[pts[k]]];
    if (y < 0)
      throw DomainError("permutation does not preserve the point set");
    img[k] = y;
  }
  return Perm(img);
}

PermGroup point_stabilizer(PermGroup const &g, int x) {
  return PermGroup(g.degree(), g.generators(), {x}).level_subgroup(1);
}

bool normalizes(Perm const &x, PermGroup const &h) {
  for (auto const &s : h.generators())
    if (!h.contains(s.conj(x)))
      return false;
  return true;
}

bool is_normal_subgroup(PermGroup const &g, PermGroup const &n) {
  if (!g.contains(n))
    return false;
  for (auto const &s : g.generators())
    if (!normalizes(s, n))
      return false;
  return true;
}

PermGroup normal_closure(PermGroup const &g, std::vector<Perm> const &s) {
  PermGroup n(g.degree(), s);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n.generators().size() && !changed; ++i)
      for (auto const &t : g.generators()) {
        Perm c = n.generators()[i].conj(t);
        if (!n.contains(c)) {
          n = n.with(c);
          changed = true;
          break;
        }
      }
  }
  return n;
}

PermGroup derived_subgroup(PermGroup const &g) {
  std::vector<Perm> comms;
  auto const &gs = g.generators();
  for (std::size_t i = 0; i < gs.size(); ++i)
    for (std::size_t j = i + 1; j < gs.size(); ++j)
      comms.push_back(gs[i].inverse() * gs[j].inverse() * gs[i] * gs[j]);
  return normal_closure(g, comms);
}

bool is_solvable(PermGroup const &g) {
  PermGroup cur = g;
  while (!cur.is_trivial()) {
    PermGroup d = derived_subgroup(cur);
    if (d.order() == cur.order())
      return false;
    cur = d;
  }
  return true;
}

PermGroup centralizer_of_element(PermGroup const &g, Perm const &x) {
  std::vector<Perm> keep;
  g.for_each_element([&](Perm const &y) {
    if (x * y == y * x)
      keep.push_back(y);
  });
  return group_from_elements(g.degree(), keep);
}

PermGroup center(PermGroup const &g) {
  if (g.order() > 10'000'000)
    throw DomainError("group too large for element scan");
  std::vector<Perm> keep;
  g.for_each_element([&](Perm const &y) {
    for (auto const &s : g.generators())
      if (!(s * y == y * s))
        return;
    keep.push_back(y);
  });
  return group_from_elements(g.degree(), keep);
}

bool is_p_power(BigInt n, int p) {
  if (n < 1)
    return false;
  while (n % p == 0)
    n /= p;
  return n == 1;
}

bool is_p_group(PermGroup const &g, int p) { return is_p_power(g.order(), p); }

BigInt p_part(BigInt n, int p) {
  BigInt r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

namespace {

Perm p_component(Perm const &g, int p) {
  long long o = g.order(), pp = 1;
  while (o % p == 0) {
    o /= p;
    pp *= p;
  }
  return g.pow(o);
}

} // namespace

PermGroup sylow_subgroup(PermGroup const &g, int p, std::optional<PermGroup> hint,
                         std::uint64_t seed) {
  PermGroup sub = hint ? *hint : PermGroup::trivial(g.degree());
  if (!is_p_group(sub, p) || !g.contains(sub))
    throw DomainError("hint is not a p-subgroup of the group");
  BigInt target = p_part(g.order(), p);
  auto accept = [&](Perm const &x) {
    if (x.is_identity() || sub.contains(x) || !normalizes(x, sub))
      return false;
    sub = sub.with(x);
    return true;
  };
  if (g.order() <= 10'000'000) {
    while (sub.order() < target) {
      bool grown = false;
      g.for_each_element([&](Perm const &x) {
        if (grown)
          return;
        if (is_p_power(x.order(), p) && accept(x))
          grown = true;
      });
      if (!grown)
        throw DomainError("Sylow search stalled");
    }
    return sub;
  }
  std::mt19937_64 rng(seed);
  int stale = 0;
  while (sub.order() < target) {
    Perm x = p_component(g.random_element(rng), p);
    bool grown = accept(x);
    if (!grown && !x.is_identity() && !sub.contains(x)) {
      PermGroup q = sub.with(x);
      if (is_p_group(q, p)) {
        sub = q;
        grown = true;
      }
    }
    stale = grown ? 0 : stale + 1;
    if (stale > 200000)
      throw DomainError("randomized Sylow search did not converge");
  }
  return sub;
}

PermGroup group_from_elements(int degree, std::vector<Perm> const &elems,
                              std::vector<int> base_prefix) {
  PermGroup grp(degree, {}, base_prefix);
  std::vector<Perm> gens;
  for (auto const &x : elems)
    if (!grp.contains(x)) {
      gens.push_back(x);
      grp = PermGroup(degree, gens, base_prefix);
    }
  return grp;
}

PermGroup brute_normalizer(PermGroup const &ambient, PermGroup const &h,
                           unsigned long long max_order) {
  if (ambient.order() > BigInt(max_order))
    throw DomainError("ambient group too large for exhaustive scan");
  if (ambient.degree() != h.degree())
    throw DomainError("degree mismatch");
  PermGroup n = PermGroup::trivial(ambient.degree());
  std::vector<Perm> gens;
  ambient.for_each_element([&](Perm const &x) {
    if (n.contains(x) || !normalizes(x, h))
      return;
    gens.push_back(x);
    n = PermGroup(ambient.degree(), gens);
  });
  return n;
}

std::string order_str(BigInt const &n) { return n.str(); }

} // namespace psq
