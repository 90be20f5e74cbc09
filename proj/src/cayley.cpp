#include "psq/cayley.hpp"
#include "psq/normalizers.hpp"
#include "psq/pgroups.hpp"
#include "psq/wreath.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace psq {

bool is_automorphism(Digraph const &g, Perm const &x) {
  if (x.degree() != g.n)
    return false;
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b)
      if (g.at(a, b) != g.at(x[a], x[b]))
        return false;
  return true;
}

Digraph image(Digraph const &g, Perm const &d) {
  Digraph out(g.n);
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b)
      out.set(d[a], d[b], g.at(a, b));
  return out;
}

namespace {

using Cells = std::vector<std::vector<int>>;
using Trace = std::vector<int>;

int max_color(Digraph const &g) {
  int c = 0;
  for (int x : g.color)
    c = std::max(c, x);
  return c;
}

// Split cells until equitable: vertices in a cell agree on the number of
// out- and in-arcs of each color into every cell. Records the splits so two
// refinements can be compared.
void refine(Digraph const &g, int colors, Cells &cells, Trace &trace) {
  bool changed = true;
  std::vector<int> key(2 * colors + 2);
  while (changed) {
    changed = false;
    for (std::size_t s = 0; s < cells.size(); ++s) {
      std::vector<int> const w = cells[s];
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (cells[c].size() == 1)
          continue;
        std::vector<std::pair<std::vector<int>, int>> keyed;
        for (int v : cells[c]) {
          std::fill(key.begin(), key.end(), 0);
          for (int u : w) {
            ++key[2 * g.at(v, u)];
            ++key[2 * g.at(u, v) + 1];
          }
          keyed.emplace_back(key, v);
        }
        std::sort(keyed.begin(), keyed.end());
        if (keyed.front().first == keyed.back().first)
          continue;
        Cells parts;
        trace.push_back(-1);
        trace.push_back(static_cast<int>(s));
        trace.push_back(static_cast<int>(c));
        for (std::size_t k = 0; k < keyed.size(); ++k) {
          if (k == 0 || keyed[k].first != keyed[k - 1].first) {
            parts.emplace_back();
            trace.insert(trace.end(), keyed[k].first.begin(), keyed[k].first.end());
          }
          parts.back().push_back(keyed[k].second);
        }
        for (auto const &pt : parts)
          trace.push_back(static_cast<int>(pt.size()));
        cells.erase(cells.begin() + c);
        cells.insert(cells.begin() + c, parts.begin(), parts.end());
        changed = true;
      }
    }
  }
}

Cells individualize(Cells cells, std::size_t i, int v) {
  auto &c = cells[i];
  c.erase(std::find(c.begin(), c.end(), v));
  cells.insert(cells.begin() + i, {v});
  return cells;
}

std::size_t first_open(Cells const &cells) {
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (cells[i].size() > 1)
      return i;
  return cells.size();
}

struct Refiner {
  Digraph const &g;
  int colors;

  std::pair<Cells, Trace> step(Cells const &cells, std::size_t i, int v) const {
    Cells c = individualize(cells, i, v);
    Trace t;
    refine(g, colors, c, t);
    return {c, t};
  }

  std::optional<Perm> extend(Cells const &left, Cells const &right) const {
    std::size_t i = first_open(left);
    if (i == left.size()) {
      std::vector<int> img(g.n);
      for (std::size_t k = 0; k < left.size(); ++k)
        img[left[k][0]] = right[k][0];
      Perm x(img);
      if (is_automorphism(g, x))
        return x;
      return std::nullopt;
    }
    auto [l2, lt] = step(left, i, left[i][0]);
    for (int w : right[i]) {
      auto [r2, rt] = step(right, i, w);
      if (rt != lt || r2.size() != l2.size())
        continue;
      if (auto x = extend(l2, r2))
        return x;
    }
    return std::nullopt;
  }
};

std::vector<int> orbit_of(int n, std::vector<Perm> const &gens, int x) {
  std::vector<char> seen(n, 0);
  std::vector<int> out{x};
  seen[x] = 1;
  for (std::size_t k = 0; k < out.size(); ++k)
    for (auto const &g : gens)
      if (!seen[g[out[k]]]) {
        seen[g[out[k]]] = 1;
        out.push_back(g[out[k]]);
      }
  return out;
}

PermGroup automorphisms_backtrack(Digraph const &g) {
  int n = g.n;
  Refiner r{g, max_color(g)};
  Cells root(1);
  for (int x = 0; x < n; ++x)
    root[0].push_back(x);
  Trace t0;
  refine(g, r.colors, root, t0);

  // First path: individualize the first vertex of the first open cell.
  std::vector<Cells> path{root};
  std::vector<Trace> traces{t0};
  std::vector<int> base;
  std::vector<std::size_t> cell_index;
  while (true) {
    std::size_t i = first_open(path.back());
    if (i == path.back().size())
      break;
    int v = path.back()[i][0];
    auto [c, t] = r.step(path.back(), i, v);
    base.push_back(v);
    cell_index.push_back(i);
    path.push_back(c);
    traces.push_back(t);
  }

  // Deepest level first, so the generators found so far generate the
  // stabilizer of the earlier base points.
  std::vector<Perm> gens;
  for (int k = static_cast<int>(base.size()) - 1; k >= 0; --k) {
    auto const &cell = path[k][cell_index[k]];
    for (int w : cell) {
      auto orb = orbit_of(n, gens, base[k]);
      if (std::find(orb.begin(), orb.end(), w) != orb.end())
        continue;
      auto [c, t] = r.step(path[k], cell_index[k], w);
      if (t != traces[k + 1] || c.size() != path[k + 1].size())
        continue;
      if (auto x = r.extend(path[k + 1], c))
        gens.push_back(*x);
    }
  }
  return PermGroup(n, gens);
}

// Every automorphism by depth-first assignment of images to 0, 1, 2, ...
template <class F> void for_each_automorphism(Digraph const &g, F f) {
  int n = g.n;
  std::vector<int> img(n, -1);
  std::vector<char> used(n, 0);
  auto rec = [&](auto &self, int v) -> void {
    if (v == n) {
      f(Perm(img));
      return;
    }
    for (int w = 0; w < n; ++w) {
      if (used[w] || g.at(v, v) != g.at(w, w))
        continue;
      bool ok = true;
      for (int u = 0; u < v && ok; ++u)
        ok = g.at(u, v) == g.at(img[u], w) && g.at(v, u) == g.at(w, img[u]);
      if (!ok)
        continue;
      img[v] = w;
      used[w] = 1;
      self(self, v + 1);
      used[w] = 0;
    }
    img[v] = -1;
  };
  rec(rec, 0);
}

} // namespace

unsigned long long count_automorphisms_exhaustive(Digraph const &g) {
  if (g.n > 10)
    throw DomainError("exhaustive automorphism scan needs at most 10 vertices");
  unsigned long long count = 0;
  for_each_automorphism(g, [&](Perm const &) { ++count; });
  return count;
}

PermGroup digraph_automorphisms(Digraph const &g, SearchMode mode) {
  if (g.n < 1 || g.n > 255)
    throw DomainError("unsupported digraph size");
  if (mode == SearchMode::Backtrack)
    return automorphisms_backtrack(g);
  if (g.n > 10)
    throw DomainError("exhaustive automorphism scan needs at most 10 vertices");
  PermGroup a = PermGroup::trivial(g.n);
  unsigned long long count = 0;
  for_each_automorphism(g, [&](Perm const &x) {
    ++count;
    if (!a.contains(x))
      a = a.with(x);
  });
  if (a.order() != count)
    throw std::logic_error("automorphism count disagrees with the group order");
  return a;
}

std::string kind_name(GroupKind k) { return k == GroupKind::Cyclic ? "cyclic" : "elementary"; }

int group_add(int p, GroupKind kind, int x, int y) {
  if (kind == GroupKind::Cyclic)
    return (x + y) % (p * p);
  return (x % p + y % p) % p + ((x / p + y / p) % p) * p;
}

int group_neg(int p, GroupKind kind, int x) {
  if (kind == GroupKind::Cyclic)
    return (p * p - x) % (p * p);
  return (p - x % p) % p + ((p - x / p) % p) * p;
}

PermGroup left_regular(int p, GroupKind kind) {
  if (kind == GroupKind::Cyclic)
    return PermGroup(p * p, {std_tau(p)});
  return PermGroup(p * p, {std_rho2(p), std_rho1(p)});
}

std::vector<std::vector<int>> order_p_subgroups(int p, GroupKind kind) {
  std::set<std::vector<int>> out;
  for (int x = 1; x < p * p; ++x) {
    std::vector<int> h{0};
    for (int y = x; y != 0; y = group_add(p, kind, y, x))
      h.push_back(y);
    if (static_cast<int>(h.size()) == p) {
      std::sort(h.begin(), h.end());
      out.insert(h);
    }
  }
  return {out.begin(), out.end()};
}

CayleyDigraph make_cayley(int p, GroupKind kind, std::vector<int> S) {
  if (!is_prime(p))
    throw DomainError("p must be prime");
  std::sort(S.begin(), S.end());
  S.erase(std::unique(S.begin(), S.end()), S.end());
  for (int s : S)
    if (s <= 0 || s >= p * p)
      throw DomainError("connection set must lie in the nonzero group elements");
  return {p, kind, S};
}

Digraph to_digraph(CayleyDigraph const &c) {
  Digraph g(c.p * c.p);
  for (int x = 0; x < g.n; ++x)
    for (int s : c.S)
      g.set(x, group_add(c.p, c.kind, x, s));
  return g;
}

PermGroup digraph_automorphisms(CayleyDigraph const &c, SearchMode mode) {
  return digraph_automorphisms(to_digraph(c), mode);
}

Digraph OrbitalSet::digraph(std::size_t i) const {
  Digraph g(n);
  for (auto [x, y] : orbitals.at(i))
    g.set(x, y);
  return g;
}

Digraph OrbitalSet::colored() const {
  Digraph g(n);
  for (std::size_t i = 0; i < orbitals.size(); ++i)
    for (auto [x, y] : orbitals[i])
      g.set(x, y, static_cast<int>(i) + 1);
  return g;
}

OrbitalSet orbital_digraphs(PermGroup const &g) {
  if (!g.is_transitive())
    throw DomainError("group is not transitive");
  int n = g.degree();
  OrbitalSet out{n, {}, {}};
  for (int x = 0; x < n; ++x)
    out.diagonal.emplace_back(x, x);
  std::vector<char> seen(static_cast<std::size_t>(n) * n, 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (x == y || seen[x * n + y])
        continue;
      std::vector<std::pair<int, int>> orb{{x, y}};
      seen[x * n + y] = 1;
      for (std::size_t k = 0; k < orb.size(); ++k)
        for (auto const &s : g.generators()) {
          int a = s[orb[k].first], b = s[orb[k].second];
          if (!seen[a * n + b]) {
            seen[a * n + b] = 1;
            orb.emplace_back(a, b);
          }
        }
      std::sort(orb.begin(), orb.end());
      out.orbitals.push_back(orb);
    }
  return out;
}

PermGroup two_closure(PermGroup const &g) {
  if (g.degree() > 64)
    throw DomainError("degree too large for the 2-closure");
  return digraph_automorphisms(orbital_digraphs(g).colored());
}

bool is_normal_cayley(CayleyDigraph const &c, PermGroup const &aut) {
  PermGroup reg = left_regular(c.p, c.kind);
  for (auto const &a : aut.generators())
    for (auto const &r : reg.generators())
      if (!reg.contains(r.conj(a)))
        return false;
  return true;
}

bool is_normal_cayley(CayleyDigraph const &c) {
  return is_normal_cayley(c, digraph_automorphisms(c));
}

PermGroup wreath_product_group(PermGroup const &g1, PermGroup const &g2) {
  int p = g1.degree(), m = g2.degree(), n = p * m;
  std::vector<Perm> gens;
  for (auto const &h : g1.generators()) {
    std::vector<int> img(n);
    for (int a = 0; a < p; ++a)
      for (int j = 0; j < m; ++j)
        img[a + j * p] = h[a] + j * p;
    gens.emplace_back(img);
  }
  for (int a = 0; a < p; ++a)
    for (auto const &x : g2.generators()) {
      std::vector<int> img(n);
      for (int b = 0; b < p; ++b)
        for (int j = 0; j < m; ++j)
          img[b + j * p] = b + (b == a ? x[j] : j) * p;
      gens.emplace_back(img);
    }
  return PermGroup(n, gens);
}

Digraph wreath_digraph(Digraph const &g1, Digraph const &g2) {
  int p = g1.n, m = g2.n;
  Digraph g(p * m);
  for (int a = 0; a < p; ++a)
    for (int j = 0; j < m; ++j)
      for (int b = 0; b < p; ++b)
        for (int k = 0; k < m; ++k) {
          bool arc = a != b ? g1.arc(a, b) : g2.arc(j, k);
          if (arc)
            g.set(a + j * p, b + k * p);
        }
  return g;
}

std::string TwoClosedCase::label() const {
  return "T" + std::to_string(theorem) + "(" + std::to_string(case_no) + ")";
}

namespace {

BigInt factorial_big(int n) {
  BigInt f = 1;
  for (int k = 2; k <= n; ++k)
    f *= k;
  return f;
}

std::optional<PermGroup> find_regular(PermGroup const &g, GroupKind kind) {
  int n = g.degree(), p = 0;
  for (int q = 2; q * q <= n; ++q)
    if (q * q == n)
      p = q;
  PermGroup std_reg = left_regular(p, kind);
  if (g.contains(std_reg))
    return std_reg;
  PermGroup P = sylow_subgroup(g, p);
  auto elems = P.elements();
  if (kind == GroupKind::Cyclic) {
    for (auto const &x : elems)
      if (x.order() == n && x.num_fixed_points() == 0)
        return PermGroup(n, {x});
    return std::nullopt;
  }
  std::vector<Perm> semi;
  for (auto const &x : elems)
    if (x.order() == p && x.num_fixed_points() == 0)
      semi.push_back(x);
  for (std::size_t i = 0; i < semi.size(); ++i)
    for (std::size_t j = i + 1; j < semi.size(); ++j)
      if (semi[i] * semi[j] == semi[j] * semi[i]) {
        PermGroup r(n, {semi[i], semi[j]});
        if (r.order() == n && r.is_transitive())
          return r;
      }
  return std::nullopt;
}

struct WreathWitness {
  PermGroup g1, g2;
  Perm frame;
};

// G = G1 wr G2 for the block system B, in the frame a + j p where block a
// is labelled through an element of G taking block 0 to it.
std::optional<WreathWitness> wreath_witness(PermGroup const &g, BlockSystem const &B) {
  int n = g.degree();
  int p = static_cast<int>(B.blocks.size()), m = static_cast<int>(B.blocks[0].size());
  PermGroup k = block_fixer(g, B);
  BigInt prod = 1;
  std::vector<Perm> r0;
  for (std::size_t b = 0; b < B.blocks.size(); ++b) {
    std::vector<Perm> rs;
    for (auto const &x : k.generators())
      rs.push_back(restrict_to(x, B.blocks[b]));
    PermGroup kb(m, rs);
    prod *= kb.order();
    if (b == 0)
      r0 = rs;
  }
  if (prod != k.order())
    return std::nullopt;
  std::vector<std::optional<Perm>> t(p);
  t[0] = Perm(n);
  std::vector<int> todo{0};
  for (std::size_t q = 0; q < todo.size(); ++q)
    for (auto const &s : g.generators()) {
      Perm x = *t[todo[q]] * s;
      int b = B.block_of[x[B.blocks[0][0]]];
      if (!t[b]) {
        t[b] = x;
        todo.push_back(b);
      }
    }
  std::vector<int> img(n);
  for (int a = 0; a < p; ++a)
    for (int j = 0; j < m; ++j)
      img[a + j * p] = (*t[a])[B.blocks[0][j]];
  Perm lambda(img);
  Perm frame = lambda.inverse();
  PermGroup gs = g.conjugate(frame);
  PermGroup g2(m, r0);
  std::vector<Perm> tops;
  for (auto const &x : gs.generators()) {
    std::vector<int> h(p);
    for (int a = 0; a < p; ++a) {
      h[a] = x[a] % p;
      std::vector<int> v(m);
      for (int j = 0; j < m; ++j)
        v[j] = x[a + j * p] / p;
      if (!g2.contains(Perm(v)))
        return std::nullopt;
    }
    tops.emplace_back(h);
  }
  PermGroup g1(p, tops);
  if (!gs.equals(wreath_product_group(g1, g2)))
    return std::nullopt;
  return WreathWitness{g1, g2, frame};
}

bool is_affine(Perm const &x) {
  int p = x.degree();
  long long alpha = ((x[1] - x[0]) % p + p) % p;
  if (alpha == 0)
    return false;
  for (int a = 0; a < p; ++a)
    if (x[a] != (alpha * a + x[0]) % p)
      return false;
  return true;
}

struct ProductFrame {
  Perm coords; // x -> (block in B1) + p (block in B2)
};

// Coordinates from two block systems, labelled so the regular group acts by
// translations.
std::optional<Perm> product_frame(PermGroup const &reg, BlockSystem const &b1,
                                  BlockSystem const &b2, int p) {
  int n = p * p;
  auto label = [&](BlockSystem const &B) -> std::optional<std::vector<int>> {
    for (auto const &r : reg.generators()) {
      int b0 = B.block_of[0];
      if (B.block_of[r[0]] == b0)
        continue;
      std::vector<int> lab(p, -1);
      int x = 0;
      for (int k = 0; k < p; ++k, x = r[x])
        lab[B.block_of[x]] = k;
      if (std::find(lab.begin(), lab.end(), -1) == lab.end())
        return lab;
    }
    return std::nullopt;
  };
  auto l1 = label(b1), l2 = label(b2);
  if (!l1 || !l2)
    return std::nullopt;
  std::vector<int> img(n);
  std::vector<char> seen(n, 0);
  for (int x = 0; x < n; ++x) {
    img[x] = (*l1)[b1.block_of[x]] + p * (*l2)[b2.block_of[x]];
    if (seen[img[x]]++)
      return std::nullopt;
  }
  return Perm(img);
}

} // namespace

TwoClosedCase classify_2closed(PermGroup const &g, GroupKind kind) {
  int n = g.degree(), p = 0;
  for (int q = 2; q * q <= n; ++q)
    if (q * q == n)
      p = q;
  if (!p || !is_prime(p))
    throw DomainError("degree must be the square of a prime");
  auto reg = find_regular(g, kind);
  if (!reg)
    throw DomainError("no regular subgroup of the requested kind");
  BigInt full = factorial_big(n);
  TwoClosedCase out{kind == GroupKind::Cyclic ? 15 : 14, 0, "", {}, {}, {}};
  auto fail = [&](std::string const &why) {
    throw std::logic_error("2-closed group violates " + out.label() + ": " + why);
  };

  if (kind == GroupKind::Cyclic) {
    if (g.order() == full) {
      out.case_no = 1;
      out.detail = "symmetric";
      return out;
    }
    bool normal = true;
    for (auto const &x : g.generators())
      normal = normal && normalizes(x, *reg);
    if (normal) {
      out.case_no = 2;
      out.detail = "normalizes the regular cyclic group";
      return out;
    }
    out.case_no = 3;
    for (auto const &B : block_systems(g, p))
      if (auto w = wreath_witness(g, B)) {
        out.factor1 = w->g1;
        out.factor2 = w->g2;
        out.frame = w->frame;
        out.detail = "wreath product";
        return out;
      }
    fail("not a wreath product");
  }

  if (is_doubly_transitive(g)) {
    out.case_no = 1;
    if (g.order() != full)
      fail("doubly transitive but not symmetric");
    out.detail = "symmetric";
    return out;
  }
  bool solvable = is_solvable(g);
  bool affine = true;
  for (auto const &x : g.generators())
    affine = affine && normalizes(x, *reg);
  if (is_primitive(g)) {
    out.case_no = solvable ? 2 : 3;
    if (affine) {
      out.detail = "inside AGL(2,p)";
      return out;
    }
    BigInt fp = factorial_big(p);
    if (solvable || g.order() != 2 * fp * fp)
      fail("primitive group outside AGL(2,p)");
    out.detail = "S_2 wr S_p product action";
    return out;
  }
  PermGroup P = sylow_subgroup(g, p, *reg);
  if (P.order() > n) {
    out.case_no = 6;
    for (auto const &B : block_systems(g, p))
      if (auto w = wreath_witness(g, B)) {
        out.factor1 = w->g1;
        out.factor2 = w->g2;
        out.frame = w->frame;
        out.detail = "wreath product";
        return out;
      }
    fail("not a wreath product");
  }
  out.case_no = solvable ? 4 : 5;
  auto systems = block_systems(g, p);
  for (std::size_t i = 0; i < systems.size(); ++i)
    for (std::size_t j = 0; j < systems.size(); ++j) {
      if (i == j)
        continue;
      auto coords = product_frame(*reg, systems[i], systems[j], p);
      if (!coords)
        continue;
      PermGroup gs = g.conjugate(*coords);
      auto d = product_decompose(gs);
      if (solvable) {
        bool ok = true;
        for (auto const &x : d.H.generators())
          ok = ok && is_affine(x);
        for (auto const &[s, t] : d.f)
          ok = ok && is_affine(t);
        for (auto const &x : d.K.generators())
          ok = ok && is_affine(x);
        if (!ok)
          continue;
        out.detail = p == 3 ? "inside S_3 x S_3" : "inside AGL(1,p) x AGL(1,p)";
        out.frame = *coords;
        out.factor1 = d.H;
        out.factor2 = d.K;
        return out;
      }
      if (d.H.order() * d.K.order() != g.order())
        continue;
      BigInt fp = factorial_big(p);
      auto proper_affine = [&](PermGroup const &a) {
        if (a.order() >= BigInt(p) * (p - 1))
          return false;
        for (auto const &x : a.generators())
          if (!is_affine(x))
            return false;
        return true;
      };
      bool h_sym = d.H.order() == fp, k_sym = d.K.order() == fp;
      if ((h_sym && (k_sym || proper_affine(d.K))) || (k_sym && proper_affine(d.H))) {
        out.detail = h_sym && k_sym ? "S_p x S_p" : h_sym ? "S_p x A" : "A x S_p";
        out.frame = *coords;
        out.factor1 = d.H;
        out.factor2 = d.K;
        return out;
      }
    }
  fail("no product coordinates of the predicted shape");
  return out;
}

bool is_wreath_decomposable(CayleyDigraph const &c) {
  std::set<int> S(c.S.begin(), c.S.end());
  for (auto const &h : order_p_subgroups(c.p, c.kind)) {
    std::set<int> hs(h.begin(), h.end());
    bool ok = true;
    for (int s : c.S) {
      if (hs.count(s))
        continue;
      for (int x : h)
        ok = ok && S.count(group_add(c.p, c.kind, s, x));
    }
    if (ok)
      return true;
  }
  return false;
}

std::string corollary3_predicate(CayleyDigraph const &c) {
  int p = c.p, n = p * p;
  std::set<int> S(c.S.begin(), c.S.end());
  if (static_cast<int>(S.size()) == n - 1 && (p >= 3 || c.kind == GroupKind::Cyclic))
    return "1";
  if (p >= 3 && is_wreath_decomposable(c))
    return "2";
  if (c.kind != GroupKind::Elementary || p < 5)
    return "normal";
  auto subs = order_p_subgroups(p, c.kind);
  for (std::size_t i = 0; i < subs.size(); ++i)
    for (std::size_t j = i + 1; j < subs.size(); ++j) {
      std::set<int> t(subs[i].begin(), subs[i].end());
      t.insert(subs[j].begin(), subs[j].end());
      t.erase(0);
      std::set<int> comp;
      for (int x = 1; x < n; ++x)
        if (!t.count(x))
          comp.insert(x);
      if (S == t || S == comp)
        return "3";
    }
  for (auto const &h : subs) {
    std::set<int> hs(h.begin(), h.end());
    int inter = 0;
    for (int x : h)
      inter += S.count(x);
    if (inter != 0 && inter != p - 1)
      continue;
    for (auto const &h2 : subs) {
      if (h2 == h)
        continue;
      bool ok = true;
      for (int a : h2) {
        if (a == 0)
          continue;
        std::set<int> coset, meet;
        for (int x : h) {
          int y = group_add(p, c.kind, a, x);
          coset.insert(y);
          if (S.count(y))
            meet.insert(y);
        }
        std::set<int> minus = coset;
        minus.erase(a);
        ok = ok && (meet == coset || meet.empty() || meet == std::set<int>{a} || meet == minus);
      }
      if (ok)
        return "4";
    }
  }
  return "normal";
}

namespace {

std::vector<Perm> linear_maps(int p) {
  std::vector<Perm> out;
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      for (int c = 0; c < p; ++c)
        for (int d = 0; d < p; ++d) {
          if ((a * d - b * c) % p == 0)
            continue;
          std::vector<int> img(p * p);
          for (int x = 0; x < p; ++x)
            for (int y = 0; y < p; ++y)
              img[x + y * p] = (a * x + b * y) % p + ((c * x + d * y) % p) * p;
          out.emplace_back(img);
        }
  return out;
}

int sylow_index(BigInt order, int p) {
  int e = -1;
  for (BigInt o = p_part(order, p); o > 1; o /= p)
    ++e;
  return e;
}

} // namespace

IsoResult iso_by_normalizer(CayleyDigraph const &x, CayleyDigraph const &y) {
  if (x.p != y.p || x.kind != y.kind)
    throw DomainError("digraphs of different groups");
  int p = x.p;
  Digraph gx = to_digraph(x), gy = to_digraph(y);
  PermGroup ax = digraph_automorphisms(gx), ay = digraph_automorphisms(gy);
  int i = sylow_index(ax.order(), p);
  if (i != sylow_index(ay.order(), p))
    throw DomainError("Sylow subgroups of different orders");
  IsoResult res;
  auto try_map = [&](Perm const &d) {
    ++res.candidates_tried;
    if (!res.map && image(gx, d) == gy)
      res.map = d;
  };
  if (x.kind == GroupKind::Cyclic) {
    if (i < 2 || i > p - 1)
      throw DomainError("Sylow subgroup must be P_i with 2 <= i <= p-1");
    PermGroup Pi = build_P(p, i, PFamily::Cyclic);
    if (!ax.contains(Pi) || !ay.contains(Pi))
      throw DomainError("P_i is not a Sylow subgroup of both automorphism groups");
    long long r = smallest_primitive_root(p), beta = 1;
    for (int k = 0; k < p; ++k)
      beta = beta * r % (p * p);
    Perm bhat = scalar_map(p, ScalarKind::Hat, beta), gam = std_gamma(p, i + 1);
    for (int j = 1; j <= p - 1; ++j)
      for (int k = 1; k <= p; ++k)
        try_map(bhat.pow(j) * gam.pow(k));
    return res;
  }
  if (i < 1 || i > p - 1)
    throw DomainError("Sylow subgroup must be conjugate to P'_i with 1 <= i <= p-1");
  PermGroup target = build_P(p, i, PFamily::Elementary);
  PermGroup reg = left_regular(p, GroupKind::Elementary);
  auto lins = linear_maps(p);
  auto align = [&](PermGroup const &a) {
    PermGroup s = sylow_subgroup(a, p, reg);
    for (auto const &l : lins)
      if (s.conjugate(l).equals(target))
        return l;
    throw DomainError("Sylow subgroup is not a linear conjugate of P'_i");
  };
  Perm a1 = align(ax), a2i = align(ay).inverse();
  if (i == 1) {
    // N(P'_1) = AGL(2,p): the linear maps are the coset representatives.
    for (auto const &l : lins)
      try_map(a1 * l * a2i);
    return res;
  }
  long long b = smallest_primitive_root(p);
  Perm bar = scalar_map(p, ScalarKind::Bar, b), tilde = scalar_map(p, ScalarKind::Tilde, b);
  Perm gam = std_gamma(p, i + 1);
  for (int j = 1; j <= p - 1; ++j)
    for (int k = 1; k <= p - 1; ++k)
      for (int l = 1; l <= p; ++l)
        try_map(a1 * bar.pow(j) * tilde.pow(k) * gam.pow(l) * a2i);
  return res;
}

CatalogRecord catalog_record(CayleyDigraph const &c) {
  PermGroup aut = digraph_automorphisms(c);
  return {c.p,
          c.kind,
          c.S,
          aut.order(),
          is_normal_cayley(c, aut),
          classify_2closed(aut, c.kind).label(),
          corollary3_predicate(c)};
}

std::vector<CatalogRecord> catalog(int p, GroupKind kind) {
  if (!is_prime(p))
    throw DomainError("p must be prime");
  if (p > 3)
    throw DomainError("exhaustive catalog needs p <= 3; use the sampled catalog");
  int m = p * p - 1;
  std::vector<std::vector<int>> sets;
  for (int mask = 0; mask < (1 << m); ++mask) {
    std::vector<int> S;
    for (int k = 0; k < m; ++k)
      if (mask >> k & 1)
        S.push_back(k + 1);
    sets.push_back(S);
  }
  std::sort(sets.begin(), sets.end());
  std::vector<CatalogRecord> out;
  for (auto const &S : sets)
    out.push_back(catalog_record(make_cayley(p, kind, S)));
  return out;
}

std::vector<CatalogRecord> catalog_sample(int p, GroupKind kind, int count, std::uint64_t seed) {
  if (!is_prime(p) || p > 7)
    throw DomainError("sampled catalog needs a prime p <= 7");
  std::mt19937_64 rng(seed);
  std::set<std::vector<int>> sets;
  for (int k = 0; k < count; ++k) {
    std::vector<int> S;
    for (int x = 1; x < p * p; ++x)
      if (rng() & 1)
        S.push_back(x);
    sets.insert(S);
  }
  std::vector<CatalogRecord> out;
  for (auto const &S : sets)
    out.push_back(catalog_record(make_cayley(p, kind, S)));
  return out;
}

std::string catalog_json_line(CatalogRecord const &r) {
  nlohmann::ordered_json j;
  j["p"] = r.p;
  j["kind"] = kind_name(r.kind);
  j["S"] = r.S;
  j["autOrder"] = order_str(r.aut_order);
  j["normal"] = r.normal;
  j["case"] = r.case_label;
  j["corollary3"] = r.corollary3;
  return j.dump();
}

} // namespace psq
