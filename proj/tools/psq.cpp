// Command-line frontend. JSON goes to stdout, errors as JSON to stderr.
// Exit codes: 0 success, 1 domain error or failed verification, 2 usage error.

#include "acceptance.hpp"
#include "psq/cayley.hpp"
#include "psq/codes.hpp"
#include "psq/normalizers.hpp"
#include "psq/pgroups.hpp"
#include "psq/projective.hpp"
#include "psq/wreath.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

using namespace psq;
using Json = nlohmann::ordered_json;

namespace {

struct Options {
  int p = 3;
  int i = 1;
  std::string family = "P";
  std::string format = "json";
  std::uint64_t seed = 1;
};

PFamily parse_family(std::string const &f) {
  if (f == "P" || f == "cyclic")
    return PFamily::Cyclic;
  if (f == "Pprime" || f == "elementary")
    return PFamily::Elementary;
  if (f == "wreath")
    return PFamily::Wreath;
  throw DomainError("unknown family '" + f + "' (use P, Pprime or wreath)");
}

GroupKind parse_kind(std::string const &k) {
  if (k == "cyclic")
    return GroupKind::Cyclic;
  if (k == "elementary")
    return GroupKind::Elementary;
  throw DomainError("unknown group kind '" + k + "' (use cyclic or elementary)");
}

void require_prime(int p) {
  if (!is_prime(p))
    throw DomainError("p must be prime");
}

std::vector<long long> parse_ints(std::string const &s) {
  std::vector<long long> out;
  std::string tok;
  std::istringstream in(s);
  while (std::getline(in, tok, ',')) {
    if (tok.find_first_not_of(' ') == std::string::npos)
      continue;
    try {
      out.push_back(std::stoll(tok));
    } catch (std::exception const &) {
      throw DomainError("bad integer '" + tok + "'");
    }
  }
  return out;
}

std::vector<int> parse_set(std::string const &s) {
  std::vector<int> out;
  for (long long x : parse_ints(s))
    out.push_back(static_cast<int>(x));
  return out;
}

PermGroup parse_group(std::vector<std::string> const &gens, int degree) {
  std::vector<Perm> g;
  for (auto const &s : gens)
    g.push_back(Perm::parse(s, degree));
  return PermGroup(degree, g);
}

Json gens_json(PermGroup const &g) {
  Json a = Json::array();
  for (auto const &x : g.generators())
    a.push_back(x.str_cycles());
  return a;
}

Json group_json(PermGroup const &g) {
  return Json{{"degree", g.degree()}, {"order", order_str(g.order())}, {"generators", gens_json(g)}};
}

Json code_json(Code const &c) {
  Json rows = Json::array();
  for (auto const &r : c.rows())
    rows.push_back(r);
  Json j{{"modulus", c.modulus()}, {"length", c.length()}, {"size", order_str(c.size())}, {"rows", rows}};
  if (c.exponent() == 1) {
    j["dimension"] = c.dimension();
    if (c.is_cyclic())
      j["generator"] = generator_polynomial(c).str();
  }
  return j;
}

void emit(Json const &j, Options const &o) {
  if (o.format == "json") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  for (auto const &[k, v] : j.items())
    std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
}

Json header(std::string const &command, Options const &o) {
  return Json{{"command", command}, {"seed", o.seed}};
}

// H <= S_p by name: cyclic, symmetric, alternating or affine:m (Z_p with a
// multiplier of order m).
PermGroup named_group(std::string const &name, int p) {
  if (name == "cyclic")
    return PermGroup::cyclic(p);
  if (name == "symmetric")
    return PermGroup::symmetric(p);
  if (name == "alternating")
    return PermGroup::alternating(p);
  if (name.rfind("affine:", 0) == 0) {
    long long m = parse_ints(name.substr(7)).at(0);
    if (m < 1 || (p - 1) % m != 0)
      throw DomainError("affine multiplier order must divide p - 1");
    long long b = 1, g = smallest_primitive_root(p);
    for (long long k = 0; k < (p - 1) / m; ++k)
      b = b * g % p;
    std::vector<int> img(p);
    for (int x = 0; x < p; ++x)
      img[x] = static_cast<int>(b * x % p);
    return PermGroup(p, {PermGroup::cyclic(p).generators()[0], Perm(img)});
  }
  throw DomainError("unknown group '" + name + "' (cyclic, symmetric, alternating, affine:m)");
}

struct TupleArgs {
  std::string h = "cyclic";
  std::string l = "cyclic";
  long long n = 0;
  std::vector<std::string> k;
  int cocycle = 0;
};

WreathTuple tuple_from(TupleArgs const &a, int p) {
  PermGroup H = named_group(a.h, p), L = named_group(a.l, p);
  PermGroup nl;
  Perm gen;
  long long n = 0;
  normalizer_data(L, nl, gen, n);
  if (a.n && a.n != n)
    throw DomainError("n must be |N(L)/L| = " + std::to_string(n));
  std::vector<Vec> k;
  for (auto const &s : a.k)
    k.push_back(parse_ints(s));
  QuotientModule m(p, n, k);
  auto all = all_crossed_homs(H, m);
  if (a.cocycle < 0 || a.cocycle >= static_cast<int>(all.size()))
    throw DomainError("cocycle index out of range (" + std::to_string(all.size()) + " cocycles)");
  return make_wreath_tuple(H, L, k, all[a.cocycle]);
}

Json tuple_json(WreathTuple const &t) {
  Json k = Json::array();
  for (auto const &v : t.phi.module.subgroup_generators())
    k.push_back(v);
  Json phi = Json::array();
  for (std::size_t e = 0; e < t.phi.elements.size(); ++e)
    phi.push_back({{"h", t.phi.elements[e].str_cycles()}, {"value", t.phi.module.rep(t.phi.values[e])}});
  return Json{{"p", t.p},          {"H", group_json(t.H)}, {"L", group_json(t.L)},
              {"n", t.n},          {"coset_generator", t.coset_gen.str_cycles()},
              {"K", k},            {"phi", phi}};
}

void add_common(CLI::App *c, Options &o) {
  c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "table"}));
  c->add_option("--seed", o.seed, "Seed for randomized steps (echoed in output)");
}

std::vector<CatalogRecord> parallel_records(int p, GroupKind kind, std::vector<std::vector<int>> const &sets,
                                            int jobs) {
  std::vector<CatalogRecord> out(sets.size());
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(sets.size())));
  std::vector<std::future<void>> fs;
  for (int j = 0; j < jobs; ++j)
    fs.push_back(std::async(std::launch::async, [&, j] {
      for (std::size_t k = j; k < sets.size(); k += jobs)
        out[k] = catalog_record(make_cayley(p, kind, sets[k]));
    }));
  for (auto &f : fs)
    f.get();
  return out;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Transitive groups of degree p^2: construction, recognition, codes, cohomology, Cayley digraphs"};
  app.require_subcommand(1);
  Options o;
  std::function<Json()> action;

  // construct
  auto *construct = app.add_subcommand("construct", "Build P_i, P'_i or the Sylow wreath product");
  construct->add_option("--p", o.p)->required();
  construct->add_option("--i", o.i)->required();
  construct->add_option("--family", o.family, "P, Pprime or wreath");
  add_common(construct, o);
  construct->callback([&] {
    action = [&] {
      require_prime(o.p);
      PermGroup g = build_P(o.p, o.i, parse_family(o.family));
      Json j = header("construct", o);
      j["p"] = o.p;
      j["family"] = o.family;
      j["i"] = o.i;
      j.update(group_json(g));
      return j;
    };
  });

  // recognize
  std::vector<std::string> rec_gens;
  auto *recognize = app.add_subcommand("recognize", "Recognize a transitive group of degree p^2");
  recognize->add_option("--p", o.p)->required();
  recognize->add_option("--gen", rec_gens, "Generator in cycle notation, e.g. \"(0 1 2)(3 4 5)\"")->required();
  add_common(recognize, o);
  recognize->callback([&] {
    action = [&] {
      require_prime(o.p);
      PermGroup g = parse_group(rec_gens, o.p * o.p);
      Json j = header("recognize", o);
      j["p"] = o.p;
      j["order"] = order_str(g.order());
      if (is_p_group(g, o.p)) {
        auto k = recognize_p_subgroup(g);
        j["p_subgroup"] = {{"family", family_name(k.family)}, {"i", k.i}, {"conjugator", k.conjugator.str_cycles()}};
      }
      auto c = classify_transitive(g, o.seed);
      j["classification"] = {{"label", c.label}, {"tag", c.tag}, {"sylow_order", order_str(c.sylow.order())},
                             {"sylow_normal", c.sylow_normal}};
      if (c.sylow_kind)
        j["classification"]["sylow_kind"] = {{"family", family_name(c.sylow_kind->family)}, {"i", c.sylow_kind->i}};
      return j;
    };
  });

  // normalizer
  auto *normalizer = app.add_subcommand("normalizer", "Normalizer of P_i or P'_i in S_{p^2}");
  normalizer->add_option("--p", o.p)->required();
  normalizer->add_option("--i", o.i)->required();
  normalizer->add_option("--family", o.family, "P or Pprime");
  add_common(normalizer, o);
  normalizer->callback([&] {
    action = [&] {
      require_prime(o.p);
      PFamily f = parse_family(o.family);
      PermGroup n = f == PFamily::Elementary ? normalizer_Pi_prime(o.p, o.i) : normalizer_Pi(o.p, o.i);
      Json j = header("normalizer", o);
      j["p"] = o.p;
      j["family"] = o.family;
      j["i"] = o.i;
      j.update(group_json(n));
      return j;
    };
  });

  // code
  auto *code = app.add_subcommand("code", "Cyclic codes");
  code->require_subcommand(1);
  auto *induced = code->add_subcommand("induced", "Induced code of the block fixer of P_i or P'_i");
  induced->add_option("--p", o.p)->required();
  induced->add_option("--i", o.i)->required();
  induced->add_option("--family", o.family);
  add_common(induced, o);
  induced->callback([&] {
    action = [&] {
      require_prime(o.p);
      PermGroup g = build_P(o.p, o.i, parse_family(o.family));
      BlockSystem b = standard_blocks(o.p);
      Json j = header("code induced", o);
      j["p"] = o.p;
      j["family"] = o.family;
      j["i"] = o.i;
      j["code"] = code_json(induced_code(block_fixer(g, b), b));
      return j;
    };
  });
  long long q = 2;
  int t = 1;
  std::string mults;
  auto *invariant = code->add_subcommand("invariant", "Cyclic codes invariant under multipliers");
  invariant->add_option("--p", o.p)->required();
  invariant->add_option("--q", q)->required();
  invariant->add_option("--mult", mults, "Comma-separated multipliers generating A <= Z_p^*");
  add_common(invariant, o);
  invariant->callback([&] {
    action = [&] {
      require_prime(o.p);
      auto a = parse_set(mults);
      auto codes = invariant_cyclic_codes(o.p, q, a);
      Json j = header("code invariant", o);
      j["p"] = o.p;
      j["q"] = q;
      j["A"] = unit_subgroup(o.p, a);
      j["count"] = codes.size();
      j["codes"] = Json::array();
      for (auto const &c : codes)
        j["codes"].push_back(code_json(c));
      return j;
    };
  });
  std::vector<std::string> vecs;
  auto *chain = code->add_subcommand("chain", "Chain of a cyclic code over Z_{q^t} and back");
  chain->add_option("--p", o.p)->required();
  chain->add_option("--q", q)->required();
  chain->add_option("--t", t)->required();
  chain->add_option("--vec", vecs, "Generator vector, comma-separated; shifts are added")->required();
  add_common(chain, o);
  chain->callback([&] {
    action = [&] {
      require_prime(o.p);
      std::vector<Vec> rows;
      for (auto const &s : vecs) {
        Vec v = parse_ints(s);
        if (static_cast<int>(v.size()) != o.p)
          throw DomainError("vector length must be p");
        for (int k = 0; k < o.p; ++k, v = shift_vec(v))
          rows.push_back(v);
      }
      Code c(q, t, o.p, rows);
      CodeChain ch = chain_of_code(c);
      Json j = header("code chain", o);
      j["p"] = o.p;
      j["q"] = q;
      j["t"] = t;
      j["code"] = code_json(c);
      j["levels"] = Json::array();
      for (auto const &l : ch.levels)
        j["levels"].push_back(code_json(l));
      j["round_trip"] = code_from_chain(ch) == c;
      return j;
    };
  });

  // bardoe-sin
  int r = 2, d = 2;
  auto *bs = app.add_subcommand("bardoe-sin", "PSL(d, r^t)-invariant subspaces of F_r^{points}");
  bs->add_option("--r", r)->required();
  bs->add_option("--t", t)->required();
  bs->add_option("--d", d)->required();
  add_common(bs, o);
  bs->callback([&] {
    action = [&] {
      FieldTower f(r, t);
      auto mods = all_invariant_modules(f, d);
      Json j = header("bardoe-sin", o);
      j["r"] = r;
      j["t"] = t;
      j["d"] = d;
      j["count"] = mods.size();
      j["modules"] = Json::array();
      for (auto const &m : mods) {
        Json ideal = Json::array();
        for (auto const &h : m.ideal)
          ideal.push_back(h);
        j["modules"].push_back({{"ideal", ideal}, {"dimension", m.module.dimension()}});
      }
      return j;
    };
  });

  // wreath
  TupleArgs t1, t2;
  std::vector<std::string> wgens;
  auto *wreath = app.add_subcommand("wreath", "Imprimitive groups from crossed homomorphisms");
  wreath->require_subcommand(1);
  auto tuple_options = [](CLI::App *c, TupleArgs &a, std::string const &suffix) {
    c->add_option("--top" + suffix, a.h, "Group on blocks: cyclic, symmetric, alternating, affine:m");
    c->add_option("--inner" + suffix, a.l, "Simple group within a block");
    c->add_option("--n" + suffix, a.n, "|N(L)/L|, checked if given");
    c->add_option("--k" + suffix, a.k, "Generator of the module subgroup K, comma-separated");
    c->add_option("--cocycle" + suffix, a.cocycle, "Index into the enumerated crossed homomorphisms");
  };
  auto *wbuild = wreath->add_subcommand("build", "Build G from a tuple");
  wbuild->add_option("--p", o.p)->required();
  tuple_options(wbuild, t1, "");
  add_common(wbuild, o);
  wbuild->callback([&] {
    action = [&] {
      require_prime(o.p);
      auto tup = tuple_from(t1, o.p);
      Json j = header("wreath build", o);
      j["tuple"] = tuple_json(tup);
      j["group"] = group_json(build_G(tup));
      return j;
    };
  });
  auto *wdec = wreath->add_subcommand("decompose", "Recover a tuple from G");
  wdec->add_option("--p", o.p)->required();
  wdec->add_option("--gen", wgens, "Generator in cycle notation")->required();
  add_common(wdec, o);
  wdec->callback([&] {
    action = [&] {
      require_prime(o.p);
      auto dec = decompose_G(parse_group(wgens, o.p * o.p));
      Json j = header("wreath decompose", o);
      j["tuple"] = tuple_json(dec.tuple);
      j["frame"] = dec.frame.str_cycles();
      return j;
    };
  });
  auto *wequiv = wreath->add_subcommand("equiv", "Decide equivalence of two tuples");
  wequiv->add_option("--p", o.p)->required();
  tuple_options(wequiv, t1, "");
  tuple_options(wequiv, t2, "2");
  add_common(wequiv, o);
  wequiv->callback([&] {
    action = [&] {
      require_prime(o.p);
      auto e = equivalent_tuples(tuple_from(t1, o.p), tuple_from(t2, o.p));
      Json j = header("wreath equiv", o);
      j["equivalent"] = e.has_value();
      if (e)
        j["witness"] = {{"g", e->g.str_cycles()}, {"a", e->a}, {"conjugator", e->conjugator.str_cycles()}};
      return j;
    };
  });

  // cayley
  std::string kind = "cyclic", s1, s2;
  auto *cay = app.add_subcommand("cayley", "Cayley digraphs of Z_{p^2} and Z_p x Z_p");
  cay->require_subcommand(1);
  auto cayley_options = [&](CLI::App *c) {
    c->add_option("--p", o.p)->required();
    c->add_option("--kind", kind, "cyclic or elementary");
    c->add_option("--S", s1, "Connection set, comma-separated points a + b p")->required();
    add_common(c, o);
  };
  auto base = [&](std::string const &cmd, CayleyDigraph const &c) {
    Json j = header(cmd, o);
    j["p"] = c.p;
    j["kind"] = kind_name(c.kind);
    j["S"] = c.S;
    return j;
  };
  auto *caut = cay->add_subcommand("aut", "Automorphism group");
  cayley_options(caut);
  caut->callback([&] {
    action = [&] {
      require_prime(o.p);
      auto c = make_cayley(o.p, parse_kind(kind), parse_set(s1));
      Json j = base("cayley aut", c);
      j["automorphisms"] = group_json(digraph_automorphisms(c));
      return j;
    };
  });
  auto *cnorm = cay->add_subcommand("normal", "Normality of the left-regular group");
  cayley_options(cnorm);
  cnorm->callback([&] {
    action = [&] {
      require_prime(o.p);
      auto c = make_cayley(o.p, parse_kind(kind), parse_set(s1));
      Json j = base("cayley normal", c);
      j["normal"] = is_normal_cayley(c);
      j["corollary3"] = corollary3_predicate(c);
      return j;
    };
  });
  auto *ciso = cay->add_subcommand("iso", "Isomorphism through normalizer coset representatives");
  cayley_options(ciso);
  ciso->add_option("--S2", s2, "Second connection set")->required();
  ciso->callback([&] {
    action = [&] {
      require_prime(o.p);
      auto x = make_cayley(o.p, parse_kind(kind), parse_set(s1));
      auto y = make_cayley(o.p, parse_kind(kind), parse_set(s2));
      auto res = iso_by_normalizer(x, y);
      Json j = base("cayley iso", x);
      j["S2"] = y.S;
      j["isomorphic"] = res.map.has_value();
      j["map"] = res.map ? Json(res.map->str_cycles()) : Json(nullptr);
      j["candidates_tried"] = res.candidates_tried;
      return j;
    };
  });
  auto *ccls = cay->add_subcommand("classify", "Case of the automorphism group among the 2-closed groups");
  cayley_options(ccls);
  ccls->callback([&] {
    action = [&] {
      require_prime(o.p);
      auto c = make_cayley(o.p, parse_kind(kind), parse_set(s1));
      PermGroup aut = digraph_automorphisms(c);
      auto cs = classify_2closed(aut, c.kind);
      Json j = base("cayley classify", c);
      j["aut_order"] = order_str(aut.order());
      j["case"] = cs.label();
      j["detail"] = cs.detail;
      if (cs.factor1)
        j["factor_orders"] = {order_str(cs.factor1->order()), order_str(cs.factor2->order())};
      return j;
    };
  });

  // catalog
  std::string out_path;
  int sample = 0, jobs = 1;
  auto *cat = app.add_subcommand("catalog", "Classified records for every (or sampled) connection set");
  cat->add_option("--p", o.p)->required();
  cat->add_option("--kind", kind, "cyclic or elementary");
  cat->add_option("--out", out_path, "JSON-lines output file (default: $PSQ_OUT_DIR or stdout)");
  cat->add_option("--sample", sample, "Number of random connection sets instead of all");
  cat->add_option("--jobs", jobs, "Worker threads");
  add_common(cat, o);
  cat->callback([&] {
    action = [&] {
      require_prime(o.p);
      GroupKind k = parse_kind(kind);
      std::vector<CatalogRecord> recs;
      if (sample > 0) {
        recs = catalog_sample(o.p, k, sample, o.seed);
      } else {
        if (o.p > 3)
          throw DomainError("exhaustive catalog needs p <= 3; use --sample");
        std::vector<std::vector<int>> sets;
        int m = o.p * o.p - 1;
        for (int mask = 0; mask < (1 << m); ++mask) {
          std::vector<int> s;
          for (int b = 0; b < m; ++b)
            if (mask >> b & 1)
              s.push_back(b + 1);
          sets.push_back(s);
        }
        std::sort(sets.begin(), sets.end());
        recs = parallel_records(o.p, k, sets, jobs);
      }
      std::string path = out_path;
      if (path.empty())
        if (char const *dir = std::getenv("PSQ_OUT_DIR"))
          path = (std::filesystem::path(dir) / ("catalog_p" + std::to_string(o.p) + "_" + kind + ".jsonl")).string();
      std::ostringstream lines;
      for (auto const &rec : recs)
        lines << catalog_json_line(rec) << "\n";
      if (path.empty()) {
        std::cout << lines.str();
        return Json();
      }
      std::ofstream f(path);
      if (!f)
        throw DomainError("cannot write " + path);
      f << lines.str();
      int nonnormal = 0;
      for (auto const &rec : recs)
        nonnormal += !rec.normal;
      Json j = header("catalog", o);
      j["p"] = o.p;
      j["kind"] = kind;
      j["records"] = recs.size();
      j["nonnormal"] = nonnormal;
      j["out"] = path;
      return j;
    };
  });

  // verify
  bool slow = false;
  auto *verify = app.add_subcommand("verify", "Run the acceptance checks");
  verify->add_flag("--slow", slow, "Include the exhaustive tier");
  add_common(verify, o);
  verify->callback([&] {
    action = [&] {
      Json j = header("verify", o);
      j["slow"] = slow;
      j["results"] = Json::array();
      bool all = true;
      for (auto const &res : acceptance::run(slow, [&](acceptance::Result const &x) {
             if (o.format == "table")
               std::cout << acceptance::line(x) << std::endl;
           })) {
        j["results"].push_back({{"criterion", res.id},
                                {"status", res.skipped ? "SKIP" : res.pass ? "PASS" : "FAIL"},
                                {"seconds", res.seconds},
                                {"detail", res.detail}});
        all = all && (res.pass || res.skipped);
      }
      j["all_pass"] = all;
      return j;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const &e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    Json j = action();
    if (j.is_null())
      return 0;
    if (j.value("command", "") == "verify") {
      if (o.format == "json")
        std::cout << j.dump(2) << "\n";
      return j["all_pass"].get<bool>() ? 0 : 1;
    }
    emit(j, o);
    return 0;
  } catch (DomainError const &e) {
    std::cerr << Json{{"error", "domain"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  } catch (std::exception const &e) {
    std::cerr << Json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
}
