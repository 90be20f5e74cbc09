#pragma once

#include "psq/perm.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <vector>

namespace psq {

using BigInt = boost::multiprecision::cpp_int;

struct ChainLevel {
  int base = -1;
  std::vector<Perm> gens;   // strong generators fixing all earlier base points
  std::vector<int> orbit;   // orbit of base, BFS order
  std::vector<int> slot;    // point -> index into reps, or -1
  std::vector<Perm> reps;   // reps[k] maps base to orbit[k]
  std::vector<Perm> inv_reps;
};

// A permutation group given by generators. The stabilizer chain is built
// deterministically at construction (base points taken in increasing order,
// after an optional caller-supplied prefix), so the object is immutable and
// safe to share between threads.
class PermGroup {
public:
  PermGroup() = default;
  PermGroup(int degree, std::vector<Perm> gens, std::vector<int> base_prefix = {});

  static PermGroup trivial(int degree) { return PermGroup(degree, {}); }
  static PermGroup symmetric(int degree);
  static PermGroup alternating(int degree);
  static PermGroup cyclic(int degree);

  int degree() const { return degree_; }
  std::vector<Perm> const &generators() const { return gens_; }
  std::vector<ChainLevel> const &chain() const { return *chain_; }
  std::vector<int> base() const;

  BigInt order() const;
  unsigned long long order_u64() const;
  bool contains(Perm const &x) const;
  bool contains(PermGroup const &h) const;
  bool equals(PermGroup const &h) const;
  bool is_trivial() const { return chain_->empty(); }

  // Pointwise stabilizer of the first k base points.
  PermGroup level_subgroup(int k) const;

  Perm random_element(std::mt19937_64 &rng) const;
  void for_each_element(std::function<void(Perm const &)> const &f) const;
  std::vector<Perm> elements(unsigned long long limit = 10'000'000ULL) const;

  bool is_transitive() const;
  PermGroup with(Perm const &g) const;
  PermGroup conjugate(Perm const &g) const; // { g^-1 x g }

  // Residue of sifting x through the chain and the level where it stopped.
  std::pair<Perm, int> strip(Perm x, int from_level = 0) const;

private:
  int degree_ = 0;
  std::vector<Perm> gens_;
  std::shared_ptr<std::vector<ChainLevel> const> chain_ =
      std::make_shared<std::vector<ChainLevel>>();
};

struct BlockSystem {
  std::vector<std::vector<int>> blocks; // each sorted, blocks sorted by least point
  std::vector<int> block_of;
  bool operator==(BlockSystem const &o) const { return blocks == o.blocks; }
};

BlockSystem make_block_system(int degree, std::vector<std::vector<int>> blocks);

std::vector<int> orbit(PermGroup const &g, int x);
std::vector<std::vector<int>> orbits(PermGroup const &g, std::vector<int> const &seeds);
std::vector<std::vector<int>> orbits(PermGroup const &g);

// Smallest block containing a and b.
std::vector<int> minimal_block(PermGroup const &g, int a, int b);
// All block systems with blocks of the given size (default: sqrt of degree).
std::vector<BlockSystem> block_systems(PermGroup const &g, int block_size = -1);
bool is_block_system(PermGroup const &g, BlockSystem const &b);
bool is_primitive(PermGroup const &g);
bool is_doubly_transitive(PermGroup const &g);

// Action of a permutation on the blocks of a system.
Perm block_action(Perm const &g, BlockSystem const &b);
PermGroup block_quotient(PermGroup const &g, BlockSystem const &b);
// Subgroup fixing every block setwise.
PermGroup block_fixer(PermGroup const &g, BlockSystem const &b);
// Kernel of a homomorphism into S_m given by its values on generators.
PermGroup kernel_of_action(PermGroup const &g, int m,
                           std::function<Perm(Perm const &)> const &act);
// Restriction of a group preserving the point set `pts` to those points
// (relabelled 0..|pts|-1 in the given order).
Perm restrict_to(Perm const &g, std::vector<int> const &pts);
PermGroup point_stabilizer(PermGroup const &g, int x);

bool normalizes(Perm const &x, PermGroup const &h);
bool is_normal_subgroup(PermGroup const &g, PermGroup const &n);
PermGroup normal_closure(PermGroup const &g, std::vector<Perm> const &s);
PermGroup derived_subgroup(PermGroup const &g);
bool is_solvable(PermGroup const &g);
PermGroup center(PermGroup const &g);
PermGroup centralizer_of_element(PermGroup const &g, Perm const &x);

bool is_p_power(BigInt n, int p);
bool is_p_group(PermGroup const &g, int p);
BigInt p_part(BigInt n, int p);
// A Sylow p-subgroup containing `hint` (a p-subgroup of g, may be trivial).
PermGroup sylow_subgroup(PermGroup const &g, int p,
                         std::optional<PermGroup> hint = std::nullopt,
                         std::uint64_t seed = 1);

// { x in ambient : x^-1 H x = H } by exhaustive scan of ambient.
PermGroup brute_normalizer(PermGroup const &ambient, PermGroup const &h,
                           unsigned long long max_order = 1'000'000ULL);

// Build a group from a list of elements, adding generators only when needed.
PermGroup group_from_elements(int degree, std::vector<Perm> const &elems,
                              std::vector<int> base_prefix = {});

std::string order_str(BigInt const &n);

} // namespace psq
