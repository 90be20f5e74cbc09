#pragma once

#include "psq/codes.hpp"
#include "psq/group.hpp"

#include <optional>
#include <string>
#include <vector>

namespace psq {

// a_{i,j} = C(i,j) (-1)^{i-j} mod p for j = 0..p-1.
std::vector<long long> binomial_row(int p, int i);

enum class StdGen { Tau, Rho1, Rho2, Z, Gamma };

// Degree p^2 generators under a + b*p <-> (a, b):
//   tau(x) = x + 1 mod p^2, rho2(a, b) = (a + 1, b), rho1(a, b) = (a, b + 1),
//   z_i(i, b) = (i, b + 1) fixing the other blocks,
//   gamma_i = prod_j z_j^{a_{p-i, j}}.
Perm standard_generator(int p, StdGen name, int index = 0);
Perm std_tau(int p);
Perm std_rho1(int p);
Perm std_rho2(int p);
Perm std_z(int p, int i);
Perm std_gamma(int p, int i);
// Product of z_i^{v_i}.
Perm z_product(int p, Vec const &v);
// (a, b) -> (a, beta*b).
Perm fiber_scale(int p, long long beta);
BlockSystem standard_blocks(int p);

enum class PFamily { Cyclic, Elementary, Wreath };
std::string family_name(PFamily f);

// P_i = <tau, gamma_i> (Cyclic) or P'_i = <rho1, rho2, gamma_i> (Elementary).
// Both give the same group at i = p; Wreath is accepted as a synonym there.
PermGroup build_P(int p, int i, PFamily family);

struct PSubgroupKind {
  PFamily family;
  int i;
  Perm conjugator; // P.conjugate(conjugator) is the standard copy
  bool operator==(PSubgroupKind const &o) const {
    return family == o.family && i == o.i;
  }
};

// Coordinates for a transitive p-subgroup of S_{p^2}: the orbits of an
// order-p central element x are the blocks, the block fixer P0 is put inside
// <z_i> by lambda, and mover' = mover^(lambda^-1) equals z-product(v) * rho2.
struct PFrame {
  int p;
  Perm central;
  BlockSystem blocks;
  PermGroup fixer;
  Perm mover;
  Perm lambda; // P.conjugate(lambda^-1) sends blocks to the standard ones
  Code code;   // induced code of the fixer in this frame
  Vec shift;   // v above
};

PFrame p_frame(PermGroup const &P);

PSubgroupKind recognize_p_subgroup(PermGroup const &P);

struct WreathTests {
  bool has_both_regulars;
  bool is_wreath;
  bool code_sums_zero;
};

WreathTests wreath_tests(PermGroup const &P);

struct Classification {
  int label; // 1..5 as in the degree p^2 classification; 6 = wreath Sylow, outside it
  std::string tag;
  PermGroup sylow;
  std::optional<PSubgroupKind> sylow_kind;
  bool sylow_normal = false;
  // Case 4: x -> (block in first system) + p * (block in second system).
  std::optional<Perm> product_coordinates;
  // Case 5: conjugator after which every generator normalizes <rho1>.
  std::optional<Perm> frame_conjugator;
  // Case 2, index-2 product tag: the subgroup preserving both systems.
  std::optional<PermGroup> product_subgroup;
};

Classification classify_transitive(PermGroup const &G, std::uint64_t seed = 1);

struct NamedGroup {
  std::string name;
  PermGroup group;
  BigInt expected_order;
};

// Transitive groups of degree p containing Z_p, from the known families.
std::vector<NamedGroup> degree_p_catalog(int p);

// PSL(d,q) on the projective points of F_q^d, q = r^t.
PermGroup psl_projective(int d, int r, int t);

} // namespace psq
