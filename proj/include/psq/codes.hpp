#pragma once

#include "psq/group.hpp"
#include "psq/poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace psq {

using Vec = std::vector<long long>;

// A submodule of (Z_{q^t})^m for a prime q. Stored in Howell form: pivot
// entries are powers of q, entries above a pivot q^v lie in [0, q^v), and
// the form is closed under the saturation rows, so equal codes have equal
// row lists.
class Code {
public:
  Code() = default;
  Code(long long q, int t, int length, std::vector<Vec> gens);

  static Code zero(long long q, int t, int length) { return Code(q, t, length, {}); }
  static Code full(long long q, int t, int length);
  static Code repetition(long long q, int t, int length);
  static Code sum_zero(long long q, int t, int length);
  // Ideal generated by g in Z_{q^t}[x]/(x^length - 1).
  static Code from_generator(ModPoly const &g, int length);

  long long prime() const { return q_; }
  int exponent() const { return t_; }
  long long modulus() const { return n_; }
  int length() const { return m_; }
  std::vector<Vec> const &rows() const { return rows_; }
  std::vector<int> const &pivot_cols() const { return piv_col_; }
  std::vector<int> const &pivot_vals() const { return piv_val_; }

  BigInt size() const;
  // Dimension over F_q; only meaningful when t == 1.
  int dimension() const;
  bool is_zero() const { return rows_.empty(); }
  bool is_full() const;

  bool contains(Vec const &v) const;
  bool contains(Code const &c) const;
  bool operator==(Code const &o) const;
  bool operator!=(Code const &o) const { return !(*this == o); }

  Code sum(Code const &o) const;
  Code intersect(Code const &o) const;
  Code dual() const;
  Code scaled(long long c) const;
  // (sigma v)_{sigma(i)} = v_i.
  Code permuted(Perm const &sigma) const;
  bool is_cyclic() const;
  // { y : q^k y in C }.
  Code colon(int k) const;
  // Image under reduction modulo q, as a code over F_q.
  Code reduce_mod_prime() const;

  std::vector<Vec> elements(unsigned long long limit = 2'000'000ULL) const;
  std::string str() const;

private:
  long long q_ = 2, n_ = 2;
  int t_ = 1, m_ = 0;
  std::vector<Vec> rows_;
  std::vector<int> piv_col_, piv_val_;
};

using CyclicCode = Code;

Vec normalize_vec(Vec v, long long n);
Vec shift_vec(Vec const &v);
Vec permute_vec(Vec const &v, Perm const &sigma);
ModPoly vec_poly(Vec const &v, long long n);
int hamming_weight(Vec const &v);

// Monic generator polynomial of a cyclic code over a prime field.
ModPoly generator_polynomial(Code const &c);

// Frame relabelling the points of a block system as a + b p: returns lambda
// with lambda(a + b p) the point at level b of block a. When `mover` is
// given (an element permuting the blocks cyclically), block k is
// mover^k(block 0) and the levels are carried along by mover.
Perm block_frame(PermGroup const &p0, BlockSystem const &blocks,
                 std::optional<Perm> const &mover = std::nullopt);
// Exponent vector of a product of the z_i, or nullopt if x is not one.
std::optional<Vec> z_exponents(Perm const &x, int p);
// Code of exponent vectors of generators lying in <z_0, ..., z_{p-1}>.
Code code_of_standard(std::vector<Perm> const &gens, int p);

Code induced_code(PermGroup const &p0, BlockSystem const &blocks,
                  std::optional<Perm> const &mover = std::nullopt);
PermGroup group_from_code(Code const &c);

bool is_degenerate(Code const &c);

struct MonomialMap {
  Perm sigma;
  Vec d; // units of Z_n
  long long n = 2;

  static MonomialMap identity(int length, long long n);
  static MonomialMap from_perm(Perm const &sigma, long long n);
  Vec apply(Vec const &v) const;
  MonomialMap operator*(MonomialMap const &o) const; // apply *this first
  MonomialMap inverse() const;
  bool operator==(MonomialMap const &o) const {
    return n == o.n && sigma == o.sigma && d == o.d;
  }
};

bool is_invariant(Code const &c, std::vector<MonomialMap> const &gens);
bool is_invariant(Code const &c, std::vector<Perm> const &gens);

enum class AutMode { Full, PermutationOnly };

struct MonomialGroup {
  std::vector<MonomialMap> elements;
  PermGroup permutation_part;
  BigInt order() const { return elements.size(); }
};

MonomialGroup monomial_aut(Code const &c, AutMode mode);
bool is_affine_invariant(Code const &c);

// Subgroup of Z_p^* generated by gens, sorted.
std::vector<int> unit_subgroup(int p, std::vector<int> const &gens);
// All subgroups of the cyclic group Z_p^*, each as a sorted element list.
std::vector<std::vector<int>> unit_subgroups(int p);
int invariant_code_exponent(int p, long long q, std::vector<int> const &a);
// Cyclic codes of length p over F_q invariant under i -> a i for a in A,
// sorted by generator polynomial.
std::vector<Code> invariant_cyclic_codes(int p, long long q, std::vector<int> const &a);

// Code over Z_n, n arbitrary, split into its prime-power components.
struct CompositeCode {
  long long n = 2;
  int length = 0;
  std::vector<long long> moduli; // prime-power parts of n
  std::vector<Code> parts;

  BigInt size() const;
  bool contains(Vec const &v) const;
  // Generators over Z_n whose span is the reassembled code.
  std::vector<Vec> generators() const;
};
CompositeCode crt_decompose(long long n, int length, std::vector<Vec> const &gens);

struct CodeChain {
  long long q = 2;
  int t = 1;
  std::vector<Code> levels; // codes over F_q, increasing
  bool operator==(CodeChain const &o) const {
    return q == o.q && t == o.t && levels == o.levels;
  }
};

struct GroupTag {
  enum Kind { Cyclic, Affine, Alternating, Symmetric } kind = Cyclic;
  std::vector<int> multipliers; // for Affine
};

CodeChain chain_of_code(Code const &c);
Code code_from_chain(CodeChain const &ch, GroupTag const &tag = {});
// Coordinate permutations generating the tagged group on length-p vectors.
std::vector<Perm> tag_generators(GroupTag const &tag, int p);

} // namespace psq
