#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace psq {

class DomainError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Permutations compose left to right: (f * g)(x) = g(f(x)).
// Conjugation h ^ g means g^-1 * h * g.
class Perm {
public:
  Perm() = default;
  explicit Perm(int degree);
  explicit Perm(std::vector<int> images);

  static Perm identity(int degree) { return Perm(degree); }
  // Cycle-notation constructor; missing points are fixed.
  static Perm from_cycles(int degree, std::vector<std::vector<int>> const &cycles);
  static Perm parse(std::string_view text, int degree = -1);

  int degree() const { return static_cast<int>(img_.size()); }
  int operator[](int x) const { return img_[x]; }
  int image(int x) const { return img_[x]; }
  std::vector<int> images() const { return {img_.begin(), img_.end()}; }
  std::vector<std::uint8_t> const &raw() const { return img_; }

  bool is_identity() const;
  Perm inverse() const;
  Perm pow(long long e) const;
  long long order() const;
  std::vector<std::vector<int>> cycles(bool include_fixed = false) const;
  int num_fixed_points() const;
  int smallest_moved_point() const;

  // Conjugation g^-1 * this * g.
  Perm conj(Perm const &g) const;

  std::string str_images() const;
  std::string str_cycles() const;

  friend Perm operator*(Perm const &f, Perm const &g);
  Perm &operator*=(Perm const &g);
  bool operator==(Perm const &o) const { return img_ == o.img_; }
  bool operator!=(Perm const &o) const { return img_ != o.img_; }
  bool operator<(Perm const &o) const { return img_ < o.img_; }

private:
  std::vector<std::uint8_t> img_;
};

struct PermHash {
  std::size_t operator()(Perm const &p) const;
};

// (a, b) <-> a + b * p on Z_p x Z_p.
struct PointEncoding {
  int p;
  int to_point(int a, int b) const { return mod(a) + mod(b) * p; }
  std::pair<int, int> to_pair(int x) const { return {x % p, x / p}; }
  int mod(int a) const { return ((a % p) + p) % p; }
};

bool is_prime(long long n);
long long ipow(long long b, int e);
long long factorial(int n);

} // namespace psq
