#include "psq/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace psq {

Perm::Perm(int degree) : img_(degree) {
  if (degree < 0 || degree > 255)
    throw DomainError("permutation degree out of range");
  std::iota(img_.begin(), img_.end(), std::uint8_t{0});
}

Perm::Perm(std::vector<int> images) : img_(images.size()) {
  int n = static_cast<int>(images.size());
  if (n > 255)
    throw DomainError("permutation degree out of range");
  std::vector<char> seen(n, 0);
  for (int i = 0; i < n; ++i) {
    int y = images[i];
    if (y < 0 || y >= n || seen[y])
      throw DomainError("image list is not a bijection");
    seen[y] = 1;
    img_[i] = static_cast<std::uint8_t>(y);
  }
}

Perm Perm::from_cycles(int degree, std::vector<std::vector<int>> const &cycles) {
  std::vector<int> img(degree);
  std::iota(img.begin(), img.end(), 0);
  std::vector<char> used(degree, 0);
  for (auto const &c : cycles) {
    for (int x : c) {
      if (x < 0 || x >= degree)
        throw DomainError("cycle point out of range");
      if (used[x])
        throw DomainError("cycles are not disjoint");
      used[x] = 1;
    }
    for (std::size_t k = 0; k < c.size(); ++k)
      img[c[k]] = c[(k + 1) % c.size()];
  }
  return Perm(std::move(img));
}

namespace {

std::vector<int> read_ints(std::string_view s) {
  std::vector<int> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == ',') {
      ++i;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw DomainError("unexpected character in permutation text");
    int v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
      v = v * 10 + (s[i++] - '0');
    out.push_back(v);
  }
  return out;
}

} // namespace

Perm Perm::parse(std::string_view text, int degree) {
  std::size_t b = text.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos)
    throw DomainError("empty permutation text");
  std::size_t e = text.find_last_not_of(" \t\r\n");
  text = text.substr(b, e - b + 1);

  if (text.front() == '[') {
    if (text.back() != ']')
      throw DomainError("unterminated image list");
    auto imgs = read_ints(text.substr(1, text.size() - 2));
    if (degree >= 0 && static_cast<int>(imgs.size()) != degree)
      throw DomainError("image list has wrong degree");
    return Perm(std::move(imgs));
  }

  std::vector<std::vector<int>> cycles;
  int max_pt = -1;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c != '(')
      throw DomainError("expected '(' in cycle notation");
    std::size_t close = text.find(')', i);
    if (close == std::string_view::npos)
      throw DomainError("unterminated cycle");
    auto cyc = read_ints(text.substr(i + 1, close - i - 1));
    for (int x : cyc)
      max_pt = std::max(max_pt, x);
    if (!cyc.empty())
      cycles.push_back(std::move(cyc));
    i = close + 1;
  }
  if (degree < 0)
    degree = max_pt + 1;
  return from_cycles(degree, cycles);
}

bool Perm::is_identity() const {
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != i)
      return false;
  return true;
}

Perm Perm::inverse() const {
  Perm r(degree());
  for (std::size_t i = 0; i < img_.size(); ++i)
    r.img_[img_[i]] = static_cast<std::uint8_t>(i);
  return r;
}

Perm Perm::pow(long long e) const {
  Perm base = e < 0 ? inverse() : *this;
  if (e < 0)
    e = -e;
  long long ord = order();
  e %= ord;
  Perm r(degree());
  while (e > 0) {
    if (e & 1)
      r *= base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

long long Perm::order() const {
  long long o = 1;
  for (auto const &c : cycles())
    o = std::lcm(o, static_cast<long long>(c.size()));
  return o;
}

std::vector<std::vector<int>> Perm::cycles(bool include_fixed) const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(img_.size(), 0);
  for (int i = 0; i < degree(); ++i) {
    if (seen[i])
      continue;
    std::vector<int> c;
    int x = i;
    while (!seen[x]) {
      seen[x] = 1;
      c.push_back(x);
      x = img_[x];
    }
    if (c.size() > 1 || include_fixed)
      out.push_back(std::move(c));
  }
  return out;
}

int Perm::num_fixed_points() const {
  int n = 0;
  for (std::size_t i = 0; i < img_.size(); ++i)
    n += img_[i] == i;
  return n;
}

int Perm::smallest_moved_point() const {
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != i)
      return static_cast<int>(i);
  return -1;
}

Perm Perm::conj(Perm const &g) const { return g.inverse() * *this * g; }

std::string Perm::str_images() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < img_.size(); ++i)
    os << (i ? " " : "") << int(img_[i]);
  os << ']';
  return os.str();
}

std::string Perm::str_cycles() const {
  auto cs = cycles();
  if (cs.empty())
    return "()";
  std::ostringstream os;
  for (auto const &c : cs) {
    os << '(';
    for (std::size_t k = 0; k < c.size(); ++k)
      os << (k ? " " : "") << c[k];
    os << ')';
  }
  return os.str();
}

Perm operator*(Perm const &f, Perm const &g) {
  if (f.degree() != g.degree())
    throw DomainError("degree mismatch in composition");
  Perm r;
  r.img_.resize(f.img_.size());
  for (std::size_t i = 0; i < f.img_.size(); ++i)
    r.img_[i] = g.img_[f.img_[i]];
  return r;
}

Perm &Perm::operator*=(Perm const &g) {
  if (degree() != g.degree())
    throw DomainError("degree mismatch in composition");
  for (auto &x : img_)
    x = g.img_[x];
  return *this;
}

std::size_t PermHash::operator()(Perm const &p) const {
  std::size_t h = 1469598103934665603ull;
  for (auto x : p.raw()) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return h;
}

bool is_prime(long long n) {
  if (n < 2)
    return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0)
    r *= b;
  return r;
}

long long factorial(int n) {
  long long r = 1;
  for (int i = 2; i <= n; ++i)
    r *= i;
  return r;
}

} // namespace psq
