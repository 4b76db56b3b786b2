#include "korbit/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "korbit/errors.hpp"

namespace korbit
{

Permutation::Permutation(std::size_t degree) : images_(degree)
{
  if (degree > kMaxDegree)
    throw PreconditionError("degree " + std::to_string(degree) +
                            " exceeds the supported maximum " +
                            std::to_string(kMaxDegree));
  std::iota(images_.begin(), images_.end(), Point{0});
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images))
{
  if (images_.size() > kMaxDegree)
    throw PreconditionError("degree " + std::to_string(images_.size()) +
                            " exceeds the supported maximum " +
                            std::to_string(kMaxDegree));
  std::vector<bool> seen(images_.size(), false);
  for (Point x : images_) {
    if (x >= images_.size() || seen[x])
      throw PreconditionError("image list is not a bijection");
    seen[x] = true;
  }
}

bool Permutation::is_identity() const
{
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i)
      return false;
  return true;
}

Permutation Permutation::inverse() const
{
  Permutation r(*this);
  for (std::size_t i = 0; i < images_.size(); ++i)
    r.images_[images_[i]] = static_cast<Point>(i);
  return r;
}

Permutation Permutation::pow(std::int64_t e) const
{
  auto const ord = static_cast<std::int64_t>(order());
  e %= ord;
  if (e < 0)
    e += ord;

  Permutation result(degree());
  Permutation base(*this);
  while (e > 0) {
    if (e & 1)
      result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

std::vector<std::vector<Point>> Permutation::cycles() const
{
  std::vector<std::vector<Point>> result;
  std::vector<bool> done(degree(), false);
  for (std::size_t start = 0; start < degree(); ++start) {
    if (done[start])
      continue;
    std::vector<Point> cycle;
    for (auto x = static_cast<Point>(start); !done[x]; x = images_[x]) {
      done[x] = true;
      cycle.push_back(x);
    }
    result.push_back(std::move(cycle));
  }
  return result;
}

std::uint64_t Permutation::order() const
{
  std::uint64_t ord = 1;
  for (auto const &c : cycles())
    ord = std::lcm(ord, static_cast<std::uint64_t>(c.size()));
  return ord;
}

std::string Permutation::to_cycle_string() const
{
  std::string out;
  for (auto const &c : cycles()) {
    if (c.size() < 2)
      continue;
    out += '(';
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i)
        out += ' ';
      out += std::to_string(c[i] + 1);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

std::string Permutation::to_image_string() const
{
  std::string out = "[";
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i)
      out += ',';
    out += std::to_string(images_[i] + 1);
  }
  return out + "]";
}

Permutation operator*(Permutation const &a, Permutation const &b)
{
  if (a.degree() != b.degree())
    throw PreconditionError("cannot compose permutations of degree " +
                            std::to_string(a.degree()) + " and " +
                            std::to_string(b.degree()));
  Permutation r(a);
  for (std::size_t i = 0; i < b.images_.size(); ++i)
    r.images_[i] = a.images_[b.images_[i]];
  return r;
}

namespace
{

class Scanner
{
public:
  explicit Scanner(std::string_view s) : s_(s) {}

  void skip_space()
  {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  bool done() { skip_space(); return pos_ >= s_.size(); }
  char peek() { skip_space(); return pos_ < s_.size() ? s_[pos_] : '\0'; }

  void expect(char c)
  {
    if (peek() != c)
      fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool accept(char c)
  {
    if (peek() != c)
      return false;
    ++pos_;
    return true;
  }

  std::size_t number()
  {
    skip_space();
    std::size_t start = pos_;
    std::size_t value = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      value = value * 10 + static_cast<std::size_t>(s_[pos_] - '0');
      if (value > 1'000'000)
        fail("point value too large");
      ++pos_;
    }
    if (pos_ == start)
      fail("expected a point");
    return value;
  }

  [[noreturn]] void fail(std::string const &msg) const
  {
    throw ParseError("malformed permutation \"" + std::string(s_) + "\": " +
                     msg + " at offset " + std::to_string(pos_));
  }

private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

} // namespace

Permutation parse_permutation(std::string_view text, std::size_t degree)
{
  if (degree == 0 || degree > kMaxDegree)
    throw ParseError("invalid degree " + std::to_string(degree));

  Scanner in(text);
  auto check_point = [&](std::size_t p) {
    if (p < 1 || p > degree)
      in.fail("point " + std::to_string(p) + " out of range 1.." +
              std::to_string(degree));
    return static_cast<Point>(p - 1);
  };

  if (in.accept('[')) {
    std::vector<Point> images;
    if (!in.accept(']')) {
      do {
        images.push_back(check_point(in.number()));
      } while (in.accept(','));
      in.expect(']');
    }
    if (!in.done())
      in.fail("trailing characters");
    if (images.size() != degree)
      in.fail("image list has " + std::to_string(images.size()) +
              " entries, expected " + std::to_string(degree));
    std::vector<bool> seen(degree, false);
    for (Point x : images) {
      if (seen[x])
        in.fail("repeated point " + std::to_string(x + 1));
      seen[x] = true;
    }
    return Permutation(std::move(images));
  }

  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  std::vector<bool> used(degree, false);

  if (in.done())
    in.fail("empty input");

  while (!in.done()) {
    in.expect('(');
    std::vector<Point> cycle;
    while (!in.accept(')')) {
      if (!cycle.empty())
        in.accept(',');
      Point p = check_point(in.number());
      if (used[p])
        in.fail("repeated point " + std::to_string(p + 1));
      used[p] = true;
      cycle.push_back(p);
    }
    for (std::size_t i = 0; i < cycle.size(); ++i)
      images[cycle[i]] = cycle[(i + 1) % cycle.size()];
  }
  return Permutation(std::move(images));
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n)
{
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      primes.push_back(p);
      while (n % p == 0)
        n /= p;
    }
  }
  if (n > 1)
    primes.push_back(n);
  return primes;
}

PrimeSplit const *ElementAnalysis::split_for(std::uint64_t p) const
{
  for (auto const &s : splits)
    if (s.prime == p)
      return &s;
  return nullptr;
}

ElementAnalysis analyze_element(Permutation const &g)
{
  ElementAnalysis a;
  a.order = g.order();
  for (std::size_t i = 0; i < g.degree(); ++i)
    if (g[i] == i)
      a.fixed_points.push_back(static_cast<Point>(i));
  a.is_fpf = a.fixed_points.empty() && a.order > 1;

  for (auto p : prime_factors(a.order)) {
    PrimeSplit s{p, 0, a.order};
    while (s.cofactor % p == 0) {
      s.cofactor /= p;
      ++s.exponent;
    }
    a.splits.push_back(s);
  }
  return a;
}

} // namespace korbit

std::size_t std::hash<korbit::Permutation>::operator()(
  korbit::Permutation const &p) const noexcept
{
  std::size_t h = 1469598103934665603ull;
  for (auto x : p.images()) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return h;
}
