#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace korbit
{

/// A point of V. Stored 0-based; every text interface is 1-based.
using Point = std::uint8_t;

inline constexpr std::size_t kMaxDegree = 64;

/// A bijection of {0..n-1}. Products compose as functions:
/// (a * b)(x) = a(b(x)), so the left action satisfies (ab)t = a(bt).
class Permutation
{
public:
  Permutation() = default;
  explicit Permutation(std::size_t degree);
  explicit Permutation(std::vector<Point> images);

  static Permutation identity(std::size_t degree) { return Permutation(degree); }

  std::size_t degree() const { return images_.size(); }
  Point operator[](std::size_t x) const { return images_[x]; }
  std::span<Point const> images() const { return images_; }

  bool is_identity() const;
  Permutation inverse() const;
  Permutation pow(std::int64_t e) const;
  std::uint64_t order() const;
  std::vector<std::vector<Point>> cycles() const;

  /// "(1 2 3)(4 5)", identity is "()".
  std::string to_cycle_string() const;
  /// "[2,3,1,5,4]"
  std::string to_image_string() const;

  friend Permutation operator*(Permutation const &a, Permutation const &b);
  friend bool operator==(Permutation const &, Permutation const &) = default;
  friend std::strong_ordering operator<=>(Permutation const &a,
                                          Permutation const &b)
  { return a.images_ <=> b.images_; }

private:
  std::vector<Point> images_;
};

/// Parses cycle notation "(1 2 3)(4 5)" or image notation "[2,3,1,5,4]".
/// Points are 1-based and must not exceed `degree`.
Permutation parse_permutation(std::string_view text, std::size_t degree);

struct PrimeSplit
{
  std::uint64_t prime = 0;
  unsigned exponent = 0; ///< m with p^m || order
  std::uint64_t cofactor = 1; ///< d = order / p^m, coprime to p

  friend bool operator==(PrimeSplit const &, PrimeSplit const &) = default;
};

struct ElementAnalysis
{
  std::uint64_t order = 1;
  std::vector<Point> fixed_points;
  bool is_fpf = false;
  /// One entry per prime dividing the order, ascending by prime.
  std::vector<PrimeSplit> splits;

  bool is_prime_power() const { return splits.size() == 1; }
  /// The fixed-point-free prime-power predicate used throughout the fks module.
  bool is_fpf_prime_power() const { return is_fpf && is_prime_power(); }
  PrimeSplit const *split_for(std::uint64_t p) const;
};

ElementAnalysis analyze_element(Permutation const &g);

std::vector<std::uint64_t> prime_factors(std::uint64_t n);

} // namespace korbit

template <>
struct std::hash<korbit::Permutation>
{
  std::size_t operator()(korbit::Permutation const &p) const noexcept;
};
