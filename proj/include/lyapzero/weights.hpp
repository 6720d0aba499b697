#pragma once

// Exact weight combinatorics for root systems of type A/B/C/D and the
// minuscule representations used by the zero-exponent predictions:
// standard, exterior powers of the standard, spin and half-spin.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace lyapzero {

using BigInt = boost::multiprecision::cpp_int;

// Which coordinate system a weight is written in: the absolute basis
// e_1..e_n of a Cartan subalgebra, or the restricted basis f_1..f_r of a
// maximal split torus.
enum class Basis { Absolute, Restricted };

// A weight with coordinates in (1/2)Z, stored exactly as twice the
// coordinate so spin weights need no floating point.
class Weight {
 public:
  Weight() = default;
  Weight(std::vector<int> twice_coords, Basis basis);

  static Weight zero(std::size_t dim, Basis basis);
  // sign * (basis vector i), i is 0-based.
  static Weight unit(std::size_t dim, std::size_t i, Basis basis, int sign = 1);

  std::size_t dim() const { return twice_.size(); }
  Basis basis() const { return basis_; }
  int twice(std::size_t i) const { return twice_[i]; }
  const std::vector<int>& twice_coords() const { return twice_; }
  double coord(std::size_t i) const { return 0.5 * twice_[i]; }
  bool is_zero() const;

  Weight operator+(const Weight& other) const;
  Weight operator-() const;

  // <w, lambda> with lambda given in the same basis.
  double evaluate(std::span<const double> lambda) const;

  // "e1+e2", "-f1", "0", "1/2(f1-f2)".
  std::string to_string() const;

  bool operator==(const Weight& other) const = default;

 private:
  std::vector<int> twice_;
  Basis basis_ = Basis::Absolute;
};

// Canonical order: lexicographically descending on coordinates.
struct CanonicalOrder {
  bool operator()(const Weight& a, const Weight& b) const;
};

class WeightMultiset {
 public:
  using Map = std::map<Weight, BigInt, CanonicalOrder>;

  WeightMultiset() = default;
  WeightMultiset(std::size_t dim, Basis basis) : dim_(dim), basis_(basis) {}

  std::size_t dim() const { return dim_; }
  Basis basis() const { return basis_; }

  void add(const Weight& w, const BigInt& multiplicity = 1);
  BigInt multiplicity(const Weight& w) const;
  BigInt zero_multiplicity() const { return multiplicity(Weight::zero(dim_, basis_)); }
  BigInt total() const;
  std::size_t distinct() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  bool negation_closed() const;
  bool all_multiplicities_one() const;
  WeightMultiset scaled(const BigInt& factor) const;

  // Every weight repeated by its multiplicity, canonical order. Intended for
  // small multisets only; throws ParameterError above `limit` entries.
  std::vector<Weight> expanded(std::size_t limit = 1u << 20) const;

  Map::const_iterator begin() const { return entries_.begin(); }
  Map::const_iterator end() const { return entries_.end(); }

  bool operator==(const WeightMultiset& other) const = default;

 private:
  std::size_t dim_ = 0;
  Basis basis_ = Basis::Absolute;
  Map entries_;
};

enum class RootType { A, B, C, D };

struct RootSystemSpec {
  RootType type = RootType::A;
  int rank = 1;

  // Number of ambient coordinates e_i (rank + 1 for type A).
  std::size_t ambient_dim() const;
  void validate() const;
  std::string to_string() const;
};

enum class RepKind { Standard, ExteriorPower, Spin, HalfSpinPlus, HalfSpinMinus };

struct RepSpec {
  RepKind kind = RepKind::Standard;
  int k = 1;  // only meaningful for ExteriorPower

  static RepSpec standard() { return {RepKind::Standard, 1}; }
  static RepSpec exterior(int k) { return {RepKind::ExteriorPower, k}; }
  static RepSpec spin() { return {RepKind::Spin, 1}; }
  static RepSpec half_spin(bool plus) {
    return {plus ? RepKind::HalfSpinPlus : RepKind::HalfSpinMinus, 1};
  }

  bool is_spin() const;
  // "standard", "ext:2", "spin", "half-spin:+", "half-spin:-"
  std::string to_string() const;
  static RepSpec parse(const std::string& text);

  bool operator==(const RepSpec& other) const;
};

BigInt binomial(long n, long k);

// Visit every k-subset of {0, ..., n-1} in lexicographic order. This is the
// index order shared by weights_exterior and the compound matrix kernel.
void for_each_subset(std::size_t n, std::size_t k,
                     const std::function<void(std::span<const std::size_t>)>& visit);

WeightMultiset weights_standard(const RootSystemSpec& rs);

// Requires a multiplicity-free base (the standard representation).
WeightMultiset weights_exterior(const WeightMultiset& base, int k);

// k-subset sums of an explicit list of weights (repetition allowed). This is
// the weight multiset of the k-th exterior power of any representation
// whose weights, listed with multiplicity, are `list`.
WeightMultiset subset_sums(std::span<const Weight> list, int k);

WeightMultiset weights_spin(const RootSystemSpec& rs, const RepSpec& which);

}  // namespace lyapzero
