#include "lyapzero/weights.hpp"

#include "lyapzero/errors.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace lyapzero {

Weight::Weight(std::vector<int> twice_coords, Basis basis)
    : twice_(std::move(twice_coords)), basis_(basis) {}

Weight Weight::zero(std::size_t dim, Basis basis) {
  return Weight(std::vector<int>(dim, 0), basis);
}

Weight Weight::unit(std::size_t dim, std::size_t i, Basis basis, int sign) {
  std::vector<int> c(dim, 0);
  c.at(i) = 2 * sign;
  return Weight(std::move(c), basis);
}

bool Weight::is_zero() const {
  return std::all_of(twice_.begin(), twice_.end(), [](int c) { return c == 0; });
}

Weight Weight::operator+(const Weight& other) const {
  if (other.dim() != dim() || other.basis_ != basis_) {
    throw ParameterError("weight addition: mismatched dimension or basis");
  }
  std::vector<int> c(twice_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += other.twice_[i];
  return Weight(std::move(c), basis_);
}

Weight Weight::operator-() const {
  std::vector<int> c(twice_);
  for (int& x : c) x = -x;
  return Weight(std::move(c), basis_);
}

double Weight::evaluate(std::span<const double> lambda) const {
  if (lambda.size() != twice_.size()) {
    throw ParameterError("weight evaluation: expected vector of length " +
                         std::to_string(twice_.size()) + ", got " +
                         std::to_string(lambda.size()));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < twice_.size(); ++i) s += twice_[i] * lambda[i];
  return 0.5 * s;
}

namespace {

// Render sum c_i x_i with integer c_i.
std::string linear_combination(const std::vector<int>& c, char symbol) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c.size(); ++i) {
    int v = c[i];
    if (v == 0) continue;
    if (v < 0) {
      os << '-';
    } else if (!first) {
      os << '+';
    }
    if (std::abs(v) != 1) os << std::abs(v);
    os << symbol << (i + 1);
    first = false;
  }
  return first ? std::string("0") : os.str();
}

}  // namespace

std::string Weight::to_string() const {
  const char symbol = basis_ == Basis::Absolute ? 'e' : 'f';
  bool all_even = std::all_of(twice_.begin(), twice_.end(), [](int c) { return c % 2 == 0; });
  if (all_even) {
    std::vector<int> c(twice_);
    for (int& x : c) x /= 2;
    return linear_combination(c, symbol);
  }
  return "1/2(" + linear_combination(twice_, symbol) + ")";
}

bool CanonicalOrder::operator()(const Weight& a, const Weight& b) const {
  if (a.basis() != b.basis()) return a.basis() < b.basis();
  return std::lexicographical_compare(b.twice_coords().begin(), b.twice_coords().end(),
                                      a.twice_coords().begin(), a.twice_coords().end());
}

void WeightMultiset::add(const Weight& w, const BigInt& multiplicity) {
  if (w.dim() != dim_ || w.basis() != basis_) {
    throw ParameterError("multiset insert: weight has dimension " + std::to_string(w.dim()) +
                         ", multiset expects " + std::to_string(dim_));
  }
  if (multiplicity <= 0) throw ParameterError("multiset insert: multiplicity must be positive");
  entries_[w] += multiplicity;
}

BigInt WeightMultiset::multiplicity(const Weight& w) const {
  auto it = entries_.find(w);
  return it == entries_.end() ? BigInt(0) : it->second;
}

BigInt WeightMultiset::total() const {
  BigInt t = 0;
  for (const auto& [w, m] : entries_) t += m;
  return t;
}

bool WeightMultiset::negation_closed() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [this](const auto& e) { return multiplicity(-e.first) == e.second; });
}

bool WeightMultiset::all_multiplicities_one() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const auto& e) { return e.second == 1; });
}

WeightMultiset WeightMultiset::scaled(const BigInt& factor) const {
  WeightMultiset out(dim_, basis_);
  for (const auto& [w, m] : entries_) out.add(w, m * factor);
  return out;
}

std::vector<Weight> WeightMultiset::expanded(std::size_t limit) const {
  BigInt t = total();
  if (t > limit) throw ParameterError("multiset too large to expand: " + t.str());
  std::vector<Weight> out;
  out.reserve(static_cast<std::size_t>(t));
  for (const auto& [w, m] : entries_) {
    for (BigInt i = 0; i < m; ++i) out.push_back(w);
  }
  return out;
}

std::size_t RootSystemSpec::ambient_dim() const {
  return type == RootType::A ? static_cast<std::size_t>(rank) + 1 : static_cast<std::size_t>(rank);
}

void RootSystemSpec::validate() const {
  int min_rank = 1;
  if (type == RootType::B) min_rank = 2;
  if (type == RootType::D) min_rank = 3;
  if (rank < min_rank) {
    throw ParameterError("root system " + to_string() + ": rank must be at least " +
                         std::to_string(min_rank));
  }
}

std::string RootSystemSpec::to_string() const {
  static constexpr char names[] = {'A', 'B', 'C', 'D'};
  return std::string(1, names[static_cast<int>(type)]) + std::to_string(rank);
}

bool RepSpec::is_spin() const {
  return kind == RepKind::Spin || kind == RepKind::HalfSpinPlus || kind == RepKind::HalfSpinMinus;
}

std::string RepSpec::to_string() const {
  switch (kind) {
    case RepKind::Standard: return "standard";
    case RepKind::ExteriorPower: return "ext:" + std::to_string(k);
    case RepKind::Spin: return "spin";
    case RepKind::HalfSpinPlus: return "half-spin:+";
    case RepKind::HalfSpinMinus: return "half-spin:-";
  }
  return "?";
}

RepSpec RepSpec::parse(const std::string& text) {
  if (text == "standard") return standard();
  if (text == "spin") return spin();
  if (text == "half-spin:+") return half_spin(true);
  if (text == "half-spin:-") return half_spin(false);
  if (text.rfind("ext:", 0) == 0) {
    const std::string digits = text.substr(4);
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit) &&
        digits.size() < 6) {
      int k = std::stoi(digits);
      if (k >= 1) return exterior(k);
    }
  }
  throw ParameterError("unknown representation '" + text +
                       "' (expected standard, ext:K, spin, half-spin:+, half-spin:-)");
}

bool RepSpec::operator==(const RepSpec& other) const {
  if (kind != other.kind) return false;
  return kind != RepKind::ExteriorPower || k == other.k;
}

BigInt binomial(long n, long k) {
  if (n < 0) throw ParameterError("binomial: n must be nonnegative");
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (long i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

void for_each_subset(std::size_t n, std::size_t k,
                     const std::function<void(std::span<const std::size_t>)>& visit) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    visit(idx);
    // advance to the next subset in lexicographic order
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

WeightMultiset weights_standard(const RootSystemSpec& rs) {
  rs.validate();
  const std::size_t n = rs.ambient_dim();
  WeightMultiset out(n, Basis::Absolute);
  for (std::size_t i = 0; i < n; ++i) {
    out.add(Weight::unit(n, i, Basis::Absolute));
    if (rs.type != RootType::A) out.add(Weight::unit(n, i, Basis::Absolute, -1));
  }
  if (rs.type == RootType::B) out.add(Weight::zero(n, Basis::Absolute));
  return out;
}

WeightMultiset subset_sums(std::span<const Weight> list, int k) {
  if (list.empty()) throw ParameterError("subset sums of an empty weight list");
  if (k < 1 || static_cast<std::size_t>(k) > list.size()) {
    throw ParameterError("exterior power k=" + std::to_string(k) + " out of range 1.." +
                         std::to_string(list.size()));
  }
  WeightMultiset out(list.front().dim(), list.front().basis());
  for_each_subset(list.size(), static_cast<std::size_t>(k),
                  [&](std::span<const std::size_t> idx) {
                    Weight s = list[idx[0]];
                    for (std::size_t j = 1; j < idx.size(); ++j) s = s + list[idx[j]];
                    out.add(s);
                  });
  return out;
}

WeightMultiset weights_exterior(const WeightMultiset& base, int k) {
  if (!base.all_multiplicities_one()) {
    throw ParameterError("weights_exterior: base must be multiplicity-free");
  }
  std::vector<Weight> list = base.expanded();
  if (k < 1 || static_cast<std::size_t>(k) > list.size()) {
    throw ParameterError("exterior power k=" + std::to_string(k) + " out of range 1.." +
                         std::to_string(list.size()));
  }
  return subset_sums(list, k);
}

WeightMultiset weights_spin(const RootSystemSpec& rs, const RepSpec& which) {
  rs.validate();
  const bool type_b = rs.type == RootType::B && which.kind == RepKind::Spin;
  const bool type_d = rs.type == RootType::D &&
                      (which.kind == RepKind::HalfSpinPlus || which.kind == RepKind::HalfSpinMinus);
  if (!type_b && !type_d) {
    throw ParameterError("representation " + which.to_string() + " is not defined for type " +
                         rs.to_string());
  }
  const std::size_t n = rs.ambient_dim();
  if (n > 24) throw ParameterError("spin weights: rank too large to enumerate");
  WeightMultiset out(n, Basis::Absolute);
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    const int minus = std::popcount(mask);
    if (type_d) {
      const bool odd = minus % 2 == 1;
      if (odd != (which.kind == RepKind::HalfSpinMinus)) continue;
    }
    std::vector<int> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = (mask >> i) & 1ul ? -1 : 1;
    out.add(Weight(std::move(c), Basis::Absolute));
  }
  return out;
}

}  // namespace lyapzero
