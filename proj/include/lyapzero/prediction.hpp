#pragma once

// Closed-form and enumerated predictions for a (real form, representation)
// pair: zero-exponent counts, pseudo-hermitian signatures, definite splits
// of the zero block, second fundamental form rank bounds, and the weight-1
// Hodge admissibility list.
//
// Counting convention: restricted weights carry complex multiplicities.
// Every *_real count below is complex count times form.count_factor(), i.e.
// doubled for SU(p,q) and SO*(2n), unchanged for the real families.

#include "lyapzero/realforms.hpp"
#include "lyapzero/weights.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lyapzero {

struct SignaturePair {
  BigInt positive = 0;
  BigInt negative = 0;
  bool operator==(const SignaturePair&) const = default;
};

struct SigmaRankBound {
  BigInt total = 0;
  // Per complex-conjugate block, where the two blocks contribute equally.
  std::optional<BigInt> per_block;
  bool operator==(const SigmaRankBound&) const = default;
};

struct HodgeVerdict {
  bool admissible = false;
  std::string reason;
  bool operator==(const HodgeVerdict&) const = default;
};

struct NonzeroEntry {
  Weight weight;  // restricted basis
  BigInt real_multiplicity = 0;
  bool operator==(const NonzeroEntry&) const = default;
};

struct SpectrumPrediction {
  RealFormSpec form;
  RepSpec rep;
  int count_factor = 1;
  int real_rank = 0;
  std::string relative_root_system;
  BigInt real_dim = 0;
  BigInt zero_count_real = 0;
  std::vector<NonzeroEntry> nonzero_structure;
  std::optional<SignaturePair> signature;       // complex dimensions
  std::optional<SignaturePair> definite_split;  // real dimensions of the zero block
  std::optional<SigmaRankBound> sigma_rank_bound;
  HodgeVerdict hodge;

  BigInt zero_count_complex() const { return zero_count_real / count_factor; }
  bool operator==(const SpectrumPrediction&) const = default;
};

// Restricted weights with real multiplicities.
WeightMultiset real_restricted_weights(const RealFormSpec& form, const RepSpec& rep);

// Zero multiplicity of the restricted weights, as a real count. Cross-checked
// against closed_form_zero_count when one exists.
BigInt predicted_zero_count(const RealFormSpec& form, const RepSpec& rep);

// Known closed forms (real counts), or nullopt.
std::optional<BigInt> closed_form_zero_count(const RealFormSpec& form, const RepSpec& rep);

// sum_a C(q,a) C(p-q, k-2a): complex multiplicity of the zero restricted
// weight in the k-th exterior power of SU(p,q).
BigInt su_exterior_zero_multiplicity(int p, int q, int k);

// Signature of the invariant pseudo-hermitian form on wedge^k C^{p+1} for SU(p,1).
SignaturePair su_p1_exterior_signature(int p, int k);

// (positive-definite, negative-definite) real dimensions inside the zero
// block of wedge^k for SU(p,1).
SignaturePair su_p1_zero_block_split(int p, int k);

// General SU(p,q) versions, by parity of the number of negative basis
// vectors (signature) or canceling pairs (split).
SignaturePair su_exterior_signature(int p, int q, int k);
SignaturePair su_zero_block_split(int p, int q, int k);

// Throws UnsupportedError outside SU(p,q) standard, SO*(2n) standard and
// SU(p,1) exterior powers.
SigmaRankBound sigma_rank_bound(const RealFormSpec& form, const RepSpec& rep);

HodgeVerdict hodge_admissible(const RealFormSpec& form, const RepSpec& rep);

struct SpectrumLine {
  double value = 0.0;
  BigInt multiplicity = 0;
  std::vector<Weight> weights;  // which restricted weights evaluate to `value`
};

// <nu, lambda> for each weight nu with its multiplicity, descending, ties
// merged. `lambda` must have one entry per restricted coordinate.
std::vector<SpectrumLine> evaluate_spectrum(const WeightMultiset& restricted,
                                            std::span<const double> lambda);
std::vector<SpectrumLine> evaluate_spectrum(const std::vector<NonzeroEntry>& nonzero,
                                            const BigInt& zero_count,
                                            std::span<const double> lambda);
std::vector<double> expand_spectrum(const std::vector<SpectrumLine>& lines);

// Least-squares Lyapunov vector from the realified standard-representation
// exponents (descending), matched against the standard restricted weights
// ordered by a generic point of the positive chamber.
std::vector<double> fit_lyapunov_vector(const RealFormSpec& form,
                                        std::span<const double> standard_exponents);

SpectrumPrediction predict(const RealFormSpec& form, const RepSpec& rep);

// Every Hodge-admissible pair with real_dim <= max_real_dim, ordered by
// real_dim then family. Exterior powers k = 1 and k = p+1 are omitted (they
// repeat the standard row or are trivial).
std::vector<SpectrumPrediction> classification_table(long max_real_dim);

}  // namespace lyapzero
