#pragma once

#include <map>
#include <utility>

#include "qcc/grassmann.hpp"
#include "qcc/torus.hpp"

namespace qcc {

// M + I[-1] with I = sum of I_j^{inj_mult_j}.
struct ClusterObject {
  Representation module;
  DimVector inj_mult;

  // dim I
  DimVector shift_dims(const IntMatrix& euler) const;
  static ClusterObject with_shift_dims(Representation m, const DimVector& i, const IntMatrix& euler);
};

// -e* - *(m - i - e)
DimVector p_vector(const IntMatrix& euler, const DimVector& m, const DimVector& i, const DimVector& e);

// sum_e t^{-<e, m-i-e>} |Gr_e(M)| X^{p(M+I[-1], e)}, at the prime of M.
TorusElement q_character(const Representation& m, const DimVector& i, const EulerData& data);
TorusElement q_character(const ClusterObject& obj, const EulerData& data);
// Same sum over submodules one at a time (no counting); reference evaluator for tests.
TorusElement q_character_naive(const Representation& m, const DimVector& i, const EulerData& data);

// M'' + P'[1]: sum_e t^{<p-e, m-e>} |Gr_e(M'')| X^{(p-e)* - *(m-e)}, p = dim P'.
TorusElement tilde_character(const Representation& m, const DimVector& p, const EulerData& data);

// Stratum weights in s-units (twice the t-exponent), keyed by the psi image pair.
class WeightTable {
 public:
  using Key = std::pair<SubRep, SubRep>;  // (image in last term, preimage in first term)

  void set(const Key& key, long long s_weight) { weights_[key] = s_weight; }
  long long at(const Key& key) const;  // throws UsageError naming the stratum dims
  std::size_t size() const noexcept { return weights_.size(); }
  const std::map<Key, long long>& entries() const noexcept { return weights_; }

 private:
  std::map<Key, long long> weights_;
};

// sum over submodules L0 of the middle term of s^{w(psi(L0))} X^{p(L + I[-1], dim L0)}.
TorusElement weighted_character(const TriangleData& tri, const WeightTable& w, const EulerData& data);
TorusElement weighted_character_serial(const TriangleData& tri, const WeightTable& w, const EulerData& data);

}  // namespace qcc
