#include "qcc/character.hpp"

#include "qcc/errors.hpp"
#include "qcc/kernels.hpp"

namespace qcc {

DimVector ClusterObject::shift_dims(const IntMatrix& euler) const { return inverse_unipotent(euler).apply(inj_mult); }

ClusterObject ClusterObject::with_shift_dims(Representation m, const DimVector& i, const IntMatrix& euler) {
  DimVector mult = star_left(euler, i);
  for (auto x : mult)
    if (x < 0) throw UsageError("shift " + to_string(i) + " is not the dimension vector of an injective module");
  return {std::move(m), std::move(mult)};
}

DimVector p_vector(const IntMatrix& euler, const DimVector& m, const DimVector& i, const DimVector& e) {
  return -star_right(euler, e) - star_left(euler, m - i - e);
}

TorusElement q_character(const Representation& m, const DimVector& i, const EulerData& data) {
  TorusElement out;
  for (const auto& [e, count] : gr_counts(m)) {
    const auto w = -data.form(e, m.dims() - i - e);
    out.add_term(p_vector(data.euler, m.dims(), i, e),
                 LaurentScalar::s_power(static_cast<int>(2 * w), static_cast<std::int64_t>(count)));
  }
  return out;
}

TorusElement q_character(const ClusterObject& obj, const EulerData& data) {
  return q_character(obj.module, obj.shift_dims(data.euler), data);
}

TorusElement q_character_naive(const Representation& m, const DimVector& i, const EulerData& data) {
  TorusElement out;
  for (const auto& u : all_sub_reps_serial(m)) {
    const DimVector e = u.dims();
    out.add_term(p_vector(data.euler, m.dims(), i, e),
                 LaurentScalar::s_power(static_cast<int>(-2 * data.form(e, m.dims() - i - e))));
  }
  return out;
}

TorusElement tilde_character(const Representation& m, const DimVector& p, const EulerData& data) {
  TorusElement out;
  for (const auto& [e, count] : gr_counts(m)) {
    const auto w = data.form(p - e, m.dims() - e);
    const DimVector alpha = star_right(data.euler, p - e) - star_left(data.euler, m.dims() - e);
    out.add_term(alpha, LaurentScalar::s_power(static_cast<int>(2 * w), static_cast<std::int64_t>(count)));
  }
  return out;
}

long long WeightTable::at(const Key& key) const {
  auto it = weights_.find(key);
  if (it == weights_.end())
    throw UsageError("weight table has no entry for stratum (e,f) = (" + to_string(key.first.dims()) + "," +
                     to_string(key.second.dims()) + ")");
  return it->second;
}

namespace {

template <class Sum>
TorusElement weighted(const TriangleData& tri, const WeightTable& w, const EulerData& data, Sum&& sum) {
  const auto subs = all_sub_reps(tri.middle);
  return sum(subs.size(), [&](std::size_t k) {
    const auto key = psi_image(tri, subs[k]);
    const long long weight = w.at(key);
    return TorusElement::monomial(p_vector(data.euler, tri.middle.dims(), tri.middle_shift, subs[k].dims()),
                                  LaurentScalar::s_power(static_cast<int>(weight)));
  });
}

}  // namespace

TorusElement weighted_character(const TriangleData& tri, const WeightTable& w, const EulerData& data) {
  return weighted(tri, w, data, [](std::size_t n, auto&& f) { return parallel_sum(n, f); });
}

TorusElement weighted_character_serial(const TriangleData& tri, const WeightTable& w, const EulerData& data) {
  return weighted(tri, w, data, [](std::size_t n, auto&& f) { return serial_sum(n, f); });
}

}  // namespace qcc
