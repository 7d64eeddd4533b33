#include "qcc/grassmann.hpp"

#include <algorithm>
#include <functional>

#include "qcc/errors.hpp"

namespace qcc {

DimVector SubRep::dims() const {
  DimVector d;
  for (const auto& b : basis) d.push_back(static_cast<long long>(b.rows()));
  return d;
}

std::strong_ordering SubRep::operator<=>(const SubRep& o) const {
  if (auto c = dims() <=> o.dims(); c != 0) return c;
  return basis <=> o.basis;
}

SubRep zero_subrep(const Representation& m) {
  SubRep u;
  for (int v = 0; v < m.quiver().vertex_count(); ++v) u.basis.push_back(zero_subspace(m.dim(v), m.prime()));
  return u;
}

SubRep full_subrep(const Representation& m) {
  SubRep u;
  for (int v = 0; v < m.quiver().vertex_count(); ++v) u.basis.push_back(full_subspace(m.dim(v), m.prime()));
  return u;
}

bool is_subrep(const Representation& m, const SubRep& u) {
  const auto& arrows = m.quiver().arrows();
  if (static_cast<int>(u.basis.size()) != m.quiver().vertex_count()) return false;
  for (int v = 0; v < m.quiver().vertex_count(); ++v)
    if (u.basis[v].cols() != m.dim(v)) return false;
  for (std::size_t a = 0; a < arrows.size(); ++a) {
    const auto [s, t] = arrows[a];
    if (!subspace_contains(u.basis[t], image_subspace(m.map(static_cast<int>(a)), u.basis[s]))) return false;
  }
  return true;
}

Representation subrep_module(const Representation& m, const SubRep& u) {
  const auto& arrows = m.quiver().arrows();
  std::vector<FieldMatrix> maps;
  for (std::size_t a = 0; a < arrows.size(); ++a) {
    const auto [s, t] = arrows[a];
    auto x = solve_matrix(u.basis[t].transpose(), m.map(static_cast<int>(a)) * u.basis[s].transpose());
    if (!x) throw UsageError("subspace family is not arrow-stable");
    maps.push_back(std::move(*x));
  }
  return Representation(m.quiver_ptr(), m.prime(), u.dims(), std::move(maps));
}

Representation quotient_module(const Representation& m, const SubRep& u) {
  ModuleMap inc;
  for (const auto& b : u.basis) inc.components.push_back(b.transpose());
  return cokernel_of(m, inc).module;
}

namespace {

// Depth-first over vertices in topological order; the subspace at v must contain the
// images of the choices made at its predecessors.
class SubRepWalker {
 public:
  SubRepWalker(const Representation& m, const DimVector* e) : m_(m), e_(e), order_(m.quiver().topological_order()) {}

  std::vector<FieldMatrix> choices(const std::vector<FieldMatrix>& chosen, std::size_t depth) const {
    const int v = order_[depth];
    FieldMatrix required = zero_subspace(m_.dim(v), m_.prime());
    for (int a : m_.quiver().arrows_into(v)) {
      const int s = m_.quiver().arrows()[a].source;
      required = subspace_sum(required, image_subspace(m_.map(a), chosen[s]));
    }
    std::vector<FieldMatrix> out;
    if (e_) {
      const auto target = (*e_)[v];
      if (target < 0 || target > static_cast<long long>(m_.dim(v))) return out;
      return enumerate_superspaces(required, static_cast<std::size_t>(target));
    }
    for (std::size_t d = required.rows(); d <= m_.dim(v); ++d) {
      auto part = enumerate_superspaces(required, d);
      out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return out;
  }

  void walk(std::vector<FieldMatrix>& chosen, std::size_t depth, const std::function<void(const SubRep&)>& emit) const {
    if (depth == order_.size()) {
      emit(SubRep{chosen});
      return;
    }
    const int v = order_[depth];
    for (auto& c : choices(chosen, depth)) {
      chosen[v] = std::move(c);
      walk(chosen, depth + 1, emit);
    }
  }

  std::vector<FieldMatrix> empty_choice() const {
    std::vector<FieldMatrix> chosen;
    for (int v = 0; v < m_.quiver().vertex_count(); ++v) chosen.push_back(zero_subspace(m_.dim(v), m_.prime()));
    return chosen;
  }

  int first_vertex() const { return order_.front(); }

 private:
  const Representation& m_;
  const DimVector* e_;
  const std::vector<int>& order_;
};

bool in_range(const Representation& m, const DimVector& e) {
  if (e.size() != m.dims().size()) throw UsageError("dimension vector length mismatch");
  for (std::size_t v = 0; v < e.size(); ++v)
    if (e[v] < 0 || e[v] > m.dims()[v]) return false;
  return true;
}

std::vector<SubRep> collect_serial(const Representation& m, const DimVector* e) {
  SubRepWalker w(m, e);
  std::vector<SubRep> out;
  auto chosen = w.empty_choice();
  w.walk(chosen, 0, [&](const SubRep& u) { out.push_back(u); });
  std::sort(out.begin(), out.end());
  return out;
}

// Parallel over the choices at the first vertex; per-branch buffers are joined in branch order.
std::vector<SubRep> collect_parallel(const Representation& m, const DimVector* e) {
  SubRepWalker w(m, e);
  const auto base = w.empty_choice();
  const auto first = w.choices(base, 0);
  std::vector<std::vector<SubRep>> buffers(first.size());
  const long long n = static_cast<long long>(first.size());
#pragma omp parallel for schedule(dynamic)
  for (long long k = 0; k < n; ++k) {
    auto chosen = base;
    chosen[w.first_vertex()] = first[k];
    w.walk(chosen, 1, [&](const SubRep& u) { buffers[k].push_back(u); });
  }
  std::vector<SubRep> out;
  for (auto& b : buffers) out.insert(out.end(), std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<SubRep> sub_reps(const Representation& m, const DimVector& e) {
  if (!in_range(m, e)) return {};
  return collect_parallel(m, &e);
}

std::vector<SubRep> sub_reps_serial(const Representation& m, const DimVector& e) {
  if (!in_range(m, e)) return {};
  return collect_serial(m, &e);
}

std::vector<SubRep> all_sub_reps(const Representation& m) { return collect_parallel(m, nullptr); }
std::vector<SubRep> all_sub_reps_serial(const Representation& m) { return collect_serial(m, nullptr); }

std::uint64_t count_gr(const Representation& m, const DimVector& e) {
  if (!in_range(m, e)) return 0;
  SubRepWalker w(m, &e);
  std::uint64_t count = 0;
  auto chosen = w.empty_choice();
  w.walk(chosen, 0, [&](const SubRep&) { ++count; });
  return count;
}

std::map<DimVector, std::uint64_t> gr_counts_serial(const Representation& m) {
  SubRepWalker w(m, nullptr);
  std::map<DimVector, std::uint64_t> counts;
  auto chosen = w.empty_choice();
  w.walk(chosen, 0, [&](const SubRep& u) { ++counts[u.dims()]; });
  return counts;
}

std::map<DimVector, std::uint64_t> gr_counts(const Representation& m) {
  SubRepWalker w(m, nullptr);
  const auto base = w.empty_choice();
  const auto first = w.choices(base, 0);
  std::vector<std::map<DimVector, std::uint64_t>> partial(first.size());
  const long long n = static_cast<long long>(first.size());
#pragma omp parallel for schedule(dynamic)
  for (long long k = 0; k < n; ++k) {
    auto chosen = base;
    chosen[w.first_vertex()] = first[k];
    w.walk(chosen, 1, [&](const SubRep& u) { ++partial[k][u.dims()]; });
  }
  std::map<DimVector, std::uint64_t> counts;
  for (const auto& part : partial)
    for (const auto& [e, c] : part) counts[e] += c;
  return counts;
}

std::pair<SubRep, SubRep> psi_image(const TriangleData& tri, const SubRep& l0) {
  if (!is_subrep(tri.middle, l0)) throw UsageError("psi_image: L0 is not a subrepresentation of the middle term");
  SubRep last0, first0;
  for (int v = 0; v < tri.middle.quiver().vertex_count(); ++v) {
    last0.basis.push_back(image_subspace(tri.out.at(v), l0.basis[v]));
    first0.basis.push_back(preimage_subspace(tri.in.at(v), l0.basis[v]));
  }
  if (!is_subrep(tri.last, last0) || !is_subrep(tri.first, first0))
    throw InternalError("psi_image produced a non-submodule");
  return {std::move(last0), std::move(first0)};
}

std::vector<SubRep> psi_fiber(const TriangleData& tri, const SubRep& last0, const SubRep& first0) {
  std::vector<SubRep> out;
  for (auto& l0 : sub_reps(tri.middle, last0.dims() + first0.dims())) {
    auto [a, b] = psi_image(tri, l0);
    if (a == last0 && b == first0) out.push_back(std::move(l0));
  }
  return out;
}

CountingPolynomial counting_polynomial(const ModuleBlueprint& blueprint, const QuiverPtr& quiver, const DimVector& e,
                                       const std::vector<std::uint32_t>& primes) {
  const DimVector rest = blueprint.dims - e;
  const long long bound = std::max(0LL, euler_form(euler_matrix(*quiver), e, rest));
  const std::size_t needed = static_cast<std::size_t>(bound) + 2;
  if (primes.size() < needed)
    throw UsageError("counting polynomial of degree <= " + std::to_string(bound) + " needs at least " +
                     std::to_string(needed) + " primes (one held out)");
  CountingPolynomial out;
  std::vector<Rational> xs, ys;
  for (std::size_t k = 0; k < primes.size(); ++k) {
    const Rational count = count_gr(blueprint.reduce(quiver, primes[k]), e);
    if (k <= static_cast<std::size_t>(bound)) {
      out.interpolation_primes.push_back(primes[k]);
      xs.push_back(primes[k]);
      ys.push_back(count);
      if (k == static_cast<std::size_t>(bound)) out.poly = RationalPoly::interpolate(xs, ys);
    } else {
      out.held_out_primes.push_back(primes[k]);
      if (out.poly(Rational(primes[k])) != count)
        throw PreconditionError("not polynomial-count at this degree bound: held-out prime " + std::to_string(primes[k]) +
                                " gives " + count.str() + ", interpolant " + out.poly.to_string() + " gives " +
                                out.poly(Rational(primes[k])).str());
    }
  }
  if (!out.poly.is_integral())
    throw PreconditionError("not polynomial-count at this degree bound: interpolant " + out.poly.to_string() +
                            " has non-integral coefficients");
  return out;
}

}  // namespace qcc
