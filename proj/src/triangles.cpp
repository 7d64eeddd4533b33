#include "qcc/triangles.hpp"

#include "qcc/errors.hpp"

namespace qcc {

ExtSpace::ExtSpace(const Representation& m, const Representation& n) : m_(m), n_(n) {
  if (m.prime() != n.prime()) throw UsageError("ext_space: field mismatch");
  const auto& q = m.quiver();
  const std::uint32_t p = m.prime();
  for (const auto& a : q.arrows()) {
    offsets_.push_back(cochain_dim_);
    cochain_dim_ += n.dim(a.target) * m.dim(a.source);
  }
  std::vector<std::size_t> voff(q.vertex_count() + 1, 0);
  for (int v = 0; v < q.vertex_count(); ++v) voff[v + 1] = voff[v] + n.dim(v) * m.dim(v);
  // coboundary (phi_v) |-> (N_a phi_i - phi_j M_a)_a as a matrix cochain x vertex-hom
  FieldMatrix delta(cochain_dim_, voff.back(), p);
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    const auto [i, j] = q.arrows()[a];
    const auto& na = n.map(static_cast<int>(a));
    const auto& ma = m.map(static_cast<int>(a));
    for (std::size_t r = 0; r < n.dim(j); ++r)
      for (std::size_t c = 0; c < m.dim(i); ++c) {
        const std::size_t row = offsets_[a] + r * m.dim(i) + c;
        for (std::size_t k = 0; k < n.dim(i); ++k) {
          Scalar& x = delta(row, voff[i] + k * m.dim(i) + c);
          x = (x + na(r, k)) % p;
        }
        for (std::size_t k = 0; k < m.dim(j); ++k) {
          Scalar& x = delta(row, voff[j] + r * m.dim(j) + k);
          x = (x + p - ma(k, c)) % p;
        }
      }
  }
  const FieldMatrix image = row_span(delta.transpose());
  coboundaries_ = image.transpose();
  representatives_ = complement_rows(image).transpose();
  const long long expected = ext_dim(m, n);
  if (static_cast<long long>(dim()) != expected)
    throw InternalError("Ext representative count " + std::to_string(dim()) + " differs from ext_dim " +
                        std::to_string(expected));
}

ExtCocycle ExtSpace::unflatten(const std::vector<Scalar>& v) const {
  ExtCocycle xi;
  const auto& q = m_.quiver();
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    const auto [i, j] = q.arrows()[a];
    FieldMatrix c(n_.dim(j), m_.dim(i), m_.prime());
    for (std::size_t r = 0; r < c.rows(); ++r)
      for (std::size_t k = 0; k < c.cols(); ++k) c(r, k) = v[offsets_[a] + r * c.cols() + k];
    xi.components.push_back(std::move(c));
  }
  return xi;
}

std::vector<Scalar> ExtSpace::flatten(const ExtCocycle& xi) const {
  std::vector<Scalar> v(cochain_dim_, 0);
  for (std::size_t a = 0; a < xi.components.size(); ++a)
    for (std::size_t k = 0; k < xi.components[a].data().size(); ++k) v[offsets_[a] + k] = xi.components[a].data()[k];
  return v;
}

ExtCocycle ExtSpace::cocycle(const std::vector<Scalar>& coeffs) const {
  if (coeffs.size() != dim()) throw UsageError("cocycle needs one coefficient per Ext basis vector");
  auto v = (representatives_ * FieldMatrix::column_vector(coeffs, m_.prime())).column(0);
  if (v.empty()) v.assign(cochain_dim_, 0);
  return unflatten(v);
}

ExtCocycle ExtSpace::cocycle_from_index(std::uint64_t index) const {
  return cocycle(coefficients_from_index(index, dim(), m_.prime()));
}

std::vector<Scalar> ExtSpace::class_coordinates(const ExtCocycle& xi) const {
  auto sol = solve(hstack(representatives_, coboundaries_), flatten(xi));
  if (!sol) throw InternalError("cochain is not in the span of representatives and coboundaries");
  return {sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(dim())};
}

TriangleData middle_term(const Representation& m, const Representation& n, const ExtCocycle& xi) {
  const auto& q = m.quiver();
  const std::uint32_t p = m.prime();
  if (xi.components.size() != q.arrows().size()) throw UsageError("cocycle needs one matrix per arrow");
  const DimVector dims = n.dims() + m.dims();
  std::vector<FieldMatrix> maps;
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    const auto [i, j] = q.arrows()[a];
    if (xi.components[a].rows() != n.dim(j) || xi.components[a].cols() != m.dim(i))
      throw UsageError("cocycle component has the wrong shape");
    FieldMatrix block(dims[j], dims[i], p);
    block.set_block(0, 0, n.map(static_cast<int>(a)));
    block.set_block(0, n.dim(i), xi.components[a]);
    block.set_block(n.dim(j), n.dim(i), m.map(static_cast<int>(a)));
    maps.push_back(std::move(block));
  }
  Representation l(m.quiver_ptr(), p, dims, std::move(maps));
  ModuleMap in, out;
  for (int v = 0; v < q.vertex_count(); ++v) {
    FieldMatrix iv(dims[v], n.dim(v), p), pv(m.dim(v), dims[v], p);
    for (std::size_t r = 0; r < n.dim(v); ++r) iv(r, r) = 1;
    for (std::size_t r = 0; r < m.dim(v); ++r) pv(r, n.dim(v) + r) = 1;
    in.components.push_back(std::move(iv));
    out.components.push_back(std::move(pv));
  }
  return {n, std::move(l), m, std::move(in), std::move(out), DimVector(q.vertex_count(), 0)};
}

bool triangle_splits(const TriangleData& tri) {
  // solve for s in Hom(M, L) with p s = id_M, as a linear combination of a Hom basis
  const auto basis = hom_basis(tri.last, tri.middle);
  const auto target = flatten(identity_map(tri.last));
  FieldMatrix sys(target.size(), basis.size(), tri.last.prime());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const auto col = flatten(compose(tri.out, basis[k]));
    for (std::size_t r = 0; r < col.size(); ++r) sys(r, k) = col[r];
  }
  return solve(sys, target).has_value();
}

EtaAnalysis eta_analysis(const Representation& n, const Representation& tau_m, const ModuleMap& eta,
                         const IntMatrix& euler) {
  if (!is_module_map(n, tau_m, eta)) throw UsageError("eta is not a module map N -> tau M");
  KernelData kernel = kernel_of(n, eta);
  CokernelData cokernel = cokernel_of(tau_m, eta);
  TauInverseData tid = tau_inverse_data(cokernel.module);
  InjectiveSplit split = injective_split(cokernel.module, euler);
  EtaAnalysis an{std::move(kernel), std::move(cokernel), std::move(tid), split.a, split.i, split.inj_mult};
  if (!(an.a == an.coker_tau_inverse.module())) throw InternalError("tau inverse of the cokernel is not deterministic");
  return an;
}

TriangleData eta_triangle(const EtaAnalysis& an, const Representation& n, const Representation& tau_m,
                          const TauInverseData& tau_m_data) {
  const Representation& m_rep = tau_m_data.module();
  const ModuleMap p_prime =
      tau_inverse_map(tau_m, tau_m_data, an.cokernel.module, an.coker_tau_inverse, an.cokernel.projection);
  const QuiverPtr& q = n.quiver_ptr();
  const std::uint32_t p = n.prime();
  DirectSum mid = direct_sum(q, p, {an.a, an.kernel.module});
  // (p', 0): M' -> A + D and (0, iota): A + D -> N
  const ModuleMap in = compose(mid.inclusions[0], p_prime);
  const ModuleMap out = compose(an.kernel.inclusion, mid.projections[1]);
  return {m_rep, mid.module, n, in, out, an.i};
}

MITriangle hom_mi_triangle(const Representation& m, const Representation& inj, const ModuleMap& eps,
                           const IntMatrix& euler) {
  if (!is_module_map(m, inj, eps)) throw UsageError("eps is not a module map M -> I");
  KernelData kernel = kernel_of(m, eps);
  Representation coker = cokernel_of(inj, eps).module;
  InjectiveSplit split = injective_split(coker, euler);
  if (split.a.total_dim() != 0) throw InternalError("cokernel of a map into an injective is not injective");
  return {std::move(kernel), std::move(coker), split.i, split.inj_mult};
}

PMTriangle hom_pm_triangle(const Representation& proj, const Representation& m, const ModuleMap& eta,
                           const IntMatrix& euler) {
  if (!is_module_map(proj, m, eta)) throw UsageError("eta is not a module map P -> M");
  CokernelData coker = cokernel_of(m, eta);
  KernelData kernel = kernel_of(proj, eta);
  // a submodule of a projective over a hereditary algebra is projective; check via the cover
  const ProjectiveCover cover = projective_cover(kernel.module);
  if (cover.cover.module().dims() != kernel.module.dims())
    throw InternalError("kernel of a map out of a projective is not projective");
  DimVector dims = kernel.module.dims();
  DimVector mult = projective_multiplicities(euler, dims);
  return {std::move(coker), std::move(kernel), std::move(dims), std::move(mult)};
}

}  // namespace qcc
