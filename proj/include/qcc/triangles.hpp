#pragma once

#include <vector>

#include "qcc/grassmann.hpp"
#include "qcc/rep.hpp"

namespace qcc {

// Per arrow a: i -> j, a matrix M_i -> N_j.
struct ExtCocycle {
  std::vector<FieldMatrix> components;
};

class ExtSpace {
 public:
  ExtSpace(const Representation& m, const Representation& n);

  std::size_t cochain_dim() const noexcept { return cochain_dim_; }
  std::size_t dim() const noexcept { return representatives_.cols(); }
  const FieldMatrix& coboundary_basis() const noexcept { return coboundaries_; }  // columns
  const FieldMatrix& representatives() const noexcept { return representatives_; }  // columns
  ExtCocycle cocycle(const std::vector<Scalar>& coeffs) const;
  ExtCocycle cocycle_from_index(std::uint64_t index) const;
  // Coordinates of the class of xi in the representative basis.
  std::vector<Scalar> class_coordinates(const ExtCocycle& xi) const;
  std::vector<Scalar> flatten(const ExtCocycle& xi) const;
  std::uint64_t class_count() const { return ipow(m_.prime(), static_cast<unsigned>(dim())); }

 private:
  ExtCocycle unflatten(const std::vector<Scalar>& v) const;

  Representation m_, n_;
  std::size_t cochain_dim_ = 0;
  std::vector<std::size_t> offsets_;
  FieldMatrix coboundaries_;
  FieldMatrix representatives_;
};

// N --i--> L --p--> M with L_v = N_v + M_v and arrow blocks [[N_a, xi_a], [0, M_a]].
TriangleData middle_term(const Representation& m, const Representation& n, const ExtCocycle& xi);
// A module map s: M -> L with p s = id exists iff the class of xi is zero.
bool triangle_splits(const TriangleData& tri);

// Data of a morphism eta: N -> tau M.
struct EtaAnalysis {
  KernelData kernel;       // D = Ker eta
  CokernelData cokernel;   // C = Coker eta
  TauInverseData coker_tau_inverse;
  Representation a;        // tau^{-1} C
  DimVector i;             // dim C - dim tau A
  DimVector inj_mult;
};
EtaAnalysis eta_analysis(const Representation& n, const Representation& tau_m, const ModuleMap& eta,
                         const IntMatrix& euler);

// M' --(p',0)--> A + D --(0,iota)--> N, where M' = tau^{-1} tau M and p' = tau^{-1}(tau M ->> Coker eta).
TriangleData eta_triangle(const EtaAnalysis& an, const Representation& n, const Representation& tau_m,
                          const TauInverseData& tau_m_data);

// Triangle for eps: M -> I with middle object Ker eps + (Coker eps)[-1].
struct MITriangle {
  KernelData kernel;
  Representation cokernel;
  DimVector shift;  // dim Coker eps
  DimVector inj_mult;
};
MITriangle hom_mi_triangle(const Representation& m, const Representation& inj, const ModuleMap& eps,
                           const IntMatrix& euler);

// Triangle for eta: P -> M with middle object Coker eta + (Ker eta)[1].
struct PMTriangle {
  CokernelData cokernel;
  KernelData kernel;
  DimVector proj_dims;  // dim Ker eta
  DimVector proj_mult;
};
PMTriangle hom_pm_triangle(const Representation& proj, const Representation& m, const ModuleMap& eta,
                           const IntMatrix& euler);

}  // namespace qcc
