#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "qcc/field.hpp"
#include "qcc/quiver.hpp"

namespace qcc {

// Covariant representation: arrow a: i -> j carries a dim_j x dim_i matrix.
class Representation {
 public:
  Representation(QuiverPtr quiver, std::uint32_t p, DimVector dims, std::vector<FieldMatrix> maps);
  static Representation zero(QuiverPtr quiver, std::uint32_t p);

  const Quiver& quiver() const noexcept { return *quiver_; }
  const QuiverPtr& quiver_ptr() const noexcept { return quiver_; }
  std::uint32_t prime() const noexcept { return p_; }
  const DimVector& dims() const noexcept { return dims_; }
  std::size_t dim(int v) const { return static_cast<std::size_t>(dims_[v]); }
  long long total_dim() const;
  const FieldMatrix& map(int arrow) const { return maps_[arrow]; }
  const std::vector<FieldMatrix>& maps() const noexcept { return maps_; }
  // Composite M_gamma along a path, first arrow applied first.
  FieldMatrix path_map(const Path& path) const;

  bool operator==(const Representation& o) const { return p_ == o.p_ && dims_ == o.dims_ && maps_ == o.maps_; }
  std::string to_text() const;

 private:
  QuiverPtr quiver_;
  std::uint32_t p_;
  DimVector dims_;
  std::vector<FieldMatrix> maps_;
};

// Per-vertex linear maps; naturality is checked by is_module_map.
struct ModuleMap {
  std::vector<FieldMatrix> components;

  const FieldMatrix& at(int v) const { return components[v]; }
  bool is_zero() const;
  bool operator==(const ModuleMap& o) const = default;
};

bool is_module_map(const Representation& src, const Representation& dst, const ModuleMap& f);
ModuleMap compose(const ModuleMap& g, const ModuleMap& f);  // g after f
ModuleMap identity_map(const Representation& m);
ModuleMap zero_map(const Representation& src, const Representation& dst);
ModuleMap linear_combination(const std::vector<ModuleMap>& basis, const std::vector<Scalar>& coeffs,
                             const Representation& src, const Representation& dst);
// Concatenation of all component entries, for linear algebra on Hom spaces.
std::vector<Scalar> flatten(const ModuleMap& f);

std::vector<ModuleMap> hom_basis(const Representation& m, const Representation& n);
long long hom_dim(const Representation& m, const Representation& n);
long long ext_dim(const Representation& m, const Representation& n);

// Integer blueprint of a representation, reducible modulo any prime.
struct ModuleBlueprint {
  DimVector dims;
  std::vector<std::vector<std::vector<long long>>> maps;  // per arrow, rows of the matrix

  Representation reduce(const QuiverPtr& quiver, std::uint32_t p) const;
};

ModuleBlueprint parse_module(std::istream& in, const Quiver& quiver);
ModuleBlueprint parse_module_text(const std::string& text, const Quiver& quiver);
ModuleBlueprint blueprint_of(const Representation& m);

Representation simple_module(const QuiverPtr& q, std::uint32_t p, int vertex);
Representation projective_module(const QuiverPtr& q, std::uint32_t p, int vertex);
Representation injective_module(const QuiverPtr& q, std::uint32_t p, int vertex);

struct StandardModules {
  std::vector<Representation> simples, projectives, injectives;
};
StandardModules standard_modules(const QuiverPtr& q, std::uint32_t p);

struct DirectSum {
  Representation module;
  std::vector<DimVector> offsets;  // offsets[k][v]: first basis index of summand k at vertex v
  std::vector<ModuleMap> inclusions;
  std::vector<ModuleMap> projections;
};
DirectSum direct_sum(const QuiverPtr& q, std::uint32_t p, const std::vector<Representation>& parts);
Representation direct_sum(const Representation& a, const Representation& b);

struct KernelData {
  Representation module;
  ModuleMap inclusion;
};
struct CokernelData {
  Representation module;
  ModuleMap projection;
  std::vector<FieldMatrix> section;  // vertexwise linear right inverse of the projection
};
struct ImageData {
  Representation module;
  ModuleMap inclusion;
};
KernelData kernel_of(const Representation& src, const ModuleMap& f);
CokernelData cokernel_of(const Representation& dst, const ModuleMap& f);
ImageData image_of(const Representation& dst, const ModuleMap& f);

// Sums of indecomposable projectives (resp. injectives), one summand per listed vertex.
struct ProjectiveSum {
  std::vector<int> summands;
  DirectSum sum;
  const Representation& module() const { return sum.module; }
};
struct InjectiveSum {
  std::vector<int> summands;
  DirectSum sum;
  const Representation& module() const { return sum.module; }
};
ProjectiveSum projective_sum(const QuiverPtr& q, std::uint32_t p, std::vector<int> summands);
InjectiveSum injective_sum(const QuiverPtr& q, std::uint32_t p, std::vector<int> summands);

// Map P_i -> M sending the trivial path to x in M_i.
ModuleMap map_from_projective(const Representation& m, int vertex, const std::vector<Scalar>& x);
// Map M -> I_i whose composite with evaluation at the trivial path is the functional on M_i.
ModuleMap map_to_injective(const Representation& m, int vertex, const std::vector<Scalar>& functional);
ModuleMap map_from_projective_sum(const Representation& m, const ProjectiveSum& src,
                                  const std::vector<std::vector<Scalar>>& elements);
ModuleMap map_to_injective_sum(const Representation& m, const InjectiveSum& dst,
                               const std::vector<std::vector<Scalar>>& functionals);

// Nakayama functor on maps between projective sums, and its inverse on injective sums.
ModuleMap nakayama_map(const ProjectiveSum& src, const ProjectiveSum& dst, const ModuleMap& f);
ModuleMap inverse_nakayama_map(const InjectiveSum& src, const InjectiveSum& dst, const ModuleMap& g);

struct ProjectiveCover {
  ProjectiveSum cover;
  ModuleMap projection;
};
struct InjectiveEnvelope {
  InjectiveSum envelope;
  ModuleMap inclusion;
};
ProjectiveCover projective_cover(const Representation& m);
InjectiveEnvelope injective_envelope(const Representation& m);

// Multiplicities of indecomposable projectives / injectives with the given total dimension vector.
DimVector projective_multiplicities(const IntMatrix& euler, const DimVector& dims);
DimVector injective_multiplicities(const IntMatrix& euler, const DimVector& dims);

// tau M = Ker(nu P1 -> nu P0). Throws PreconditionError if M has a projective summand.
Representation tau(const Representation& m);

// Minimal injective copresentation data of X and the resulting tau^{-1} X (no strictness check).
struct TauInverseData {
  InjectiveEnvelope env0;  // X -> I0
  InjectiveEnvelope env1;  // Coker -> I1
  ModuleMap g;             // I0 -> I1
  ProjectiveSum p0, p1;
  ModuleMap nu_inv_g;      // P0 -> P1
  CokernelData result;     // tau^{-1} X = Coker(P0 -> P1)
  const Representation& module() const { return result.module; }
};
TauInverseData tau_inverse_data(const Representation& x);
// Strict: throws PreconditionError if M has an injective summand.
Representation tau_inverse(const Representation& m);
// tau^{-1} h : tau^{-1} X -> tau^{-1} Y for a module map h: X -> Y.
ModuleMap tau_inverse_map(const Representation& x, const TauInverseData& xd, const Representation& y,
                          const TauInverseData& yd, const ModuleMap& h);

struct InjectiveSplit {
  Representation a;  // tau^{-1} x
  DimVector i;       // dim x - dim tau A
  DimVector inj_mult;
};
InjectiveSplit injective_split(const Representation& x, const IntMatrix& euler);

std::optional<ModuleMap> find_isomorphism(const Representation& m, const Representation& n);
bool iso_test(const Representation& m, const Representation& n);

}  // namespace qcc

namespace qcc {

// Interval module [lo, hi] of a linearly oriented A_n (arrow k: k -> k+1), 0-based inclusive.
Representation interval_module(const QuiverPtr& q, std::uint32_t p, int lo, int hi);

}  // namespace qcc
