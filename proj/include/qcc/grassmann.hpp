#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "qcc/poly.hpp"
#include "qcc/rep.hpp"

namespace qcc {

// Per-vertex RREF row bases of an arrow-stable family of subspaces.
struct SubRep {
  std::vector<FieldMatrix> basis;

  DimVector dims() const;
  bool operator==(const SubRep& o) const = default;
  std::strong_ordering operator<=>(const SubRep& o) const;
};

SubRep zero_subrep(const Representation& m);
SubRep full_subrep(const Representation& m);
bool is_subrep(const Representation& m, const SubRep& u);
// The submodule U as a representation in its row basis, and the quotient M/U.
Representation subrep_module(const Representation& m, const SubRep& u);
Representation quotient_module(const Representation& m, const SubRep& u);

// Gr_e(M); e out of range gives an empty list. Sorted canonically.
std::vector<SubRep> sub_reps(const Representation& m, const DimVector& e);
std::vector<SubRep> sub_reps_serial(const Representation& m, const DimVector& e);
// Every submodule, all dimension vectors. Sorted canonically.
std::vector<SubRep> all_sub_reps(const Representation& m);
std::vector<SubRep> all_sub_reps_serial(const Representation& m);

std::uint64_t count_gr(const Representation& m, const DimVector& e);
// |Gr_e(M)| for every e with a nonzero count.
std::map<DimVector, std::uint64_t> gr_counts(const Representation& m);
std::map<DimVector, std::uint64_t> gr_counts_serial(const Representation& m);

// Exact sequence model N --in--> L --out--> M with an optional injective shift on the middle term.
struct TriangleData {
  Representation first;   // N
  Representation middle;  // L
  Representation last;    // M
  ModuleMap in;
  ModuleMap out;
  DimVector middle_shift;  // dimension vector i of the shift part I[-1] of the middle object
};

// (image of L0 in the last term, preimage of L0 in the first term)
std::pair<SubRep, SubRep> psi_image(const TriangleData& tri, const SubRep& l0);
std::vector<SubRep> psi_fiber(const TriangleData& tri, const SubRep& last0, const SubRep& first0);

struct CountingPolynomial {
  RationalPoly poly;  // in q
  std::vector<std::uint32_t> interpolation_primes;
  std::vector<std::uint32_t> held_out_primes;
};

// Interpolates |Gr_e| through the first <e, m-e> + 1 primes and checks the rest.
// Throws PreconditionError ("not polynomial-count") on non-integral or held-out mismatch.
CountingPolynomial counting_polynomial(const ModuleBlueprint& blueprint, const QuiverPtr& quiver, const DimVector& e,
                                       const std::vector<std::uint32_t>& primes);

}  // namespace qcc
