#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qcc/character.hpp"
#include "qcc/errors.hpp"
#include "qcc/torus.hpp"
#include "qcc/triangles.hpp"

namespace qcc {

// How the leading factor of the initial-character identity is read: q^{[M,I]} - 1 or t^{[M,I]} - 1.
enum class Prefactor { QPower, TPower };

struct ConventionConfig {
  int sigma = 1;  // sigma * Lambda * B = I
  Prefactor prefactor = Prefactor::QPower;

  std::string to_string() const;
  bool operator==(const ConventionConfig&) const = default;
};

class Context {
 public:
  Context(QuiverPtr quiver, ConventionConfig convention);

  const QuiverPtr& quiver() const noexcept { return quiver_; }
  const EulerData& euler() const noexcept { return euler_; }
  const QuantumTorus& torus() const noexcept { return torus_; }
  const ConventionConfig& convention() const noexcept { return convention_; }

  TorusElement character(const Representation& m) const;  // X~_M with no shift

 private:
  QuiverPtr quiver_;
  ConventionConfig convention_;
  EulerData euler_;
  QuantumTorus torus_;
};

struct VerificationReport {
  std::string identity;
  std::string quiver;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::string convention;
  std::vector<std::uint32_t> primes;
  std::string lhs;
  std::string rhs;
  bool equal = false;
  std::vector<std::string> diagnostics;
  TorusElement lhs_value;  // not serialized
  TorusElement rhs_value;

  nlohmann::ordered_json to_json() const;
};

enum class Side { Left, Right };
enum class Execution { Parallel, Serial };

struct IdentitySides {
  TorusElement lhs;
  TorusElement rhs;
  std::vector<std::string> notes;
};

// (q^{[M,N]^1} - 1) X~_M X~_N against the eps-sum over nonzero cocycles and the eta-sum over Hom(N, tau M).
IdentitySides cdz_sides(const Context& ctx, const Representation& m, const Representation& n,
                        Execution exec = Execution::Parallel);
VerificationReport verify_cdz(const Context& ctx, const Representation& m, const Representation& n,
                              Execution exec = Execution::Parallel);

IdentitySides initial_sides(const Context& ctx, const Representation& m, const Representation& inj, Side side);
VerificationReport verify_initial(const Context& ctx, const Representation& m, const Representation& inj, Side side);

VerificationReport verify_fiber_law(const Context& ctx, const Representation& m, const Representation& n);
VerificationReport verify_strata_counts(const Context& ctx, const Representation& m, const Representation& n);
VerificationReport verify_bilinear(const Context& ctx, std::size_t samples, std::uint64_t seed = 20240611);
VerificationReport verify_split_product(const Context& ctx, const Representation& m, const Representation& n);
// eps_span: one row of coordinates in the Ext^1(M, N) representative basis.
VerificationReport verify_dim1_refined(const Context& ctx, const Representation& m, const Representation& n,
                                       const FieldMatrix& eps_span);

struct MotivicTerm {
  DimVector alpha;
  std::string lhs;  // interpolated coefficient, as a Laurent polynomial in s
  std::string rhs;
  bool integral = true;
  bool consistent = true;  // held-out prime reproduced
  bool equal = true;
};

struct MotivicReport {
  std::vector<std::uint32_t> primes;
  TorusElement lhs;  // q replaced by s^4
  TorusElement rhs;
  std::vector<MotivicTerm> terms;
  bool consistent = true;
  bool integral = true;
  bool equal = false;

  nlohmann::ordered_json to_json() const;
};

// Interpolates every coefficient of both sides as a polynomial in q through all primes but the last,
// checks the last, substitutes q = s^4 and compares formally.
MotivicReport interp_motivic(const std::function<IdentitySides(std::uint32_t)>& runner,
                             const std::vector<std::uint32_t>& primes);

class CalibrationError : public Error {
 public:
  using Error::Error;
};

struct CalibrationOutcome {
  ConventionConfig config;
  bool cdz_pass = false;
  bool initial_pass = false;
  bool passes() const { return cdz_pass && initial_pass; }
};

struct CalibrationResult {
  ConventionConfig chosen;
  std::vector<CalibrationOutcome> outcomes;
  std::string table() const;
};

// Runs the A2 probes under both signs and both prefactor readings; exactly one combination must pass.
CalibrationResult calibrate(const std::vector<std::uint32_t>& primes);

}  // namespace qcc
