#include "qcc/verify.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "qcc/kernels.hpp"

namespace qcc {

namespace {

LaurentScalar q_minus_one(long long d) { return LaurentScalar::s_power(static_cast<int>(4 * d)) - LaurentScalar::constant(1); }

std::vector<Scalar> coordinates(std::uint64_t index, std::size_t len, std::uint32_t p) {
  return coefficients_from_index(index, len, p);
}

ModuleMap hom_element(const std::vector<ModuleMap>& basis, std::uint64_t index, const Representation& src,
                      const Representation& dst) {
  return linear_combination(basis, coordinates(index, basis.size(), src.prime()), src, dst);
}

VerificationReport make_report(const Context& ctx, std::string identity, std::uint32_t p) {
  VerificationReport r;
  r.identity = std::move(identity);
  r.quiver = ctx.quiver()->name();
  r.convention = ctx.convention().to_string();
  r.primes = {p};
  return r;
}

void finish(VerificationReport& r, TorusElement lhs, TorusElement rhs, std::uint32_t p) {
  const auto cmp = compare_specialized(lhs, rhs, p);
  r.equal = cmp.equal;
  if (!cmp.equal) r.diagnostics.push_back(cmp.detail);
  r.lhs = lhs.to_string();
  r.rhs = rhs.to_string();
  r.lhs_value = std::move(lhs);
  r.rhs_value = std::move(rhs);
}

void add_input(VerificationReport& r, const std::string& name, const Representation& m) {
  r.inputs.emplace_back(name, to_string(m.dims()));
}

std::string stratum_name(const SubRep& a, const SubRep& b) {
  return "(" + to_string(a.dims()) + "," + to_string(b.dims()) + ")";
}

// [M0, N/N0]: the fiber exponent of a stratum.
long long fiber_exponent(const Representation& m, const SubRep& m0, const Representation& n, const SubRep& n0) {
  return hom_dim(subrep_module(m, m0), quotient_module(n, n0));
}

long long ext_exponent(const Representation& m, const SubRep& m0, const Representation& n, const SubRep& n0) {
  return ext_dim(subrep_module(m, m0), quotient_module(n, n0));
}

using Stratum = std::pair<SubRep, SubRep>;
using StratumCounts = std::map<Stratum, std::uint64_t>;

StratumCounts psi_counts(const TriangleData& tri) {
  StratumCounts out;
  for (const auto& l0 : all_sub_reps(tri.middle)) ++out[psi_image(tri, l0)];
  return out;
}

struct TauModel {
  Representation tau_m;
  TauInverseData data;
  Representation m_prime;  // tau^{-1} tau M
};

TauModel tau_model(const Representation& m) {
  Representation t = tau(m);
  TauInverseData d = tau_inverse_data(t);
  Representation mp = d.module();
  return {std::move(t), std::move(d), std::move(mp)};
}

// An Ext^1(M', N) cocycle carried over from Ext^1(M, N) along phi: M -> M'.
ExtCocycle transport(const ExtCocycle& xi, const Representation& m, const ModuleMap& phi) {
  ExtCocycle out;
  const auto& arrows = m.quiver().arrows();
  for (std::size_t a = 0; a < arrows.size(); ++a) {
    const auto src = static_cast<std::size_t>(arrows[a].source);
    out.components.push_back(xi.components[a] * inverse(phi.at(src)).value());
  }
  return out;
}

}  // namespace

std::string ConventionConfig::to_string() const {
  return std::string("sigma=") + (sigma > 0 ? "+1" : "-1") +
         (prefactor == Prefactor::QPower ? " prefactor=q^[M,I]-1" : " prefactor=t^[M,I]-1");
}

Context::Context(QuiverPtr quiver, ConventionConfig convention)
    : quiver_(std::move(quiver)),
      convention_(convention),
      euler_(make_euler_data(*quiver_, convention.sigma)),
      torus_(euler_.lambda2) {}

TorusElement Context::character(const Representation& m) const {
  return q_character(m, DimVector(m.dims().size(), 0), euler_);
}

nlohmann::ordered_json VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["identity"] = identity;
  j["quiver"] = quiver;
  auto in = nlohmann::ordered_json::object();
  for (const auto& [k, v] : inputs) in[k] = v;
  j["inputs"] = in;
  j["convention"] = convention;
  j["primes"] = primes;
  j["lhs"] = lhs;
  j["rhs"] = rhs;
  j["equal"] = equal;
  j["diagnostics"] = diagnostics;
  return j;
}

IdentitySides cdz_sides(const Context& ctx, const Representation& m, const Representation& n, Execution exec) {
  const auto& data = ctx.euler();
  const long long d = ext_dim(m, n);
  if (d == 0)
    throw PreconditionError("cdz: Ext^1(M,N) = 0 for M = " + to_string(m.dims()) + ", N = " + to_string(n.dims()));
  const std::uint32_t p = m.prime();
  const DimVector& md = m.dims();
  const DimVector& nd = n.dims();

  IdentitySides out;
  out.lhs = ctx.torus().mul(ctx.character(m), ctx.character(n)).scaled(q_minus_one(d));

  const ExtSpace ext(m, n);
  const std::uint64_t classes = ext.class_count();
  auto eps_term = [&](std::size_t k) {
    return ctx.character(middle_term(m, n, ext.cocycle_from_index(k + 1)).middle);
  };
  TorusElement eps = exec == Execution::Parallel ? parallel_sum(classes - 1, eps_term) : serial_sum(classes - 1, eps_term);
  eps = eps.scaled(LaurentScalar::s_power(static_cast<int>(data.lambda2_form(star_right(data.euler, md),
                                                                             star_right(data.euler, nd)))));

  const Representation tau_m = tau(m);
  const auto basis = hom_basis(n, tau_m);
  if (static_cast<long long>(basis.size()) != d)
    throw InternalError("cdz: dim Hom(N, tau M) = " + std::to_string(basis.size()) + " differs from dim Ext^1(M,N) = " +
                        std::to_string(d));
  const std::uint64_t maps = ipow(p, static_cast<unsigned>(basis.size()));
  auto eta_term = [&](std::size_t k) {
    const ModuleMap eta = hom_element(basis, k + 1, n, tau_m);
    const EtaAnalysis an = eta_analysis(n, tau_m, eta, data.euler);
    const DimVector& a = an.a.dims();
    const long long w = data.lambda2_form(star_right(data.euler, md - a), star_right(data.euler, nd + a)) +
                        2 * data.form(md - a, nd);
    const TorusElement x = ctx.torus().mul(ctx.character(an.a), q_character(an.kernel.module, an.i, data));
    return x.scaled(LaurentScalar::s_power(static_cast<int>(w)));
  };
  TorusElement eta = exec == Execution::Parallel ? parallel_sum(maps - 1, eta_term) : serial_sum(maps - 1, eta_term);

  out.rhs = eps + eta;
  out.notes.push_back("eps terms: " + std::to_string(classes - 1));
  out.notes.push_back("eta terms: " + std::to_string(maps - 1));
  return out;
}

VerificationReport verify_cdz(const Context& ctx, const Representation& m, const Representation& n, Execution exec) {
  auto r = make_report(ctx, "cdz", m.prime());
  add_input(r, "M", m);
  add_input(r, "N", n);
  auto sides = cdz_sides(ctx, m, n, exec);
  finish(r, std::move(sides.lhs), std::move(sides.rhs), m.prime());
  for (auto& note : sides.notes) r.diagnostics.push_back(std::move(note));
  return r;
}

IdentitySides initial_sides(const Context& ctx, const Representation& m, const Representation& inj, Side side) {
  const auto& data = ctx.euler();
  const std::uint32_t p = m.prime();
  const DimVector mult = injective_multiplicities(data.euler, inj.dims());
  std::vector<int> summands;
  for (std::size_t v = 0; v < mult.size(); ++v)
    for (long long c = 0; c < mult[v]; ++c) summands.push_back(static_cast<int>(v));
  const InjectiveSum standard = injective_sum(m.quiver_ptr(), p, summands);
  if (mult != injective_multiplicities(data.euler, standard.module().dims()) || !iso_test(inj, standard.module()))
    throw UsageError("initial: I = " + to_string(inj.dims()) + " is not injective");

  const long long h = hom_dim(m, inj);
  if (h == 0) throw PreconditionError("initial: [M,I] = 0, the leading factor vanishes");
  const ProjectiveSum proj = projective_sum(m.quiver_ptr(), p, summands);

  const DimVector& md = m.dims();
  const DimVector& id = inj.dims();
  const DimVector star_i = star_left(data.euler, id);
  const DimVector star_m = star_left(data.euler, md);
  const TorusElement shift = TorusElement::monomial(star_i);
  const int sigma = ctx.convention().sigma;
  const LaurentScalar pref = ctx.convention().prefactor == Prefactor::QPower
                                 ? q_minus_one(h)
                                 : LaurentScalar::s_power(static_cast<int>(2 * h)) - LaurentScalar::constant(1);

  IdentitySides out;
  long long lead = 0;
  long long twist = 0;
  if (side == Side::Left) {
    out.lhs = ctx.torus().mul(ctx.character(m), shift).scaled(pref);
    lead = data.lambda2_form(star_i, star_m);
    twist = -2 * sigma * data.form(md, id);
  } else {
    out.lhs = ctx.torus().mul(shift, ctx.character(m)).scaled(pref);
    lead = data.lambda2_form(star_m, star_i);
    twist = 2 * sigma * data.form(md, id);
  }

  const auto eps_basis = hom_basis(m, inj);
  const std::uint64_t eps_count = ipow(p, static_cast<unsigned>(eps_basis.size()));
  TorusElement eps = parallel_sum(eps_count - 1, [&](std::size_t k) {
    const ModuleMap e = hom_element(eps_basis, k + 1, m, inj);
    const MITriangle tri = hom_mi_triangle(m, inj, e, data.euler);
    return q_character(tri.kernel.module, tri.shift, data);
  });

  const auto eta_basis = hom_basis(proj.module(), m);
  const std::uint64_t eta_count = ipow(p, static_cast<unsigned>(eta_basis.size()));
  TorusElement eta = parallel_sum(eta_count - 1, [&](std::size_t k) {
    const ModuleMap e = hom_element(eta_basis, k + 1, proj.module(), m);
    const PMTriangle tri = hom_pm_triangle(proj.module(), m, e, data.euler);
    return tilde_character(tri.cokernel.module, tri.proj_dims, data);
  });

  out.rhs = (eps + eta.scaled(LaurentScalar::s_power(static_cast<int>(twist))))
                .scaled(LaurentScalar::s_power(static_cast<int>(lead)));
  out.notes.push_back("eps terms: " + std::to_string(eps_count - 1));
  out.notes.push_back("eta terms: " + std::to_string(eta_count - 1));
  out.notes.push_back("prefactor s^" + std::to_string(lead) + ", eta twist s^" + std::to_string(twist));
  return out;
}

VerificationReport verify_initial(const Context& ctx, const Representation& m, const Representation& inj, Side side) {
  auto r = make_report(ctx, side == Side::Left ? "initial-left" : "initial-right", m.prime());
  add_input(r, "M", m);
  add_input(r, "I", inj);
  auto sides = initial_sides(ctx, m, inj, side);
  finish(r, std::move(sides.lhs), std::move(sides.rhs), m.prime());
  for (auto& note : sides.notes) r.diagnostics.push_back(std::move(note));
  return r;
}

VerificationReport verify_fiber_law(const Context& ctx, const Representation& m, const Representation& n) {
  auto r = make_report(ctx, "fibers", m.prime());
  add_input(r, "M", m);
  add_input(r, "N", n);
  const std::uint32_t p = m.prime();
  const ExtSpace ext(m, n);
  const auto subs_m = all_sub_reps(m);
  const auto subs_n = all_sub_reps(n);

  std::map<Stratum, long long> exponent;
  for (const auto& m0 : subs_m)
    for (const auto& n0 : subs_n) exponent[{m0, n0}] = fiber_exponent(m, m0, n, n0);

  const auto per_class = parallel_collect(ext.class_count(), [&](std::size_t k) {
    return psi_counts(middle_term(m, n, ext.cocycle_from_index(k)));
  });

  std::map<DimVector, std::uint64_t> split_aggregate;
  for (const auto& [key, c] : exponent) split_aggregate[key.first.dims() + key.second.dims()] += ipow(p, static_cast<unsigned>(c));

  bool ok = true;
  std::size_t strata_checked = 0;
  for (std::size_t k = 0; k < per_class.size(); ++k) {
    const auto& counts = per_class[k];
    for (const auto& [key, size] : counts) {
      ++strata_checked;
      const auto want = ipow(p, static_cast<unsigned>(exponent.at(key)));
      if (size != want) {
        ok = false;
        r.diagnostics.push_back("class " + std::to_string(k) + " stratum " + stratum_name(key.first, key.second) +
                                ": fiber " + std::to_string(size) + ", expected " + std::to_string(want));
      }
    }
    if (k == 0 && counts.size() != exponent.size()) {
      ok = false;
      r.diagnostics.push_back("split class misses " + std::to_string(exponent.size() - counts.size()) + " strata");
    }
  }
  if (split_aggregate != gr_counts(direct_sum(m, n))) {
    ok = false;
    r.diagnostics.push_back("sum of p^[M0,N/N0] differs from |Gr_g(M+N)|");
  }
  r.equal = ok;
  r.lhs = "fiber sizes";
  r.rhs = "p^[M0,N/N0]";
  r.diagnostics.push_back("classes: " + std::to_string(per_class.size()) + ", strata checked: " +
                          std::to_string(strata_checked));
  return r;
}

VerificationReport verify_strata_counts(const Context& ctx, const Representation& m_in, const Representation& n) {
  auto r = make_report(ctx, "strata", m_in.prime());
  add_input(r, "M", m_in);
  add_input(r, "N", n);
  const std::uint32_t p = n.prime();
  const TauModel tm = tau_model(m_in);
  if (!iso_test(m_in, tm.m_prime)) throw InternalError("strata: tau^{-1} tau M is not isomorphic to M");
  const Representation& m = tm.m_prime;
  const ExtSpace ext(m, n);
  const long long d = static_cast<long long>(ext.dim());

  const auto eps_images = parallel_collect(ext.class_count(), [&](std::size_t k) {
    return psi_counts(middle_term(m, n, ext.cocycle_from_index(k)));
  });
  const auto basis = hom_basis(n, tm.tau_m);
  const std::uint64_t maps = ipow(p, static_cast<unsigned>(basis.size()));
  const auto eta_images = parallel_collect(maps, [&](std::size_t k) {
    const ModuleMap eta = hom_element(basis, k, n, tm.tau_m);
    const EtaAnalysis an = eta_analysis(n, tm.tau_m, eta, ctx.euler().euler);
    return psi_counts(eta_triangle(an, n, tm.tau_m, tm.data));
  });

  std::map<Stratum, std::uint64_t> eps_count, eta_count;
  std::uint64_t incidences = 0;
  for (const auto& img : eps_images) {
    incidences += img.size();
    for (const auto& kv : img) ++eps_count[kv.first];
  }
  for (const auto& img : eta_images)
    for (const auto& kv : img) ++eta_count[{kv.first.second, kv.first.first}];  // (N0, M0) -> (M0, N0)

  bool ok = true;
  std::uint64_t total = 0;
  for (const auto& m0 : all_sub_reps(m))
    for (const auto& n0 : all_sub_reps(n)) {
      const Stratum key{m0, n0};
      const long long x = ext_exponent(m, m0, n, n0);
      const auto want_eps = ipow(p, static_cast<unsigned>(d - x));
      const auto want_eta = ipow(p, static_cast<unsigned>(x));
      const auto got_eps = eps_count.count(key) ? eps_count.at(key) : 0;
      const auto got_eta = eta_count.count(key) ? eta_count.at(key) : 0;
      total += got_eps;
      if (got_eps != want_eps || got_eta != want_eta) {
        ok = false;
        r.diagnostics.push_back("stratum " + stratum_name(m0, n0) + ": eps " + std::to_string(got_eps) + "/" +
                                std::to_string(want_eps) + ", eta " + std::to_string(got_eta) + "/" +
                                std::to_string(want_eta));
      }
    }
  if (total != incidences) {
    ok = false;
    r.diagnostics.push_back("double counting failed: " + std::to_string(total) + " vs " + std::to_string(incidences));
  }
  r.equal = ok;
  r.lhs = "eps " + std::to_string(eps_count.size()) + " strata, eta " + std::to_string(eta_count.size()) + " strata";
  r.rhs = "p^([M,N]^1-[M0,N/N0]^1), p^[M0,N/N0]^1";
  r.diagnostics.push_back("incidences: " + std::to_string(incidences));
  return r;
}

VerificationReport verify_bilinear(const Context& ctx, std::size_t samples, std::uint64_t seed) {
  VerificationReport r;
  r.identity = "bilinear";
  r.quiver = ctx.quiver()->name();
  r.convention = ctx.convention().to_string();
  r.inputs.emplace_back("samples", std::to_string(samples));
  r.inputs.emplace_back("seed", std::to_string(seed));
  const auto& data = ctx.euler();
  const IntMatrix& e_mat = data.euler;
  const IntMatrix phi = coxeter_matrix(e_mat);
  const std::size_t n = e_mat.rows();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long long> coord(-6, 6);
  auto vec = [&] {
    DimVector v(n);
    for (auto& x : v) x = coord(rng);
    return v;
  };
  auto star = [&](const DimVector& v) { return star_right(e_mat, v); };

  std::size_t fails_first = 0, fails_second = 0;
  for (std::size_t k = 0; k < samples; ++k) {
    const DimVector m = vec(), nn = vec(), e = vec(), f = vec(), a = vec();
    const long long lhs1 = data.lambda2_form(p_vector(e_mat, m, DimVector(n, 0), e), p_vector(e_mat, nn, DimVector(n, 0), f));
    const long long rhs1 = data.lambda2_form(star(m), star(nn)) + 2 * data.form(e, nn - f) - 2 * data.form(f, m - e);
    if (lhs1 != rhs1) {
      if (++fails_first <= 3)
        r.diagnostics.push_back("first identity fails at m=" + to_string(m) + " n=" + to_string(nn) + " e=" +
                                to_string(e) + " f=" + to_string(f));
    }
    const DimVector di = nn - phi.apply(m - a);
    const long long lhs2 = data.lambda2_form(star(m - a), star(nn + a)) + 2 * data.form(m - a, nn) +
                           data.lambda2_form(star(a), star(di));
    const long long rhs2 = data.lambda2_form(star(m), star(nn)) + 2 * data.form(m - a, nn - a);
    if (lhs2 != rhs2) {
      if (++fails_second <= 3)
        r.diagnostics.push_back("second identity fails at m=" + to_string(m) + " n=" + to_string(nn) + " a=" +
                                to_string(a));
    }
  }
  r.equal = fails_first == 0 && fails_second == 0;
  r.lhs = std::to_string(samples - fails_first) + "/" + std::to_string(samples) + " and " +
          std::to_string(samples - fails_second) + "/" + std::to_string(samples) + " samples agree";
  r.rhs = std::to_string(samples) + "/" + std::to_string(samples) + " and " + std::to_string(samples) + "/" +
          std::to_string(samples);
  return r;
}

VerificationReport verify_split_product(const Context& ctx, const Representation& m, const Representation& n) {
  auto r = make_report(ctx, "split", m.prime());
  add_input(r, "M", m);
  add_input(r, "N", n);
  const auto& data = ctx.euler();
  const DimVector zero(m.dims().size(), 0);
  ExtCocycle split;
  for (const auto& arrow : m.quiver().arrows())
    split.components.push_back(FieldMatrix(n.dim(arrow.target), m.dim(arrow.source), m.prime()));
  const TriangleData tri = middle_term(m, n, split);

  WeightTable w;
  for (const auto& m0 : all_sub_reps(m))
    for (const auto& n0 : all_sub_reps(n)) {
      const DimVector e = m0.dims(), f = n0.dims();
      const long long weight = data.lambda2_form(p_vector(data.euler, m.dims(), zero, e),
                                                 p_vector(data.euler, n.dims(), zero, f)) -
                               4 * fiber_exponent(m, m0, n, n0) - 2 * data.form(e, m.dims() - e) -
                               2 * data.form(f, n.dims() - f);
      w.set({m0, n0}, weight);
    }
  finish(r, ctx.torus().mul(ctx.character(m), ctx.character(n)), weighted_character(tri, w, data), m.prime());
  r.diagnostics.push_back("strata: " + std::to_string(w.size()));
  return r;
}

VerificationReport verify_dim1_refined(const Context& ctx, const Representation& m_in, const Representation& n,
                                       const FieldMatrix& eps_span) {
  auto r = make_report(ctx, "dim1", m_in.prime());
  add_input(r, "M", m_in);
  add_input(r, "N", n);
  const auto& data = ctx.euler();
  const std::uint32_t p = n.prime();
  const ExtSpace ext_in(m_in, n);
  if (ext_in.dim() == 0) throw PreconditionError("dim1: Ext^1(M,N) = 0");
  if (eps_span.cols() != ext_in.dim() || rank(eps_span) != 1)
    throw UsageError("dim1: the chosen subspace of Ext^1(M,N) must be one-dimensional (got rank " +
                     std::to_string(eps_span.cols() == ext_in.dim() ? rank(eps_span) : 0) + " in dimension " +
                     std::to_string(ext_in.dim()) + ")");
  const FieldMatrix span = row_span(eps_span);
  std::vector<Scalar> coeffs(span.cols());
  for (std::size_t c = 0; c < span.cols(); ++c) coeffs[c] = span(0, c);

  const TauModel tm = tau_model(m_in);
  const auto phi = find_isomorphism(m_in, tm.m_prime);
  if (!phi) throw InternalError("dim1: tau^{-1} tau M is not isomorphic to M");
  const Representation& m = tm.m_prime;
  const ExtCocycle xi = transport(ext_in.cocycle(coeffs), m_in, *phi);
  const DimVector& md = m.dims();
  const DimVector& nd = n.dims();
  const DimVector zero(md.size(), 0);

  const auto subs_m = all_sub_reps(m);
  const auto subs_n = all_sub_reps(n);

  // eps side: strata met by the line spanned by xi
  std::set<Stratum> eps_strata;
  for (const auto& kv : psi_counts(middle_term(m, n, xi))) eps_strata.insert(kv.first);

  // eta side: for each stratum the set of eta meeting it
  const auto basis = hom_basis(n, tm.tau_m);
  const std::size_t h = basis.size();
  const std::uint64_t maps = ipow(p, static_cast<unsigned>(h));
  const auto eta_images = parallel_collect(maps, [&](std::size_t k) {
    const ModuleMap eta = hom_element(basis, k, n, tm.tau_m);
    const EtaAnalysis an = eta_analysis(n, tm.tau_m, eta, data.euler);
    return psi_counts(eta_triangle(an, n, tm.tau_m, tm.data));
  });
  std::map<Stratum, std::vector<std::uint64_t>> incident;  // keyed (M0, N0)
  for (std::uint64_t k = 0; k < maps; ++k)
    for (const auto& kv : eta_images[k]) incident[{kv.first.second, kv.first.first}].push_back(k);

  auto coords = [&](std::uint64_t k) {
    FieldMatrix row(1, h, p);
    const auto c = coordinates(k, h, p);
    for (std::size_t j = 0; j < h; ++j) row.set(0, j, c[j]);
    return row;
  };
  struct StratumData {
    Stratum key;
    bool eps = false;
    FieldMatrix kernel;  // K' as a row space in Hom(N, tau M)
    long long c = 0;     // [M0, N/N0]
    long long c_eta = 0; // [N0, M/M0]
  };
  std::vector<StratumData> strata;
  bool ok = true;
  for (const auto& m0 : subs_m)
    for (const auto& n0 : subs_n) {
      StratumData s{{m0, n0}, eps_strata.count({m0, n0}) > 0, FieldMatrix(0, h, p), fiber_exponent(m, m0, n, n0),
                    fiber_exponent(n, n0, m, m0)};
      const auto it = incident.find(s.key);
      FieldMatrix rows(0, h, p);
      std::size_t members = 0;
      if (it != incident.end()) {
        members = it->second.size();
        for (auto k : it->second) rows = vstack(rows, coords(k));
      }
      s.kernel = row_span(rows);
      if (ipow(p, static_cast<unsigned>(s.kernel.rows())) != members) {
        ok = false;
        r.diagnostics.push_back("stratum " + stratum_name(m0, n0) + ": eta incidence set is not a subspace");
      }
      strata.push_back(std::move(s));
    }
  if (!ok) {
    r.equal = false;
    return r;
  }

  const TorusElement lhs = ctx.torus().mul(ctx.character(m), ctx.character(n)).scaled(q_minus_one(1));
  const long long base_mn = data.lambda2_form(star_right(data.euler, md), star_right(data.euler, nd));

  // eps part does not depend on W
  WeightTable eps_weights;
  for (const auto& s : strata) {
    const DimVector e = s.key.first.dims(), f = s.key.second.dims();
    const DimVector g = e + f, l = md + nd;
    eps_weights.set(s.key, -4 * s.c + base_mn + 4 * data.form(e, nd - f) - 2 * data.form(g, l - g));
  }
  TorusElement eps;
  for (Scalar lambda = 1; lambda < static_cast<Scalar>(p); ++lambda) {
    ExtCocycle scaled;
    for (const auto& c : xi.components) scaled.components.push_back(c.scaled(lambda));
    eps += weighted_character(middle_term(m, n, scaled), eps_weights, data);
  }

  std::size_t valid = 0;
  std::size_t candidates = 0;
  bool all_pass = true;
  std::string first_lhs, first_rhs;
  for (const auto& w : enumerate_subspaces(h, h - 1, p)) {
    ++candidates;
    bool good = true;
    std::vector<long long> d_v(strata.size());
    for (std::size_t j = 0; j < strata.size() && good; ++j) {
      const auto& s = strata[j];
      const auto meet = static_cast<long long>(subspace_intersection(s.kernel, w).rows());
      d_v[j] = meet;
      good = (s.eps ? 1 : 0) + (static_cast<long long>(s.kernel.rows()) - meet) == 1;
    }
    if (!good) continue;
    ++valid;
    WeightTable eta_weights;
    for (std::size_t j = 0; j < strata.size(); ++j) {
      const auto& s = strata[j];
      const DimVector e = s.key.first.dims(), f = s.key.second.dims();
      const long long base = data.lambda2_form(p_vector(data.euler, md, zero, e), p_vector(data.euler, nd, zero, f)) -
                             2 * data.form(e, md - e) - 2 * data.form(f, nd - f);
      eta_weights.set({s.key.second, s.key.first}, base - 4 * d_v[j] - 4 * s.c_eta);
    }
    std::vector<std::uint64_t> outside;
    for (std::uint64_t k = 0; k < maps; ++k)
      if (!subspace_contains(w, coords(k))) outside.push_back(k);
    const TorusElement eta = parallel_sum(outside.size(), [&](std::size_t j) {
      const ModuleMap e = hom_element(basis, outside[j], n, tm.tau_m);
      const EtaAnalysis an = eta_analysis(n, tm.tau_m, e, data.euler);
      return weighted_character(eta_triangle(an, n, tm.tau_m, tm.data), eta_weights, data);
    });
    const TorusElement rhs = eps + eta;
    const auto cmp = compare_specialized(lhs, rhs, p);
    if (valid == 1 || !cmp.equal) {
      first_lhs = lhs.to_string();
      first_rhs = rhs.to_string();
      r.lhs_value = lhs;
      r.rhs_value = rhs;
    }
    if (!cmp.equal) {
      all_pass = false;
      r.diagnostics.push_back("hyperplane " + w.to_string() + ": " + cmp.detail);
    }
  }
  r.equal = valid >= 1 && all_pass;
  r.lhs = first_lhs;
  r.rhs = first_rhs;
  r.diagnostics.push_back("valid hyperplanes: " + std::to_string(valid) + " of " + std::to_string(candidates));
  return r;
}

nlohmann::ordered_json MotivicReport::to_json() const {
  nlohmann::ordered_json j;
  j["primes"] = primes;
  j["consistent"] = consistent;
  j["integral"] = integral;
  j["equal"] = equal;
  j["lhs"] = lhs.to_string();
  j["rhs"] = rhs.to_string();
  auto terms_json = nlohmann::ordered_json::array();
  for (const auto& t : terms) {
    nlohmann::ordered_json x;
    x["alpha"] = to_string(t.alpha);
    x["lhs"] = t.lhs;
    x["rhs"] = t.rhs;
    x["integral"] = t.integral;
    x["consistent"] = t.consistent;
    x["equal"] = t.equal;
    terms_json.push_back(std::move(x));
  }
  j["terms"] = std::move(terms_json);
  return j;
}

namespace {

struct Interpolated {
  LaurentScalar value;  // q replaced by s^4
  bool integral = true;
  bool consistent = true;
};

// values[prime index] : s-exponent -> coefficient
Interpolated interpolate_coefficient(const std::vector<std::map<int, std::int64_t>>& values,
                                     const std::vector<std::uint32_t>& primes) {
  std::set<int> exponents;
  for (const auto& v : values)
    for (const auto& kv : v) exponents.insert(kv.first);
  Interpolated out;
  const std::size_t fit = primes.size() - 1;
  for (int k : exponents) {
    std::vector<Rational> xs, ys;
    for (std::size_t j = 0; j < fit; ++j) {
      xs.emplace_back(primes[j]);
      const auto it = values[j].find(k);
      ys.emplace_back(it == values[j].end() ? 0 : it->second);
    }
    const RationalPoly poly = RationalPoly::interpolate(xs, ys);
    const auto it = values.back().find(k);
    const Rational held(it == values.back().end() ? 0 : it->second);
    if (poly(Rational(primes.back())) != held) out.consistent = false;
    if (!poly.is_integral()) {
      out.integral = false;
      continue;
    }
    const auto& cs = poly.coefficients();
    for (std::size_t j = 0; j < cs.size(); ++j) {
      const BigInt c = boost::multiprecision::numerator(cs[j]);
      if (c != 0) out.value += LaurentScalar::s_power(k + 4 * static_cast<int>(j), c.convert_to<std::int64_t>());
    }
  }
  return out;
}

}  // namespace

MotivicReport interp_motivic(const std::function<IdentitySides(std::uint32_t)>& runner,
                             const std::vector<std::uint32_t>& primes) {
  if (primes.size() < 2) throw UsageError("interp: at least two primes are needed (one is held out)");
  MotivicReport out;
  out.primes = primes;
  std::vector<IdentitySides> sides;
  for (auto p : primes) sides.push_back(runner(p));

  std::set<DimVector, DescendingLex> alphas;
  for (const auto& s : sides) {
    for (const auto& kv : s.lhs.terms()) alphas.insert(kv.first);
    for (const auto& kv : s.rhs.terms()) alphas.insert(kv.first);
  }
  auto collect = [&](const DimVector& alpha, bool left) {
    std::vector<std::map<int, std::int64_t>> values;
    for (const auto& s : sides) {
      const auto& terms = left ? s.lhs.terms() : s.rhs.terms();
      const auto it = terms.find(alpha);
      values.push_back(it == terms.end() ? std::map<int, std::int64_t>{} : it->second.terms());
    }
    return values;
  };
  for (const auto& alpha : alphas) {
    const Interpolated l = interpolate_coefficient(collect(alpha, true), primes);
    const Interpolated r = interpolate_coefficient(collect(alpha, false), primes);
    MotivicTerm t;
    t.alpha = alpha;
    t.lhs = l.value.to_string();
    t.rhs = r.value.to_string();
    t.integral = l.integral && r.integral;
    t.consistent = l.consistent && r.consistent;
    t.equal = t.integral && t.consistent && l.value == r.value;
    out.integral = out.integral && t.integral;
    out.consistent = out.consistent && t.consistent;
    out.lhs.add_term(alpha, l.value);
    out.rhs.add_term(alpha, r.value);
    out.terms.push_back(std::move(t));
  }
  out.equal = out.integral && out.consistent && out.lhs == out.rhs;
  return out;
}

std::string CalibrationResult::table() const {
  std::ostringstream os;
  for (const auto& o : outcomes)
    os << o.config.to_string() << ": cdz " << (o.cdz_pass ? "pass" : "fail") << ", initial "
       << (o.initial_pass ? "pass" : "fail") << '\n';
  return os.str();
}

CalibrationResult calibrate(const std::vector<std::uint32_t>& primes) {
  if (primes.empty()) throw UsageError("calibrate: no primes given");
  const QuiverPtr a2 = std::make_shared<const Quiver>(preset_quiver("a2"));
  CalibrationResult result;
  for (int sigma : {1, -1})
    for (Prefactor pref : {Prefactor::QPower, Prefactor::TPower}) {
      const Context ctx(a2, {sigma, pref});
      CalibrationOutcome o;
      o.config = ctx.convention();
      o.cdz_pass = o.initial_pass = true;
      for (auto p : primes) {
        const auto s = standard_modules(a2, p);
        o.cdz_pass = o.cdz_pass && verify_cdz(ctx, s.simples[0], s.simples[1]).equal;
        o.initial_pass = o.initial_pass && verify_initial(ctx, s.projectives[0], s.injectives[0], Side::Left).equal &&
                         verify_initial(ctx, s.projectives[0], s.injectives[0], Side::Right).equal;
      }
      result.outcomes.push_back(o);
    }
  std::size_t passing = 0;
  for (const auto& o : result.outcomes)
    if (o.passes()) {
      ++passing;
      result.chosen = o.config;
    }
  if (passing != 1)
    throw CalibrationError((passing == 0 ? "calibration failed: no convention passes\n"
                                         : "calibration ambiguous: several conventions pass\n") +
                           result.table());
  return result;
}

}  // namespace qcc
