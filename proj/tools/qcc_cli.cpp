// qcc: characters, Grassmannian counts and identity checks from the command line.
// Exit codes: 0 pass, 1 identity failure, 2 usage, parse or precondition error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qcc/verify.hpp"

namespace fs = std::filesystem;
using namespace qcc;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kError = 2;
const char* const kCacheName = ".qcc-convention.json";

struct Options {
  std::string quiver;
  std::string module, m, n, inj, shifted;
  std::uint32_t prime = 2;
  std::vector<std::uint32_t> primes;
  std::string e;
  std::string eps;
  std::string side = "both";
  std::string out;
  std::string suite;
  std::string identity = "cdz";
  std::size_t samples = 1000;
  int sigma = 0;  // 0: use calibration
  std::string prefactor;
  int shift = 0;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

QuiverPtr load_quiver(const std::string& spec) {
  if (spec.empty()) throw UsageError("--quiver is required");
  if (fs::is_regular_file(spec)) {
    std::ifstream in(spec);
    return std::make_shared<const Quiver>(parse_quiver(in, fs::path(spec).stem().string()));
  }
  std::string name = fs::path(spec).filename().string();
  if (name.size() > 2 && name.ends_with(".q")) name.resize(name.size() - 2);
  if (!is_preset_quiver(name)) throw UsageError("unknown quiver '" + spec + "' (not a file or a preset a2, a4, kronecker)");
  return std::make_shared<const Quiver>(preset_quiver(name));
}

// "S 1", "P 2 + I 1" (1-based vertices) or a module file.
Representation load_module(const std::string& spec, const QuiverPtr& q, std::uint32_t p) {
  if (spec.empty()) throw UsageError("missing module specification");
  if (fs::is_regular_file(spec)) return parse_module_text(read_file(spec), *q).reduce(q, p);
  std::vector<Representation> parts;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, '+')) {
    std::istringstream ps(part);
    char kind = 0;
    int vertex = 0;
    std::string rest;
    if (!(ps >> kind >> vertex) || (ps >> rest))
      throw UsageError("bad module specification '" + part + "' (expected S, P or I followed by a vertex)");
    if (vertex < 1 || vertex > q->vertex_count())
      throw UsageError("vertex " + std::to_string(vertex) + " out of range in '" + part + "'");
    switch (kind) {
      case 'S': parts.push_back(simple_module(q, p, vertex - 1)); break;
      case 'P': parts.push_back(projective_module(q, p, vertex - 1)); break;
      case 'I': parts.push_back(injective_module(q, p, vertex - 1)); break;
      default: throw UsageError("unknown module kind '" + std::string(1, kind) + "' in '" + part + "'");
    }
  }
  if (parts.empty()) throw UsageError("empty module specification");
  return direct_sum(q, p, parts).module;
}

std::vector<long long> parse_ints(const std::string& text, const std::string& what) {
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad " + what + " '" + text + "'");
    }
  }
  return out;
}

std::vector<std::uint32_t> prime_list(const Options& o) {
  std::vector<std::uint32_t> primes = o.primes.empty() ? std::vector<std::uint32_t>{o.prime} : o.primes;
  for (std::size_t k = 0; k < primes.size(); ++k) {
    if (!is_prime(primes[k])) throw UsageError(std::to_string(primes[k]) + " is not a prime");
    for (std::size_t j = 0; j < k; ++j)
      if (primes[j] == primes[k]) throw UsageError("prime " + std::to_string(primes[k]) + " listed twice");
  }
  return primes;
}

fs::path cache_path(const std::string& quiver) {
  if (!quiver.empty() && fs::is_regular_file(quiver)) return fs::absolute(quiver).parent_path() / kCacheName;
  return fs::current_path() / kCacheName;
}

void write_cache(const fs::path& path, const CalibrationResult& result, const std::vector<std::uint32_t>& primes) {
  nlohmann::ordered_json j;
  j["sigma"] = result.chosen.sigma;
  j["prefactor"] = result.chosen.prefactor == Prefactor::QPower ? "q" : "t";
  j["primes"] = primes;
  std::ofstream(path) << j.dump(2) << '\n';
}

ConventionConfig convention(const Options& o) {
  if (o.sigma != 0 || !o.prefactor.empty()) {
    ConventionConfig c;
    c.sigma = o.sigma == 0 ? 1 : o.sigma;
    c.prefactor = o.prefactor == "t" ? Prefactor::TPower : Prefactor::QPower;
    return c;
  }
  const fs::path path = cache_path(o.quiver);
  if (fs::is_regular_file(path)) {
    try {
      const auto j = nlohmann::json::parse(read_file(path));
      return {j.at("sigma").get<int>(), j.at("prefactor").get<std::string>() == "t" ? Prefactor::TPower : Prefactor::QPower};
    } catch (const nlohmann::json::exception&) {
      std::cerr << "ignoring unreadable " << path << '\n';
    }
  }
  const std::vector<std::uint32_t> primes{2, 3, 5};
  const auto result = calibrate(primes);
  write_cache(path, result, primes);
  return result.chosen;
}

void emit(const Options& o, const nlohmann::ordered_json& j) {
  if (o.out.empty()) return;
  std::ofstream out(o.out);
  if (!out) throw UsageError("cannot write " + o.out);
  out << j.dump(2) << '\n';
}

int cmd_char(const Options& o) {
  const auto q = load_quiver(o.quiver);
  const Context ctx(q, convention(o));
  const auto& data = ctx.euler();
  const auto m = load_module(o.module, q, o.prime);
  TorusElement x;
  if (o.shift == -1 || o.shift == 1) {
    // the whole object is I[-1] or P[1]
    const DimVector mult = o.shift == -1 ? injective_multiplicities(data.euler, m.dims())
                                         : projective_multiplicities(data.euler, m.dims());
    const auto& std_mods = standard_modules(q, o.prime);
    std::vector<Representation> parts;
    for (std::size_t v = 0; v < mult.size(); ++v)
      for (long long c = 0; c < mult[v]; ++c)
        parts.push_back(o.shift == -1 ? std_mods.injectives[v] : std_mods.projectives[v]);
    if (parts.empty() || !iso_test(direct_sum(q, o.prime, parts).module, m))
      throw UsageError(std::string("--shift ") + (o.shift == -1 ? "-1 needs an injective" : "1 needs a projective") +
                       " module");
    const auto zero = Representation::zero(q, o.prime);
    x = o.shift == -1 ? q_character(zero, m.dims(), data) : tilde_character(zero, m.dims(), data);
  } else if (o.shift != 0) {
    throw UsageError("--shift must be -1, 0 or 1");
  } else if (!o.shifted.empty()) {
    const auto extra = load_module(o.shifted, q, o.prime);
    const DimVector inj = injective_multiplicities(data.euler, extra.dims());
    const bool injective = std::all_of(inj.begin(), inj.end(), [](long long c) { return c >= 0; }) &&
                           iso_test(extra, injective_sum(q, o.prime, [&] {
                                         std::vector<int> s;
                                         for (std::size_t v = 0; v < inj.size(); ++v)
                                           for (long long c = 0; c < inj[v]; ++c) s.push_back(static_cast<int>(v));
                                         return s;
                                       }()).module());
    x = injective ? q_character(m, extra.dims(), data) : tilde_character(m, extra.dims(), data);
  } else {
    x = ctx.character(m);
  }
  std::cout << x.to_string() << '\n';
  nlohmann::ordered_json j;
  j["quiver"] = q->name();
  j["module"] = o.module;
  j["prime"] = o.prime;
  j["character"] = x.to_string();
  emit(o, j);
  return kPass;
}

int cmd_gr_count(const Options& o) {
  const auto q = load_quiver(o.quiver);
  const auto m = load_module(o.module, q, o.prime);
  const auto e = parse_ints(o.e, "dimension vector");
  if (e.size() != m.dims().size()) throw UsageError("--e needs " + std::to_string(m.dims().size()) + " entries");
  const auto count = count_gr(m, e);
  std::cout << count << '\n';
  return kPass;
}

int cmd_calibrate(const Options& o) {
  const auto primes = o.primes.empty() ? std::vector<std::uint32_t>{2, 3, 5} : prime_list(o);
  const auto result = calibrate(primes);
  std::cout << result.table();
  std::cout << "chosen: " << result.chosen.to_string() << '\n';
  write_cache(cache_path(o.quiver), result, primes);
  return kPass;
}

struct Pool {
  std::vector<std::string> names;
  std::vector<Representation> modules;
  std::vector<bool> projective;
};

bool linear_an(const Quiver& q) {
  if (static_cast<int>(q.arrows().size()) != q.vertex_count() - 1) return false;
  for (std::size_t a = 0; a < q.arrows().size(); ++a)
    if (q.arrows()[a].source != static_cast<int>(a) || q.arrows()[a].target != static_cast<int>(a) + 1) return false;
  return true;
}

// Indecomposables used by "verify all": intervals for linear A_n, otherwise simples, projectives, injectives.
Pool suite_pool(const QuiverPtr& q, std::uint32_t p) {
  Pool pool;
  const auto s = standard_modules(q, p);
  auto add = [&](const std::string& name, const Representation& m) {
    for (const auto& x : pool.modules)
      if (x.dims() == m.dims() && iso_test(x, m)) return;
    bool proj = false;
    for (const auto& pr : s.projectives) proj = proj || (pr.dims() == m.dims() && iso_test(pr, m));
    pool.names.push_back(name);
    pool.modules.push_back(m);
    pool.projective.push_back(proj);
  };
  const int n = q->vertex_count();
  if (linear_an(*q)) {
    for (int lo = 0; lo < n; ++lo)
      for (int hi = lo; hi < n; ++hi)
        add("[" + std::to_string(lo + 1) + "," + std::to_string(hi + 1) + "]", interval_module(q, p, lo, hi));
  } else {
    for (int v = 0; v < n; ++v) add("S " + std::to_string(v + 1), s.simples[v]);
    for (int v = 0; v < n; ++v) add("P " + std::to_string(v + 1), s.projectives[v]);
    for (int v = 0; v < n; ++v) add("I " + std::to_string(v + 1), s.injectives[v]);
  }
  return pool;
}

FieldMatrix eps_line(const Options& o, const Representation& m, const Representation& n) {
  const std::size_t d = static_cast<std::size_t>(ext_dim(m, n));
  FieldMatrix row(1, d, m.prime());
  if (o.eps.empty()) {
    if (d > 0) row.set(0, 0, 1);
    return row;
  }
  const auto c = parse_ints(o.eps, "--eps coordinates");
  if (c.size() != d) throw UsageError("--eps needs " + std::to_string(d) + " coordinates");
  for (std::size_t k = 0; k < d; ++k) row.set(0, k, PrimeField(m.prime()).reduce(c[k]));
  return row;
}

std::vector<Side> sides(const std::string& side) {
  if (side == "left") return {Side::Left};
  if (side == "right") return {Side::Right};
  if (side == "both") return {Side::Left, Side::Right};
  throw UsageError("--side must be left, right or both");
}

void label(VerificationReport& r, std::initializer_list<std::pair<const char*, std::string>> names) {
  for (auto& [key, value] : r.inputs)
    for (const auto& [k, spec] : names)
      if (key == k) value = spec + " " + value;
}

int cmd_verify(const Options& o) {
  static const std::vector<std::string> suites{"cdz", "initial", "fibers", "strata", "bilinear", "split", "dim1", "all"};
  if (std::find(suites.begin(), suites.end(), o.suite) == suites.end())
    throw UsageError("unknown suite '" + o.suite + "'");
  const auto q = load_quiver(o.quiver);
  const Context ctx(q, convention(o));
  const auto primes = prime_list(o);
  std::vector<VerificationReport> reports;

  if (o.suite == "bilinear" || o.suite == "all") reports.push_back(verify_bilinear(ctx, o.samples));
  if (o.suite == "all") {
    for (auto p : primes) {
      const Pool pool = suite_pool(q, p);
      const auto s = standard_modules(q, p);
      for (std::size_t a = 0; a < pool.modules.size(); ++a)
        for (std::size_t b = 0; b < pool.modules.size(); ++b) {
          const auto& m = pool.modules[a];
          const auto& n = pool.modules[b];
          auto tag = [&](VerificationReport r) {
            label(r, {{"M", pool.names[a]}, {"N", pool.names[b]}});
            reports.push_back(std::move(r));
          };
          tag(verify_fiber_law(ctx, m, n));
          tag(verify_split_product(ctx, m, n));
          if (!pool.projective[a]) tag(verify_strata_counts(ctx, m, n));
          if (ext_dim(m, n) >= 1) {
            tag(verify_cdz(ctx, m, n));
            tag(verify_dim1_refined(ctx, m, n, eps_line(o, m, n)));
          }
        }
      for (std::size_t a = 0; a < pool.modules.size(); ++a)
        for (int v = 0; v < q->vertex_count(); ++v) {
          if (hom_dim(pool.modules[a], s.injectives[v]) == 0) continue;
          for (Side side : {Side::Left, Side::Right}) {
            auto r = verify_initial(ctx, pool.modules[a], s.injectives[v], side);
            label(r, {{"M", pool.names[a]}, {"I", "I " + std::to_string(v + 1)}});
            reports.push_back(std::move(r));
          }
        }
    }
  } else if (o.suite != "bilinear") {
    for (auto p : primes) {
      if (o.suite == "initial") {
        const auto m = load_module(o.m, q, p);
        const auto inj = load_module(o.inj, q, p);
        for (Side side : sides(o.side)) {
          auto r = verify_initial(ctx, m, inj, side);
          label(r, {{"M", o.m}, {"I", o.inj}});
          reports.push_back(std::move(r));
        }
        continue;
      }
      const auto m = load_module(o.m, q, p);
      const auto n = load_module(o.n, q, p);
      VerificationReport r;
      if (o.suite == "cdz") r = verify_cdz(ctx, m, n);
      if (o.suite == "fibers") r = verify_fiber_law(ctx, m, n);
      if (o.suite == "strata") r = verify_strata_counts(ctx, m, n);
      if (o.suite == "split") r = verify_split_product(ctx, m, n);
      if (o.suite == "dim1") r = verify_dim1_refined(ctx, m, n, eps_line(o, m, n));
      label(r, {{"M", o.m}, {"N", o.n}});
      reports.push_back(std::move(r));
    }
  }

  auto all = nlohmann::ordered_json::array();
  std::size_t failed = 0;
  const VerificationReport* first_failure = nullptr;
  for (const auto& r : reports) {
    std::string inputs;
    for (const auto& [k, v] : r.inputs) inputs += " " + k + "=" + v;
    std::string ps;
    for (auto p : r.primes) ps += (ps.empty() ? "" : ",") + std::to_string(p);
    std::cout << (r.equal ? "PASS " : "FAIL ") << r.identity << inputs << (ps.empty() ? "" : " p=" + ps) << '\n';
    if (!r.equal && !first_failure) first_failure = &r;
    failed += !r.equal;
    all.push_back(r.to_json());
  }
  std::cout << reports.size() - failed << "/" << reports.size() << " reports pass (" << ctx.convention().to_string()
            << ")\n";
  emit(o, all);
  if (first_failure) {
    std::cerr << "first failure: " << first_failure->identity << '\n';
    for (const auto& d : first_failure->diagnostics) std::cerr << "  " << d << '\n';
    return kFail;
  }
  return kPass;
}

int cmd_interp(const Options& o) {
  const auto primes = prime_list(o);
  const auto q = load_quiver(o.quiver);
  if (o.identity == "gr") {
    const auto e = parse_ints(o.e, "dimension vector");
    const std::string spec = o.module.empty() ? o.m : o.module;
    const auto blueprint = fs::is_regular_file(spec) ? parse_module_text(read_file(spec), *q)
                                                      : blueprint_of(load_module(spec, q, primes.front()));
    const auto poly = counting_polynomial(blueprint, q, e, primes);
    std::cout << poly.poly.to_string("q") << '\n';
    return kPass;
  }
  const Context ctx(q, convention(o));
  std::function<IdentitySides(std::uint32_t)> runner;
  if (o.identity == "cdz") {
    runner = [&](std::uint32_t p) { return cdz_sides(ctx, load_module(o.m, q, p), load_module(o.n, q, p)); };
  } else if (o.identity == "initial") {
    const auto s = sides(o.side);
    if (s.size() != 1) throw UsageError("interp initial needs --side left or right");
    runner = [&](std::uint32_t p) { return initial_sides(ctx, load_module(o.m, q, p), load_module(o.inj, q, p), s[0]); };
  } else {
    throw UsageError("interp identity must be cdz, initial or gr");
  }
  const auto report = interp_motivic(runner, primes);
  for (const auto& t : report.terms)
    std::cout << "X^" << to_string(t.alpha) << ": " << t.lhs << " | " << t.rhs << (t.equal ? "" : "  MISMATCH")
              << (t.integral ? "" : " non-integral") << (t.consistent ? "" : " inconsistent") << '\n';
  std::cout << (report.equal ? "PASS" : "FAIL") << " motivic " << o.identity << '\n';
  emit(o, report.to_json());
  return report.equal ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qcc: quantum cluster characters of acyclic quivers over prime fields"};
  app.require_subcommand(1);
  Options o;

  auto add_quiver = [&](CLI::App* c) { c->add_option("--quiver", o.quiver, "quiver file or preset (a2, a4, kronecker)"); };
  auto add_convention = [&](CLI::App* c) {
    c->add_option("--sigma", o.sigma, "override the calibrated sign (+1 or -1)")->check(CLI::IsMember({-1, 1}));
    c->add_option("--prefactor", o.prefactor, "override the prefactor reading (q or t)")->check(CLI::IsMember({"q", "t"}));
  };

  auto* chr = app.add_subcommand("char", "print a quantum cluster character");
  add_quiver(chr);
  add_convention(chr);
  chr->add_option("--module", o.module, "module: file, or S/P/I specs joined by '+'")->required();
  chr->add_option("--prime", o.prime, "field size");
  chr->add_option("--shift", o.shift, "-1: the injective module as I[-1]; 1: the projective module as P[1]");
  chr->add_option("--shifted", o.shifted, "add a shifted summand: injective I[-1] or projective P[1]");
  chr->add_option("--out", o.out, "JSON output path");

  auto* gr = app.add_subcommand("gr-count", "count points of a quiver Grassmannian");
  add_quiver(gr);
  gr->add_option("--module", o.module)->required();
  gr->add_option("--e", o.e, "dimension vector, comma separated")->required();
  gr->add_option("--prime", o.prime);

  auto* cal = app.add_subcommand("calibrate", "fix the sign and prefactor conventions on the A2 probes");
  add_quiver(cal);
  cal->add_option("--primes", o.primes)->delimiter(',');

  auto* ver = app.add_subcommand("verify", "run an identity suite");
  ver->add_option("suite", o.suite, "cdz|initial|fibers|strata|bilinear|split|dim1|all")->required();
  add_quiver(ver);
  add_convention(ver);
  ver->add_option("--M", o.m);
  ver->add_option("--N", o.n);
  ver->add_option("--I", o.inj);
  ver->add_option("--primes", o.primes)->delimiter(',');
  ver->add_option("--prime", o.prime);
  ver->add_option("--side", o.side, "left, right or both");
  ver->add_option("--eps", o.eps, "coordinates of the extension spanning V (dim1)");
  ver->add_option("--samples", o.samples, "samples for the bilinear suite");
  ver->add_option("--out", o.out, "JSON output path");

  auto* itp = app.add_subcommand("interp", "interpolate an identity across primes");
  itp->add_option("identity", o.identity, "cdz, initial or gr");
  add_quiver(itp);
  add_convention(itp);
  itp->add_option("--M", o.m);
  itp->add_option("--N", o.n);
  itp->add_option("--I", o.inj);
  itp->add_option("--module", o.module);
  itp->add_option("--e", o.e);
  itp->add_option("--side", o.side);
  itp->add_option("--primes", o.primes)->delimiter(',')->required();
  itp->add_option("--out", o.out, "JSON output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kError;
  }

  try {
    if (*chr) return cmd_char(o);
    if (*gr) return cmd_gr_count(o);
    if (*cal) return cmd_calibrate(o);
    if (*ver) return cmd_verify(o);
    if (*itp) return cmd_interp(o);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kError;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << '\n';
    return kError;
  } catch (const NoCompatibleLambda& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  } catch (const CalibrationError& e) {
    std::cerr << e.what();
    return kFail;
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
  return kError;
}
