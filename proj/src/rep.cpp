#include "qcc/rep.hpp"

#include <random>
#include <sstream>

#include "qcc/errors.hpp"

namespace qcc {

Representation::Representation(QuiverPtr quiver, std::uint32_t p, DimVector dims, std::vector<FieldMatrix> maps)
    : quiver_(std::move(quiver)), p_(p), dims_(std::move(dims)), maps_(std::move(maps)) {
  if (!quiver_) throw UsageError("representation without quiver");
  if (static_cast<int>(dims_.size()) != quiver_->vertex_count()) throw UsageError("dimension vector length mismatch");
  if (maps_.size() != quiver_->arrows().size()) throw UsageError("one matrix per arrow required");
  for (auto d : dims_)
    if (d < 0) throw UsageError("negative dimension");
  for (std::size_t a = 0; a < maps_.size(); ++a) {
    const auto [s, t] = quiver_->arrows()[a];
    if (maps_[a].rows() != dim(t) || maps_[a].cols() != dim(s))
      throw UsageError("arrow " + std::to_string(a + 1) + " matrix has shape " + std::to_string(maps_[a].rows()) + "x" +
                       std::to_string(maps_[a].cols()) + ", expected " + std::to_string(dim(t)) + "x" +
                       std::to_string(dim(s)));
    if (maps_[a].prime() != p_) throw UsageError("field mismatch in representation");
  }
}

Representation Representation::zero(QuiverPtr quiver, std::uint32_t p) {
  const auto& arrows = quiver->arrows();
  DimVector dims(static_cast<std::size_t>(quiver->vertex_count()), 0);
  std::vector<FieldMatrix> maps(arrows.size(), FieldMatrix(0, 0, p));
  return Representation(std::move(quiver), p, std::move(dims), std::move(maps));
}

long long Representation::total_dim() const {
  long long s = 0;
  for (auto d : dims_) s += d;
  return s;
}

FieldMatrix Representation::path_map(const Path& path) const {
  FieldMatrix m = FieldMatrix::identity(dim(path.source), p_);
  for (int a : path.arrows) m = maps_[a] * m;
  return m;
}

std::string Representation::to_text() const {
  std::ostringstream os;
  os << "dim";
  for (auto d : dims_) os << ' ' << d;
  os << '\n';
  for (std::size_t a = 0; a < maps_.size(); ++a) {
    const auto& m = maps_[a];
    os << "map " << a + 1 << ' ' << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m(r, c);
      os << '\n';
    }
  }
  return os.str();
}

bool ModuleMap::is_zero() const {
  for (const auto& c : components)
    if (!c.is_zero()) return false;
  return true;
}

bool is_module_map(const Representation& src, const Representation& dst, const ModuleMap& f) {
  const int n = src.quiver().vertex_count();
  if (static_cast<int>(f.components.size()) != n) return false;
  for (int v = 0; v < n; ++v)
    if (f.at(v).rows() != dst.dim(v) || f.at(v).cols() != src.dim(v)) return false;
  const auto& arrows = src.quiver().arrows();
  for (std::size_t a = 0; a < arrows.size(); ++a) {
    const auto [s, t] = arrows[a];
    if (!(dst.map(static_cast<int>(a)) * f.at(s) == f.at(t) * src.map(static_cast<int>(a)))) return false;
  }
  return true;
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  ModuleMap h;
  for (std::size_t v = 0; v < f.components.size(); ++v) h.components.push_back(g.components[v] * f.components[v]);
  return h;
}

ModuleMap identity_map(const Representation& m) {
  ModuleMap f;
  for (int v = 0; v < m.quiver().vertex_count(); ++v) f.components.push_back(FieldMatrix::identity(m.dim(v), m.prime()));
  return f;
}

ModuleMap zero_map(const Representation& src, const Representation& dst) {
  ModuleMap f;
  for (int v = 0; v < src.quiver().vertex_count(); ++v) f.components.emplace_back(dst.dim(v), src.dim(v), src.prime());
  return f;
}

ModuleMap linear_combination(const std::vector<ModuleMap>& basis, const std::vector<Scalar>& coeffs,
                             const Representation& src, const Representation& dst) {
  if (basis.size() != coeffs.size()) throw UsageError("coefficient count does not match basis size");
  ModuleMap f = zero_map(src, dst);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (coeffs[k] == 0) continue;
    for (std::size_t v = 0; v < f.components.size(); ++v)
      f.components[v] = f.components[v] + basis[k].components[v].scaled(coeffs[k]);
  }
  return f;
}

std::vector<Scalar> flatten(const ModuleMap& f) {
  std::vector<Scalar> out;
  for (const auto& c : f.components) out.insert(out.end(), c.data().begin(), c.data().end());
  return out;
}

std::vector<ModuleMap> hom_basis(const Representation& m, const Representation& n) {
  if (m.prime() != n.prime()) throw UsageError("hom_basis: field mismatch");
  const auto& q = m.quiver();
  const int nv = q.vertex_count();
  const std::uint32_t p = m.prime();
  std::vector<std::size_t> offset(nv + 1, 0);
  for (int v = 0; v < nv; ++v) offset[v + 1] = offset[v] + n.dim(v) * m.dim(v);
  const std::size_t unknowns = offset[nv];
  std::size_t equations = 0;
  for (const auto& a : q.arrows()) equations += n.dim(a.target) * m.dim(a.source);

  // variable (v, r, c) is phi_v(r, c)
  FieldMatrix sys(equations, unknowns, p);
  std::size_t row = 0;
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    const auto [i, j] = q.arrows()[a];
    const auto& na = n.map(static_cast<int>(a));
    const auto& ma = m.map(static_cast<int>(a));
    for (std::size_t r = 0; r < n.dim(j); ++r)
      for (std::size_t c = 0; c < m.dim(i); ++c, ++row) {
        // (N_a phi_i)(r,c) - (phi_j M_a)(r,c)
        for (std::size_t k = 0; k < n.dim(i); ++k)
          sys(row, offset[i] + k * m.dim(i) + c) = (sys(row, offset[i] + k * m.dim(i) + c) + na(r, k)) % p;
        for (std::size_t k = 0; k < m.dim(j); ++k) {
          Scalar& x = sys(row, offset[j] + r * m.dim(j) + k);
          x = (x + p - ma(k, c)) % p;
        }
      }
  }
  const FieldMatrix ker = kernel_basis(sys);
  std::vector<ModuleMap> basis;
  for (std::size_t b = 0; b < ker.cols(); ++b) {
    ModuleMap f;
    for (int v = 0; v < nv; ++v) {
      FieldMatrix comp(n.dim(v), m.dim(v), p);
      for (std::size_t r = 0; r < n.dim(v); ++r)
        for (std::size_t c = 0; c < m.dim(v); ++c) comp(r, c) = ker(offset[v] + r * m.dim(v) + c, b);
      f.components.push_back(std::move(comp));
    }
    basis.push_back(std::move(f));
  }
  return basis;
}

long long hom_dim(const Representation& m, const Representation& n) {
  return static_cast<long long>(hom_basis(m, n).size());
}

long long ext_dim(const Representation& m, const Representation& n) {
  const long long e = hom_dim(m, n) - euler_form(euler_matrix(m.quiver()), m.dims(), n.dims());
  if (e < 0) throw InternalError("negative Ext dimension");
  return e;
}

Representation ModuleBlueprint::reduce(const QuiverPtr& quiver, std::uint32_t p) const {
  std::vector<FieldMatrix> mats;
  for (std::size_t a = 0; a < maps.size(); ++a) {
    const auto [s, t] = quiver->arrows()[a];
    mats.push_back(FieldMatrix::from_rows(maps[a], static_cast<std::size_t>(dims[s]), p));
    if (mats.back().rows() != static_cast<std::size_t>(dims[t]))
      throw UsageError("arrow " + std::to_string(a + 1) + " has the wrong number of rows");
  }
  return Representation(quiver, p, dims, std::move(mats));
}

ModuleBlueprint parse_module(std::istream& in, const Quiver& quiver) {
  ModuleBlueprint bp;
  const int n = quiver.vertex_count();
  const std::size_t arrow_count = quiver.arrows().size();
  bp.maps.resize(arrow_count);
  std::vector<bool> seen(arrow_count, false);
  std::string line;
  int line_no = 0;
  bool have_dim = false;
  auto next_content = [&](std::istringstream& ls) {
    while (std::getline(in, line)) {
      ++line_no;
      if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      ls = std::istringstream(line);
      return true;
    }
    return false;
  };
  std::istringstream ls;
  while (next_content(ls)) {
    std::string word;
    ls >> word;
    const int col = static_cast<int>(line.find(word)) + 1;
    if (word == "dim") {
      if (have_dim) throw ParseError("duplicate 'dim' line", line_no, col);
      bp.dims.assign(n, 0);
      for (int v = 0; v < n; ++v)
        if (!(ls >> bp.dims[v]) || bp.dims[v] < 0)
          throw ParseError("expected " + std::to_string(n) + " non-negative dimensions", line_no, col);
      std::string extra;
      if (ls >> extra) throw ParseError("too many dimensions", line_no, static_cast<int>(line.find(extra, col)) + 1);
      have_dim = true;
    } else if (word == "map") {
      if (!have_dim) throw ParseError("'map' before 'dim'", line_no, col);
      long long a = 0, r = 0, c = 0;
      if (!(ls >> a >> r >> c)) throw ParseError("expected 'map A r c'", line_no, col);
      if (a < 1 || a > static_cast<long long>(arrow_count)) throw ParseError("arrow index out of range", line_no, col);
      const auto [s, t] = quiver.arrows()[a - 1];
      if (r != bp.dims[t] || c != bp.dims[s])
        throw ParseError("matrix shape " + std::to_string(r) + "x" + std::to_string(c) + " does not match dims " +
                             std::to_string(bp.dims[t]) + "x" + std::to_string(bp.dims[s]),
                         line_no, col);
      if (seen[a - 1]) throw ParseError("duplicate map for arrow " + std::to_string(a), line_no, col);
      seen[a - 1] = true;
      auto& rows = bp.maps[a - 1];
      for (long long i = 0; i < r; ++i) {
        std::istringstream rs;
        if (!next_content(rs)) throw ParseError("unexpected end of input inside matrix", line_no + 1, 1);
        std::vector<long long> row;
        long long x = 0;
        while (rs >> x) row.push_back(x);
        if (!rs.eof()) throw ParseError("non-integer matrix entry", line_no, 1);
        if (static_cast<long long>(row.size()) != c)
          throw ParseError("expected " + std::to_string(c) + " entries, got " + std::to_string(row.size()), line_no, 1);
        rows.push_back(std::move(row));
      }
    } else {
      throw ParseError("unknown keyword '" + word + "'", line_no, col);
    }
  }
  if (!have_dim) throw ParseError("missing 'dim' line", line_no, 1);
  // unspecified maps between nonzero spaces are zero
  for (std::size_t a = 0; a < arrow_count; ++a)
    if (!seen[a]) {
      const auto [s, t] = quiver.arrows()[a];
      bp.maps[a].assign(static_cast<std::size_t>(bp.dims[t]), std::vector<long long>(static_cast<std::size_t>(bp.dims[s]), 0));
    }
  return bp;
}

ModuleBlueprint parse_module_text(const std::string& text, const Quiver& quiver) {
  std::istringstream in(text);
  return parse_module(in, quiver);
}

ModuleBlueprint blueprint_of(const Representation& m) {
  ModuleBlueprint bp;
  bp.dims = m.dims();
  for (const auto& mat : m.maps()) {
    std::vector<std::vector<long long>> rows;
    for (std::size_t r = 0; r < mat.rows(); ++r) {
      auto row = mat.row(r);
      rows.emplace_back(row.begin(), row.end());
    }
    bp.maps.push_back(std::move(rows));
  }
  return bp;
}

Representation simple_module(const QuiverPtr& q, std::uint32_t p, int vertex) {
  DimVector dims(static_cast<std::size_t>(q->vertex_count()), 0);
  dims.at(static_cast<std::size_t>(vertex)) = 1;
  std::vector<FieldMatrix> maps;
  for (const auto& a : q->arrows()) maps.emplace_back(dims[a.target], dims[a.source], p);
  return Representation(q, p, dims, std::move(maps));
}

Representation projective_module(const QuiverPtr& q, std::uint32_t p, int vertex) {
  // basis of (P_i)_v: paths i -> v
  const int n = q->vertex_count();
  DimVector dims(n);
  for (int v = 0; v < n; ++v) dims[v] = static_cast<long long>(q->paths(vertex, v).size());
  std::vector<FieldMatrix> maps;
  for (std::size_t a = 0; a < q->arrows().size(); ++a) {
    const auto [s, t] = q->arrows()[a];
    FieldMatrix m(dims[t], dims[s], p);
    const auto& from = q->paths(vertex, s);
    for (std::size_t c = 0; c < from.size(); ++c) {
      auto ext = from[c].arrows;
      ext.push_back(static_cast<int>(a));
      m(q->path_index(vertex, ext), c) = 1;
    }
    maps.push_back(std::move(m));
  }
  return Representation(q, p, dims, std::move(maps));
}

Representation injective_module(const QuiverPtr& q, std::uint32_t p, int vertex) {
  // basis of (I_i)_v: duals of paths v -> i; entry [delta*, gamma*] = 1 iff (a then delta) = gamma
  const int n = q->vertex_count();
  DimVector dims(n);
  for (int v = 0; v < n; ++v) dims[v] = static_cast<long long>(q->paths(v, vertex).size());
  std::vector<FieldMatrix> maps;
  for (std::size_t a = 0; a < q->arrows().size(); ++a) {
    const auto [s, t] = q->arrows()[a];
    FieldMatrix m(dims[t], dims[s], p);
    const auto& deltas = q->paths(t, vertex);
    for (std::size_t r = 0; r < deltas.size(); ++r) {
      std::vector<int> gamma{static_cast<int>(a)};
      gamma.insert(gamma.end(), deltas[r].arrows.begin(), deltas[r].arrows.end());
      m(r, q->path_index(s, gamma)) = 1;
    }
    maps.push_back(std::move(m));
  }
  return Representation(q, p, dims, std::move(maps));
}

StandardModules standard_modules(const QuiverPtr& q, std::uint32_t p) {
  StandardModules s;
  for (int v = 0; v < q->vertex_count(); ++v) {
    s.simples.push_back(simple_module(q, p, v));
    s.projectives.push_back(projective_module(q, p, v));
    s.injectives.push_back(injective_module(q, p, v));
  }
  return s;
}

DirectSum direct_sum(const QuiverPtr& q, std::uint32_t p, const std::vector<Representation>& parts) {
  const int n = q->vertex_count();
  DimVector dims(n, 0);
  std::vector<DimVector> offsets;
  for (const auto& part : parts) {
    offsets.push_back(dims);
    dims = dims + part.dims();
  }
  std::vector<FieldMatrix> maps;
  for (std::size_t a = 0; a < q->arrows().size(); ++a) {
    const auto [s, t] = q->arrows()[a];
    FieldMatrix m(dims[t], dims[s], p);
    for (std::size_t k = 0; k < parts.size(); ++k) m.set_block(offsets[k][t], offsets[k][s], parts[k].map(static_cast<int>(a)));
    maps.push_back(std::move(m));
  }
  DirectSum out{Representation(q, p, dims, std::move(maps)), offsets, {}, {}};
  for (std::size_t k = 0; k < parts.size(); ++k) {
    ModuleMap inc, proj;
    for (int v = 0; v < n; ++v) {
      FieldMatrix i(dims[v], parts[k].dim(v), p);
      for (std::size_t r = 0; r < parts[k].dim(v); ++r) i(offsets[k][v] + r, r) = 1;
      proj.components.push_back(i.transpose());
      inc.components.push_back(std::move(i));
    }
    out.inclusions.push_back(std::move(inc));
    out.projections.push_back(std::move(proj));
  }
  return out;
}

Representation direct_sum(const Representation& a, const Representation& b) {
  return direct_sum(a.quiver_ptr(), a.prime(), {a, b}).module;
}

KernelData kernel_of(const Representation& src, const ModuleMap& f) {
  const auto& q = src.quiver();
  const std::uint32_t p = src.prime();
  ModuleMap inc;
  DimVector dims;
  for (int v = 0; v < q.vertex_count(); ++v) {
    inc.components.push_back(kernel_basis(f.at(v)));
    dims.push_back(static_cast<long long>(inc.components.back().cols()));
  }
  std::vector<FieldMatrix> maps;
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    const auto [s, t] = q.arrows()[a];
    auto x = solve_matrix(inc.at(t), src.map(static_cast<int>(a)) * inc.at(s));
    if (!x) throw InternalError("kernel is not arrow-stable");
    maps.push_back(std::move(*x));
  }
  return {Representation(src.quiver_ptr(), p, dims, std::move(maps)), std::move(inc)};
}

CokernelData cokernel_of(const Representation& dst, const ModuleMap& f) {
  const auto& q = dst.quiver();
  const std::uint32_t p = dst.prime();
  ModuleMap proj;
  std::vector<FieldMatrix> section;
  DimVector dims;
  for (int v = 0; v < q.vertex_count(); ++v) {
    const FieldMatrix im = row_span(f.at(v).transpose());
    const FieldMatrix comp = complement_rows(im);
    // coordinates w.r.t. the basis [im; comp]; keep the comp part
    auto inv = inverse(vstack(im, comp).transpose());
    if (!inv) throw InternalError("cokernel basis is singular");
    proj.components.push_back(inv->block(im.rows(), 0, comp.rows(), dst.dim(v)));
    section.push_back(comp.transpose());
    dims.push_back(static_cast<long long>(comp.rows()));
  }
  std::vector<FieldMatrix> maps;
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    const auto [s, t] = q.arrows()[a];
    maps.push_back(proj.at(t) * dst.map(static_cast<int>(a)) * section[s]);
  }
  return {Representation(dst.quiver_ptr(), p, dims, std::move(maps)), std::move(proj), std::move(section)};
}

ImageData image_of(const Representation& dst, const ModuleMap& f) {
  const auto& q = dst.quiver();
  ModuleMap inc;
  DimVector dims;
  for (int v = 0; v < q.vertex_count(); ++v) {
    inc.components.push_back(row_span(f.at(v).transpose()).transpose());
    dims.push_back(static_cast<long long>(inc.components.back().cols()));
  }
  std::vector<FieldMatrix> maps;
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    const auto [s, t] = q.arrows()[a];
    auto x = solve_matrix(inc.at(t), dst.map(static_cast<int>(a)) * inc.at(s));
    if (!x) throw InternalError("image is not arrow-stable");
    maps.push_back(std::move(*x));
  }
  return {Representation(dst.quiver_ptr(), dst.prime(), dims, std::move(maps)), std::move(inc)};
}

ProjectiveSum projective_sum(const QuiverPtr& q, std::uint32_t p, std::vector<int> summands) {
  std::vector<Representation> parts;
  for (int v : summands) parts.push_back(projective_module(q, p, v));
  DirectSum s = direct_sum(q, p, parts);
  return {std::move(summands), std::move(s)};
}

InjectiveSum injective_sum(const QuiverPtr& q, std::uint32_t p, std::vector<int> summands) {
  std::vector<Representation> parts;
  for (int v : summands) parts.push_back(injective_module(q, p, v));
  DirectSum s = direct_sum(q, p, parts);
  return {std::move(summands), std::move(s)};
}

namespace {

// Component at every vertex u of the map P_i -> M, x in M_i.
FieldMatrix projective_component(const Representation& m, int vertex, const std::vector<Scalar>& x, int u) {
  const auto& paths = m.quiver().paths(vertex, u);
  FieldMatrix out(m.dim(u), paths.size(), m.prime());
  const FieldMatrix xv = FieldMatrix::column_vector(x, m.prime());
  for (std::size_t c = 0; c < paths.size(); ++c) out.set_block(0, c, m.path_map(paths[c]) * xv);
  return out;
}

FieldMatrix injective_component(const Representation& m, int vertex, const std::vector<Scalar>& functional, int u) {
  const auto& paths = m.quiver().paths(u, vertex);
  FieldMatrix out(paths.size(), m.dim(u), m.prime());
  const FieldMatrix lv = FieldMatrix::row_vector(functional, m.prime());
  for (std::size_t r = 0; r < paths.size(); ++r) out.set_block(r, 0, lv * m.path_map(paths[r]));
  return out;
}

}  // namespace

ModuleMap map_from_projective(const Representation& m, int vertex, const std::vector<Scalar>& x) {
  if (x.size() != m.dim(vertex)) throw UsageError("element has wrong length");
  ModuleMap f;
  for (int u = 0; u < m.quiver().vertex_count(); ++u) f.components.push_back(projective_component(m, vertex, x, u));
  return f;
}

ModuleMap map_to_injective(const Representation& m, int vertex, const std::vector<Scalar>& functional) {
  if (functional.size() != m.dim(vertex)) throw UsageError("functional has wrong length");
  ModuleMap f;
  for (int u = 0; u < m.quiver().vertex_count(); ++u) f.components.push_back(injective_component(m, vertex, functional, u));
  return f;
}

ModuleMap map_from_projective_sum(const Representation& m, const ProjectiveSum& src,
                                  const std::vector<std::vector<Scalar>>& elements) {
  if (elements.size() != src.summands.size()) throw UsageError("one element per projective summand required");
  ModuleMap f = zero_map(src.module(), m);
  for (std::size_t k = 0; k < elements.size(); ++k)
    for (int u = 0; u < m.quiver().vertex_count(); ++u)
      f.components[u].set_block(0, src.sum.offsets[k][u], projective_component(m, src.summands[k], elements[k], u));
  return f;
}

ModuleMap map_to_injective_sum(const Representation& m, const InjectiveSum& dst,
                               const std::vector<std::vector<Scalar>>& functionals) {
  if (functionals.size() != dst.summands.size()) throw UsageError("one functional per injective summand required");
  ModuleMap f = zero_map(m, dst.module());
  for (std::size_t k = 0; k < functionals.size(); ++k)
    for (int u = 0; u < m.quiver().vertex_count(); ++u)
      f.components[u].set_block(dst.sum.offsets[k][u], 0, injective_component(m, dst.summands[k], functionals[k], u));
  return f;
}

namespace {

std::vector<int> concat(const std::vector<int>& first, const std::vector<int>& second) {
  std::vector<int> r = first;
  r.insert(r.end(), second.begin(), second.end());
  return r;
}

}  // namespace

ModuleMap nakayama_map(const ProjectiveSum& src, const ProjectiveSum& dst, const ModuleMap& f) {
  const Quiver& q = src.module().quiver();
  const std::uint32_t p = src.module().prime();
  InjectiveSum isrc = injective_sum(src.module().quiver_ptr(), p, src.summands);
  InjectiveSum idst = injective_sum(src.module().quiver_ptr(), p, dst.summands);
  ModuleMap out = zero_map(isrc.module(), idst.module());
  for (std::size_t l = 0; l < src.summands.size(); ++l) {
    const int j = src.summands[l];
    for (std::size_t k = 0; k < dst.summands.size(); ++k) {
      const int i = dst.summands[k];
      // block P_j -> P_i is sum_gamma c_gamma phi_gamma, read off from the image of e_j
      const auto& gammas = q.paths(i, j);
      for (std::size_t g = 0; g < gammas.size(); ++g) {
        const Scalar c = f.at(j)(dst.sum.offsets[k][j] + g, src.sum.offsets[l][j]);
        if (c == 0) continue;
        // nu(phi_gamma): I_j -> I_i, entry [rho*, delta*] = 1 iff (rho then gamma) = delta
        for (int v = 0; v < q.vertex_count(); ++v) {
          const auto& rhos = q.paths(v, i);
          for (std::size_t r = 0; r < rhos.size(); ++r) {
            const int d = q.path_index(v, concat(rhos[r].arrows, gammas[g].arrows));
            Scalar& x = out.components[v](idst.sum.offsets[k][v] + r, isrc.sum.offsets[l][v] + d);
            x = (x + c) % p;
          }
        }
      }
    }
  }
  return out;
}

ModuleMap inverse_nakayama_map(const InjectiveSum& src, const InjectiveSum& dst, const ModuleMap& g) {
  const Quiver& q = src.module().quiver();
  const std::uint32_t p = src.module().prime();
  ProjectiveSum psrc = projective_sum(src.module().quiver_ptr(), p, src.summands);
  ProjectiveSum pdst = projective_sum(src.module().quiver_ptr(), p, dst.summands);
  ModuleMap out = zero_map(psrc.module(), pdst.module());
  for (std::size_t l = 0; l < src.summands.size(); ++l) {
    const int v = src.summands[l];
    for (std::size_t k = 0; k < dst.summands.size(); ++k) {
      const int w = dst.summands[k];
      // block I_v -> I_w: c_gamma = (eval at trivial path of I_w) applied to gamma*, gamma: w -> v
      const auto& gammas = q.paths(w, v);
      for (std::size_t gi = 0; gi < gammas.size(); ++gi) {
        const Scalar c = g.at(w)(dst.sum.offsets[k][w], src.sum.offsets[l][w] + gi);
        if (c == 0) continue;
        // phi_gamma: P_v -> P_w, delta |-> gamma then delta
        for (int u = 0; u < q.vertex_count(); ++u) {
          const auto& deltas = q.paths(v, u);
          for (std::size_t d = 0; d < deltas.size(); ++d) {
            const int r = q.path_index(w, concat(gammas[gi].arrows, deltas[d].arrows));
            Scalar& x = out.components[u](pdst.sum.offsets[k][u] + r, psrc.sum.offsets[l][u] + d);
            x = (x + c) % p;
          }
        }
      }
    }
  }
  return out;
}

ProjectiveCover projective_cover(const Representation& m) {
  const Quiver& q = m.quiver();
  const std::uint32_t p = m.prime();
  std::vector<int> summands;
  std::vector<std::vector<Scalar>> generators;
  for (int v = 0; v < q.vertex_count(); ++v) {
    FieldMatrix rad = zero_subspace(m.dim(v), p);
    for (int a : q.arrows_into(v)) rad = subspace_sum(rad, row_span(m.map(a).transpose()));
    const FieldMatrix top = complement_rows(rad);
    for (std::size_t r = 0; r < top.rows(); ++r) {
      summands.push_back(v);
      generators.push_back(top.row(r));
    }
  }
  ProjectiveSum cover = projective_sum(m.quiver_ptr(), p, summands);
  ModuleMap proj = map_from_projective_sum(m, cover, generators);
  return {std::move(cover), std::move(proj)};
}

InjectiveEnvelope injective_envelope(const Representation& m) {
  const Quiver& q = m.quiver();
  const std::uint32_t p = m.prime();
  std::vector<int> summands;
  std::vector<std::vector<Scalar>> functionals;
  for (int v = 0; v < q.vertex_count(); ++v) {
    FieldMatrix outgoing(0, m.dim(v), p);
    for (int a : q.arrows_out_of(v)) outgoing = vstack(outgoing, m.map(a));
    const FieldMatrix socle = row_span(kernel_basis(outgoing).transpose());
    if (socle.rows() == 0) continue;
    // functionals dual to the socle basis, vanishing on a complement
    auto inv = inverse(vstack(socle, complement_rows(socle)).transpose());
    if (!inv) throw InternalError("socle basis extension is singular");
    for (std::size_t k = 0; k < socle.rows(); ++k) {
      summands.push_back(v);
      functionals.push_back(inv->row(k));
    }
  }
  InjectiveSum env = injective_sum(m.quiver_ptr(), p, summands);
  ModuleMap inc = map_to_injective_sum(m, env, functionals);
  return {std::move(env), std::move(inc)};
}

DimVector projective_multiplicities(const IntMatrix& euler, const DimVector& dims) { return star_right(euler, dims); }
DimVector injective_multiplicities(const IntMatrix& euler, const DimVector& dims) { return star_left(euler, dims); }

namespace {

bool any_nonzero(const DimVector& v) {
  for (auto x : v)
    if (x != 0) return true;
  return false;
}

}  // namespace

Representation tau(const Representation& m) {
  const ProjectiveCover c0 = projective_cover(m);
  const KernelData k = kernel_of(c0.cover.module(), c0.projection);
  const ProjectiveCover c1 = projective_cover(k.module);
  const ModuleMap f = compose(k.inclusion, c1.projection);  // P1 -> P0
  const ModuleMap nu_f = nakayama_map(c1.cover, c0.cover, f);
  const InjectiveSum nu_p1 = injective_sum(m.quiver_ptr(), m.prime(), c1.cover.summands);
  Representation result = kernel_of(nu_p1.module(), nu_f).module;

  const IntMatrix euler = euler_matrix(m.quiver());
  // Phi^{-1} = -(E^T)^{-1} E sends dim tau X back to dim X on the non-projective part
  const IntMatrix phi_inv = (inverse_unipotent(euler.transpose()) * euler).scaled(-1);
  const DimVector proj_part = m.dims() - phi_inv.apply(result.dims());
  const DimVector mult = projective_multiplicities(euler, proj_part);
  if (any_nonzero(mult))
    throw PreconditionError("tau: module has a projective summand with multiplicities " + to_string(mult));
  return result;
}

TauInverseData tau_inverse_data(const Representation& x) {
  InjectiveEnvelope env0 = injective_envelope(x);
  const CokernelData c = cokernel_of(env0.envelope.module(), env0.inclusion);
  InjectiveEnvelope env1 = injective_envelope(c.module);
  ModuleMap g = compose(env1.inclusion, c.projection);
  ModuleMap nu_inv_g = inverse_nakayama_map(env0.envelope, env1.envelope, g);
  ProjectiveSum p0 = projective_sum(x.quiver_ptr(), x.prime(), env0.envelope.summands);
  ProjectiveSum p1 = projective_sum(x.quiver_ptr(), x.prime(), env1.envelope.summands);
  CokernelData result = cokernel_of(p1.module(), nu_inv_g);
  return {std::move(env0), std::move(env1), std::move(g), std::move(p0), std::move(p1), std::move(nu_inv_g),
          std::move(result)};
}

Representation tau_inverse(const Representation& m) {
  TauInverseData d = tau_inverse_data(m);
  const IntMatrix euler = euler_matrix(m.quiver());
  const DimVector inj_part = m.dims() - coxeter_matrix(euler).apply(d.module().dims());
  const DimVector mult = injective_multiplicities(euler, inj_part);
  if (any_nonzero(mult))
    throw PreconditionError("tau_inverse: module has an injective summand with multiplicities " + to_string(mult));
  return d.module();
}

namespace {

// Row of the evaluation functional of summand k at its own vertex.
std::vector<Scalar> summand_functional(const InjectiveSum& s, std::size_t k, const FieldMatrix& component) {
  return component.row(static_cast<std::size_t>(s.sum.offsets[k][s.summands[k]]));
}

// Lift into an injective sum: the map T -> dst whose summand functionals are given by lambda_k,
// where each lambda_k on target(along)_w must factor as mu_k * along_w.
ModuleMap lift_into_injective(const Representation& t, const ModuleMap& along, const InjectiveSum& dst,
                              const std::vector<std::vector<Scalar>>& lambdas) {
  std::vector<std::vector<Scalar>> mus;
  for (std::size_t k = 0; k < dst.summands.size(); ++k) {
    const int w = dst.summands[k];
    auto mu = solve(along.at(w).transpose(), lambdas[k]);
    if (!mu) throw InternalError("functional does not extend along the copresentation");
    mus.push_back(std::move(*mu));
  }
  return map_to_injective_sum(t, dst, mus);
}

}  // namespace

ModuleMap tau_inverse_map(const Representation& x, const TauInverseData& xd, const Representation& y,
                          const TauInverseData& yd, const ModuleMap& h) {
  if (!is_module_map(x, y, h)) throw UsageError("tau_inverse_map: not a module map");
  const auto& i0y = yd.env0.envelope;
  const auto& i1y = yd.env1.envelope;
  std::vector<std::vector<Scalar>> l0;
  for (std::size_t k = 0; k < i0y.summands.size(); ++k) {
    const int w = i0y.summands[k];
    const auto eps = FieldMatrix::row_vector(summand_functional(i0y, k, yd.env0.inclusion.at(w)), x.prime());
    l0.push_back((eps * h.at(w)).row(0));
  }
  const ModuleMap q0 = lift_into_injective(xd.env0.envelope.module(), xd.env0.inclusion, i0y, l0);
  const ModuleMap gq0 = compose(yd.g, q0);
  std::vector<std::vector<Scalar>> l1;
  for (std::size_t k = 0; k < i1y.summands.size(); ++k) {
    const int w = i1y.summands[k];
    l1.push_back(FieldMatrix::row_vector(gq0.at(w).row(static_cast<std::size_t>(i1y.sum.offsets[k][w])), x.prime()).row(0));
  }
  const ModuleMap q1 = lift_into_injective(xd.env1.envelope.module(), xd.g, i1y, l1);
  const ModuleMap p1_map = inverse_nakayama_map(xd.env1.envelope, i1y, q1);
  ModuleMap out;
  for (int v = 0; v < x.quiver().vertex_count(); ++v)
    out.components.push_back(yd.result.projection.at(v) * p1_map.at(v) * xd.result.section[v]);
  if (!is_module_map(xd.module(), yd.module(), out)) throw InternalError("tau_inverse_map produced a non-module map");
  return out;
}

InjectiveSplit injective_split(const Representation& x, const IntMatrix& euler) {
  Representation a = tau_inverse_data(x).module();
  const DimVector tau_a = coxeter_matrix(euler).apply(a.dims());
  DimVector i = x.dims() - tau_a;
  DimVector mult = injective_multiplicities(euler, i);
  for (auto v : mult)
    if (v < 0) throw InternalError("injective part " + to_string(i) + " is not a sum of injective dimension vectors");
  return {std::move(a), std::move(i), std::move(mult)};
}

std::optional<ModuleMap> find_isomorphism(const Representation& m, const Representation& n) {
  if (m.dims() != n.dims() || m.prime() != n.prime()) return std::nullopt;
  if (hom_dim(m, m) != hom_dim(n, m) || hom_dim(m, n) != hom_dim(n, n)) return std::nullopt;
  const auto basis = hom_basis(m, n);
  const std::uint32_t p = m.prime();
  auto try_coeffs = [&](const std::vector<Scalar>& c) -> std::optional<ModuleMap> {
    ModuleMap f = linear_combination(basis, c, m, n);
    for (const auto& comp : f.components)
      if (rank(comp) != comp.rows()) return std::nullopt;
    return f;
  };
  constexpr std::uint64_t kBudget = 200;
  if (basis.size() < 64 && ipow(p, static_cast<unsigned>(basis.size())) <= kBudget) {
    for (std::uint64_t idx = 0; idx < ipow(p, static_cast<unsigned>(basis.size())); ++idx)
      if (auto f = try_coeffs(coefficients_from_index(idx, basis.size(), p))) return f;
    return std::nullopt;
  }
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<Scalar> dist(0, p - 1);
  for (std::uint64_t t = 0; t < kBudget; ++t) {
    std::vector<Scalar> c(basis.size());
    for (auto& x : c) x = dist(rng);
    if (auto f = try_coeffs(c)) return f;
  }
  return std::nullopt;
}

bool iso_test(const Representation& m, const Representation& n) { return find_isomorphism(m, n).has_value(); }

}  // namespace qcc

namespace qcc {

Representation interval_module(const QuiverPtr& q, std::uint32_t p, int lo, int hi) {
  const int n = q->vertex_count();
  if (lo < 0 || hi >= n || lo > hi) throw UsageError("interval out of range");
  DimVector dims(n, 0);
  for (int v = lo; v <= hi; ++v) dims[v] = 1;
  std::vector<FieldMatrix> maps;
  for (const auto& a : q->arrows()) {
    if (a.target != a.source + 1) throw UsageError("interval modules need a linearly oriented quiver");
    FieldMatrix m(dims[a.target], dims[a.source], p);
    if (dims[a.source] && dims[a.target]) m(0, 0) = 1;
    maps.push_back(std::move(m));
  }
  return Representation(q, p, dims, std::move(maps));
}

}  // namespace qcc
