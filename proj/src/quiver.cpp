#include "qcc/quiver.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <sstream>

#include "qcc/errors.hpp"

namespace qcc {

namespace {

void require_same_length(const DimVector& a, const DimVector& b) {
  if (a.size() != b.size()) throw UsageError("dimension vector length mismatch");
}

}  // namespace

DimVector operator+(const DimVector& a, const DimVector& b) {
  require_same_length(a, b);
  DimVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

DimVector operator-(const DimVector& a, const DimVector& b) {
  require_same_length(a, b);
  DimVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

DimVector operator-(const DimVector& a) {
  DimVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

std::string to_string(const DimVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw UsageError("integer matrix product shape mismatch");
  IntMatrix out(rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k)
      for (std::size_t c = 0; c < o.cols_; ++c) out(r, c) += (*this)(r, k) * o(k, c);
  return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw UsageError("integer matrix sum shape mismatch");
  IntMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += o.data_[i];
  return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const { return *this + o.scaled(-1); }

IntMatrix IntMatrix::scaled(long long c) const {
  IntMatrix out = *this;
  for (auto& x : out.data_) x *= c;
  return out;
}

DimVector IntMatrix::apply(const DimVector& v) const {
  if (v.size() != cols_) throw UsageError("vector length does not match matrix");
  DimVector r(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
  return r;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ",[" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? "," : "") << (*this)(r, c);
    os << ']';
  }
  os << ']';
  return os.str();
}

Quiver::Quiver(int vertex_count, std::vector<Arrow> arrows, std::string name)
    : n_(vertex_count), arrows_(std::move(arrows)), name_(std::move(name)), in_(vertex_count), out_(vertex_count) {
  if (n_ <= 0) throw UsageError("quiver needs at least one vertex");
  for (std::size_t a = 0; a < arrows_.size(); ++a) {
    const auto [s, t] = arrows_[a];
    if (s < 0 || s >= n_ || t < 0 || t >= n_) throw UsageError("arrow endpoint out of range");
    out_[s].push_back(static_cast<int>(a));
    in_[t].push_back(static_cast<int>(a));
  }
  // Kahn's algorithm, smallest label first for determinism.
  std::vector<int> indeg(n_, 0);
  for (const auto& a : arrows_) ++indeg[a.target];
  std::vector<int> ready;
  for (int v = 0; v < n_; ++v)
    if (indeg[v] == 0) ready.push_back(v);
  while (!ready.empty()) {
    auto it = std::min_element(ready.begin(), ready.end());
    int v = *it;
    ready.erase(it);
    topo_.push_back(v);
    for (int a : out_[v])
      if (--indeg[arrows_[a].target] == 0) ready.push_back(arrows_[a].target);
  }
  if (static_cast<int>(topo_.size()) != n_) throw UsageError("quiver has an oriented cycle");

  paths_.assign(n_, std::vector<std::vector<Path>>(n_));
  for (int s = 0; s < n_; ++s) {
    // breadth-first over path length; finite because the quiver is acyclic
    std::vector<Path> frontier{Path{s, s, {}}};
    while (!frontier.empty()) {
      std::vector<Path> next;
      for (auto& p : frontier) {
        for (int a : out_[p.target]) {
          Path q = p;
          q.arrows.push_back(a);
          q.target = arrows_[a].target;
          next.push_back(std::move(q));
        }
        path_lookup_[{s, p.arrows}] = static_cast<int>(paths_[s][p.target].size());
        paths_[s][p.target].push_back(std::move(p));
      }
      frontier = std::move(next);
    }
  }
}

int Quiver::path_index(int from, const std::vector<int>& arrows) const {
  auto it = path_lookup_.find({from, arrows});
  return it == path_lookup_.end() ? -1 : it->second;
}

int Quiver::path_target(int from, const std::vector<int>& arrows) const {
  int v = from;
  for (int a : arrows) {
    if (arrows_[a].source != v) return -1;
    v = arrows_[a].target;
  }
  return v;
}

Quiver parse_quiver(std::istream& in, std::string name) {
  std::string line;
  int line_no = 0;
  int n = -1;
  std::vector<Arrow> arrows;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    const int col = static_cast<int>(line.find(word)) + 1;
    if (word == "vertices") {
      if (n != -1) throw ParseError("duplicate 'vertices' line", line_no, col);
      if (!(ls >> n) || n <= 0) throw ParseError("expected a positive vertex count", line_no, col);
    } else if (word == "arrow") {
      if (n == -1) throw ParseError("'arrow' before 'vertices'", line_no, col);
      int s = 0, t = 0;
      if (!(ls >> s >> t)) throw ParseError("expected 'arrow S T'", line_no, col);
      if (s < 1 || s > n || t < 1 || t > n) throw ParseError("arrow endpoint out of range", line_no, col);
      arrows.push_back({s - 1, t - 1});
    } else {
      throw ParseError("unknown keyword '" + word + "'", line_no, col);
    }
    std::string extra;
    if (ls >> extra) throw ParseError("trailing token '" + extra + "'", line_no, static_cast<int>(line.find(extra, col)) + 1);
  }
  if (n == -1) throw ParseError("missing 'vertices' line", line_no, 1);
  try {
    return Quiver(n, std::move(arrows), std::move(name));
  } catch (const UsageError& e) {
    throw ParseError(e.what(), line_no, 1);
  }
}

Quiver parse_quiver_text(const std::string& text, std::string name) {
  std::istringstream in(text);
  return parse_quiver(in, std::move(name));
}

bool is_preset_quiver(const std::string& name) { return name == "a2" || name == "a4" || name == "kronecker"; }

Quiver preset_quiver(const std::string& name) {
  if (name == "a2") return Quiver(2, {{0, 1}}, "a2");
  if (name == "a4") return Quiver(4, {{0, 1}, {1, 2}, {2, 3}}, "a4");
  if (name == "kronecker") return Quiver(2, {{0, 1}, {0, 1}}, "kronecker");
  throw UsageError("unknown preset quiver '" + name + "'");
}

IntMatrix euler_matrix(const Quiver& q) {
  const auto n = static_cast<std::size_t>(q.vertex_count());
  IntMatrix e = IntMatrix::identity(n);
  for (const auto& a : q.arrows()) e(a.source, a.target) -= 1;
  return e;
}

IntMatrix skew_matrix(const IntMatrix& euler) { return euler - euler.transpose(); }

IntMatrix inverse_unipotent(const IntMatrix& euler) {
  // E = I - A with A nilpotent, so E^{-1} = sum_k A^k
  const std::size_t n = euler.rows();
  IntMatrix a = IntMatrix::identity(n) - euler;
  IntMatrix power = IntMatrix::identity(n);
  IntMatrix sum = IntMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    power = power * a;
    sum = sum + power;
  }
  if (!(sum * euler == IntMatrix::identity(n))) throw InternalError("Euler matrix is not unipotent");
  return sum;
}

IntMatrix coxeter_matrix(const IntMatrix& euler) {
  return (inverse_unipotent(euler) * euler.transpose()).scaled(-1);
}

long long euler_form(const IntMatrix& euler, const DimVector& m, const DimVector& n) {
  if (m.size() != euler.rows() || n.size() != euler.cols()) throw UsageError("Euler form: vector length mismatch");
  long long s = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < n.size(); ++j) s += m[i] * euler(i, j) * n[j];
  return s;
}

DimVector star_right(const IntMatrix& euler, const DimVector& e) { return euler.transpose().apply(e); }
DimVector star_left(const IntMatrix& euler, const DimVector& e) { return euler.apply(e); }

long long EulerData::lambda2_form(const DimVector& a, const DimVector& b) const { return euler_form(lambda2, a, b); }

namespace {

using boost::multiprecision::cpp_rational;
using RationalMatrix = std::vector<std::vector<cpp_rational>>;

// Gauss-Jordan on [m | I]; returns rank and (if full rank) the inverse.
int rational_invert(const IntMatrix& m, RationalMatrix* inverse) {
  const std::size_t n = m.rows(), c = m.cols();
  RationalMatrix a(n, std::vector<cpp_rational>(c + n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < c; ++j) a[i][j] = m(i, j);
    a[i][c + i] = 1;
  }
  std::size_t row = 0;
  for (std::size_t col = 0; col < c && row < n; ++col) {
    std::size_t piv = row;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) continue;
    std::swap(a[piv], a[row]);
    cpp_rational inv = 1 / a[row][col];
    for (auto& x : a[row]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == row || a[r][col] == 0) continue;
      cpp_rational k = a[r][col];
      for (std::size_t j = 0; j < c + n; ++j) a[r][j] -= k * a[row][j];
    }
    ++row;
  }
  if (inverse && row == n && n == c) {
    inverse->assign(n, std::vector<cpp_rational>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) (*inverse)[i][j] = a[i][c + j];
  }
  return static_cast<int>(row);
}

}  // namespace

int rational_rank(const IntMatrix& m) { return rational_invert(m, nullptr); }

IntMatrix lambda_solve(const IntMatrix& skew, int sigma) {
  if (sigma != 1 && sigma != -1) throw UsageError("sign must be +1 or -1");
  RationalMatrix inv;
  const int r = rational_invert(skew, &inv);
  if (r != static_cast<int>(skew.rows())) throw NoCompatibleLambda(r);
  IntMatrix lambda2(skew.rows(), skew.cols());
  for (std::size_t i = 0; i < skew.rows(); ++i)
    for (std::size_t j = 0; j < skew.cols(); ++j) {
      cpp_rational v = inv[i][j] * 2 * sigma;
      if (denominator(v) != 1)
        throw NoCompatibleLambda(r, "B^{-1} has an entry with denominator beyond 2");
      lambda2(i, j) = static_cast<long long>(numerator(v));
    }
  return lambda2;
}

EulerData make_euler_data(const Quiver& q, int sigma) {
  EulerData d;
  d.euler = euler_matrix(q);
  d.skew = skew_matrix(d.euler);
  d.lambda2 = lambda_solve(d.skew, sigma);
  d.sigma = sigma;
  return d;
}

}  // namespace qcc
