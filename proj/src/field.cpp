#include "qcc/field.hpp"

#include <sstream>

#include "qcc/errors.hpp"

namespace qcc {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (!is_prime(p) || p > 65521) throw UsageError("field characteristic must be a small prime, got " + std::to_string(p));
}

Scalar PrimeField::inv(Scalar a) const {
  a = reduce(a);
  if (a == 0) throw UsageError("division by zero in F_" + std::to_string(p_));
  // extended Euclid
  std::int64_t t = 0, nt = 1, r = p_, nr = a;
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  return reduce(t);
}

FieldMatrix::FieldMatrix(std::size_t rows, std::size_t cols, std::uint32_t p)
    : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {
  PrimeField check(p);
  (void)check;
}

FieldMatrix FieldMatrix::identity(std::size_t n, std::uint32_t p) {
  FieldMatrix m(n, n, p);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

FieldMatrix FieldMatrix::from_rows(std::initializer_list<std::initializer_list<long long>> rows,
                                   std::uint32_t p) {
  std::vector<std::vector<long long>> v;
  for (const auto& r : rows) v.emplace_back(r);
  return from_rows(v, v.empty() ? 0 : v.front().size(), p);
}

FieldMatrix FieldMatrix::from_rows(const std::vector<std::vector<long long>>& rows, std::size_t cols,
                                   std::uint32_t p) {
  FieldMatrix m(rows.size(), cols, p);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw UsageError("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

void FieldMatrix::set(std::size_t r, std::size_t c, long long v) {
  if (r >= rows_ || c >= cols_) throw UsageError("matrix index out of range");
  Scalar x = v % static_cast<long long>(p_);
  data_[r * cols_ + c] = x < 0 ? x + p_ : x;
}

bool FieldMatrix::is_zero() const noexcept {
  for (Scalar x : data_)
    if (x != 0) return false;
  return true;
}

FieldMatrix FieldMatrix::transpose() const {
  FieldMatrix t(cols_, rows_, p_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

FieldMatrix FieldMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw UsageError("block out of range");
  FieldMatrix b(nr, nc, p_);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
  return b;
}

void FieldMatrix::set_block(std::size_t r0, std::size_t c0, const FieldMatrix& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw UsageError("block out of range");
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) (*this)(r0 + r, c0 + c) = b(r, c);
}

std::vector<Scalar> FieldMatrix::column(std::size_t c) const {
  std::vector<Scalar> v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

std::vector<Scalar> FieldMatrix::row(std::size_t r) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

FieldMatrix FieldMatrix::column_vector(const std::vector<Scalar>& v, std::uint32_t p) {
  FieldMatrix m(v.size(), 1, p);
  for (std::size_t i = 0; i < v.size(); ++i) m.set(i, 0, v[i]);
  return m;
}

FieldMatrix FieldMatrix::row_vector(const std::vector<Scalar>& v, std::uint32_t p) {
  FieldMatrix m(1, v.size(), p);
  for (std::size_t i = 0; i < v.size(); ++i) m.set(0, i, v[i]);
  return m;
}

FieldMatrix FieldMatrix::operator*(const FieldMatrix& o) const {
  if (cols_ != o.rows_ || p_ != o.p_) throw UsageError("matrix product shape or field mismatch");
  FieldMatrix out(rows_, o.cols_, p_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      Scalar a = (*this)(r, k);
      if (a == 0) continue;
      for (std::size_t c = 0; c < o.cols_; ++c) out(r, c) = (out(r, c) + a * o(k, c)) % p_;
    }
  return out;
}

FieldMatrix FieldMatrix::operator+(const FieldMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || p_ != o.p_) throw UsageError("matrix sum shape mismatch");
  FieldMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = (data_[i] + o.data_[i]) % p_;
  return out;
}

FieldMatrix FieldMatrix::operator-(const FieldMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || p_ != o.p_) throw UsageError("matrix difference shape mismatch");
  FieldMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = (data_[i] - o.data_[i] + p_) % p_;
  return out;
}

FieldMatrix FieldMatrix::scaled(Scalar c) const {
  FieldMatrix out = *this;
  Scalar k = field().reduce(c);
  for (auto& x : out.data_) x = (x * k) % p_;
  return out;
}

std::strong_ordering FieldMatrix::operator<=>(const FieldMatrix& o) const {
  if (auto c = rows_ <=> o.rows_; c != 0) return c;
  if (auto c = cols_ <=> o.cols_; c != 0) return c;
  if (auto c = p_ <=> o.p_; c != 0) return c;
  return data_ <=> o.data_;
}

std::string FieldMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) os << "; ";
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << (*this)(r, c);
  }
  os << ']';
  return os.str();
}

FieldMatrix hstack(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.rows() != b.rows()) throw UsageError("hstack row mismatch");
  FieldMatrix out(a.rows(), a.cols() + b.cols(), a.prime());
  out.set_block(0, 0, a);
  out.set_block(0, a.cols(), b);
  return out;
}

FieldMatrix vstack(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.cols() != b.cols()) throw UsageError("vstack column mismatch");
  FieldMatrix out(a.rows() + b.rows(), a.cols(), a.prime());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), 0, b);
  return out;
}

RrefResult rref(const FieldMatrix& m) {
  const PrimeField f = m.field();
  RrefResult res{m, 0, {}};
  FieldMatrix& a = res.reduced;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t piv = row;
    while (piv < a.rows() && a(piv, col) == 0) ++piv;
    if (piv == a.rows()) continue;
    if (piv != row)
      for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(piv, c), a(row, c));
    Scalar inv = f.inv(a(row, col));
    for (std::size_t c = col; c < a.cols(); ++c) a(row, c) = f.mul(a(row, c), inv);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col) == 0) continue;
      Scalar k = a(r, col);
      for (std::size_t c = col; c < a.cols(); ++c) a(r, c) = f.sub(a(r, c), f.mul(k, a(row, c)));
    }
    res.pivots.push_back(col);
    ++row;
  }
  res.rank = row;
  return res;
}

std::size_t rank(const FieldMatrix& m) { return rref(m).rank; }

FieldMatrix kernel_basis(const FieldMatrix& m) {
  const auto r = rref(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto c : r.pivots) is_pivot[c] = true;
  FieldMatrix k(n, n - r.rank, m.prime());
  std::size_t out = 0;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    k(free, out) = 1;
    for (std::size_t i = 0; i < r.rank; ++i)
      k(r.pivots[i], out) = m.field().reduce(-r.reduced(i, free));
    ++out;
  }
  return k;
}

std::optional<FieldMatrix> solve_matrix(const FieldMatrix& m, const FieldMatrix& b) {
  if (m.rows() != b.rows()) throw UsageError("solve: right-hand side has wrong length");
  if (m.prime() != b.prime()) throw UsageError("solve: field mismatch");
  const auto r = rref(hstack(m, b));
  const std::size_t n = m.cols();
  // inconsistent iff a pivot lies in the augmented block
  for (auto c : r.pivots)
    if (c >= n) return std::nullopt;
  FieldMatrix x(n, b.cols(), m.prime());
  for (std::size_t i = 0; i < r.rank; ++i)
    for (std::size_t c = 0; c < b.cols(); ++c) x(r.pivots[i], c) = r.reduced(i, n + c);
  return x;
}

std::optional<std::vector<Scalar>> solve(const FieldMatrix& m, const std::vector<Scalar>& b) {
  auto x = solve_matrix(m, FieldMatrix::column_vector(b, m.prime()));
  if (!x) return std::nullopt;
  return x->column(0);
}

std::optional<FieldMatrix> inverse(const FieldMatrix& m) {
  if (m.rows() != m.cols()) throw UsageError("inverse of non-square matrix");
  if (rank(m) != m.rows()) return std::nullopt;
  return solve_matrix(m, FieldMatrix::identity(m.rows(), m.prime()));
}

FieldMatrix row_span(const FieldMatrix& rows) {
  auto r = rref(rows);
  return r.reduced.block(0, 0, r.rank, rows.cols());
}

FieldMatrix zero_subspace(std::size_t ambient, std::uint32_t p) { return FieldMatrix(0, ambient, p); }
FieldMatrix full_subspace(std::size_t ambient, std::uint32_t p) { return FieldMatrix::identity(ambient, p); }

FieldMatrix image_subspace(const FieldMatrix& a, const FieldMatrix& u) {
  if (u.cols() != a.cols()) throw UsageError("image_subspace: ambient mismatch");
  if (u.rows() == 0) return zero_subspace(a.rows(), a.prime());
  return row_span(u * a.transpose());
}

FieldMatrix preimage_subspace(const FieldMatrix& a, const FieldMatrix& u) {
  if (u.cols() != a.rows()) throw UsageError("preimage_subspace: ambient mismatch");
  // y in rowspace(u) iff c^T y = 0 for every c in ker(u)
  FieldMatrix annihilator = kernel_basis(u).transpose();
  return row_span(kernel_basis(annihilator * a).transpose());
}

FieldMatrix subspace_sum(const FieldMatrix& u, const FieldMatrix& w) { return row_span(vstack(u, w)); }

FieldMatrix subspace_intersection(const FieldMatrix& u, const FieldMatrix& w) {
  // x = a u = b w  <->  [u; -w]^T (a, b) = 0
  if (u.rows() == 0 || w.rows() == 0) return zero_subspace(u.cols(), u.prime());
  FieldMatrix stacked = vstack(u, w.scaled(-1));
  FieldMatrix k = kernel_basis(stacked.transpose());
  FieldMatrix coeffs = k.transpose().block(0, 0, k.cols(), u.rows());
  return row_span(coeffs * u);
}

bool subspace_contains(const FieldMatrix& u, const FieldMatrix& w) {
  return rank(vstack(u, w)) == rank(u);
}

FieldMatrix complement_rows(const FieldMatrix& u) {
  auto r = rref(u);
  std::vector<bool> is_pivot(u.cols(), false);
  for (auto c : r.pivots) is_pivot[c] = true;
  FieldMatrix c(u.cols() - r.rank, u.cols(), u.prime());
  std::size_t k = 0;
  for (std::size_t j = 0; j < u.cols(); ++j)
    if (!is_pivot[j]) c(k++, j) = 1;
  return c;
}

namespace {

// Enumerate RREF matrices of shape e x d by choosing pivot columns and free entries.
void enumerate_rref(std::size_t d, std::size_t e, std::uint32_t p, std::vector<FieldMatrix>& out) {
  std::vector<std::size_t> pivots(e);
  std::vector<std::size_t> free_slots;  // flattened (row, col) pairs
  auto emit = [&]() {
    free_slots.clear();
    for (std::size_t r = 0; r < e; ++r)
      for (std::size_t c = pivots[r] + 1; c < d; ++c) {
        bool is_piv = false;
        for (std::size_t r2 = r + 1; r2 < e; ++r2) is_piv |= pivots[r2] == c;
        if (!is_piv) free_slots.push_back(r * d + c);
      }
    const std::uint64_t count = ipow(p, static_cast<unsigned>(free_slots.size()));
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      FieldMatrix m(e, d, p);
      for (std::size_t r = 0; r < e; ++r) m(r, pivots[r]) = 1;
      auto digits = coefficients_from_index(idx, free_slots.size(), p);
      for (std::size_t s = 0; s < free_slots.size(); ++s) m(free_slots[s] / d, free_slots[s] % d) = digits[s];
      out.push_back(std::move(m));
    }
  };
  // choose increasing pivot columns
  std::vector<std::size_t> stack;
  auto rec = [&](auto&& self, std::size_t start, std::size_t r) -> void {
    if (r == e) {
      emit();
      return;
    }
    for (std::size_t c = start; c + (e - r) <= d; ++c) {
      pivots[r] = c;
      self(self, c + 1, r + 1);
    }
  };
  rec(rec, 0, 0);
}

}  // namespace

std::vector<FieldMatrix> enumerate_subspaces(std::size_t d, std::size_t e, std::uint32_t p) {
  if (e > d) throw UsageError("enumerate_subspaces: dimension " + std::to_string(e) + " exceeds ambient " + std::to_string(d));
  PrimeField check(p);
  (void)check;
  std::vector<FieldMatrix> out;
  enumerate_rref(d, e, p, out);
  return out;
}

std::vector<FieldMatrix> enumerate_superspaces(const FieldMatrix& w, std::size_t e) {
  const std::size_t d = w.cols();
  const auto r = rref(w);
  if (e < r.rank || e > d) return {};
  // F^d / w is coordinatized by the non-pivot columns of w's RREF.
  FieldMatrix base = r.reduced.block(0, 0, r.rank, d);
  FieldMatrix lift = complement_rows(base);
  std::vector<FieldMatrix> out;
  for (const auto& q : enumerate_subspaces(d - r.rank, e - r.rank, w.prime()))
    out.push_back(row_span(vstack(base, q * lift)));
  return out;
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  while (exp--) r *= base;
  return r;
}

std::uint64_t gaussian_binomial(unsigned d, unsigned e, std::uint32_t p) {
  if (e > d) return 0;
  // product formula, exact in 128-bit for the sizes we use
  unsigned __int128 num = 1, den = 1;
  for (unsigned i = 0; i < e; ++i) {
    num *= ipow(p, d - i) - 1;
    den *= ipow(p, i + 1) - 1;
  }
  return static_cast<std::uint64_t>(num / den);
}

std::vector<Scalar> coefficients_from_index(std::uint64_t index, std::size_t len, std::uint32_t p) {
  std::vector<Scalar> v(len);
  for (std::size_t i = 0; i < len; ++i) {
    v[i] = static_cast<Scalar>(index % p);
    index /= p;
  }
  return v;
}

}  // namespace qcc
