#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace qcc {

// Entries are kept reduced in [0, p).
using Scalar = std::int64_t;

bool is_prime(std::uint64_t n);

class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p);

  std::uint32_t prime() const noexcept { return p_; }
  Scalar reduce(std::int64_t x) const noexcept {
    Scalar r = x % static_cast<Scalar>(p_);
    return r < 0 ? r + p_ : r;
  }
  Scalar add(Scalar a, Scalar b) const noexcept { return reduce(a + b); }
  Scalar sub(Scalar a, Scalar b) const noexcept { return reduce(a - b); }
  Scalar mul(Scalar a, Scalar b) const noexcept { return (a * b) % p_; }
  Scalar inv(Scalar a) const;

 private:
  std::uint32_t p_;
};

// Dense row-major matrix over F_p.
class FieldMatrix {
 public:
  FieldMatrix() = default;
  FieldMatrix(std::size_t rows, std::size_t cols, std::uint32_t p);

  static FieldMatrix identity(std::size_t n, std::uint32_t p);
  static FieldMatrix from_rows(std::initializer_list<std::initializer_list<long long>> rows,
                               std::uint32_t p);
  static FieldMatrix from_rows(const std::vector<std::vector<long long>>& rows, std::size_t cols,
                               std::uint32_t p);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::uint32_t prime() const noexcept { return p_; }
  PrimeField field() const { return PrimeField(p_); }

  Scalar operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
  // Raw write; caller supplies a reduced value.
  Scalar& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, long long v);

  bool is_zero() const noexcept;
  FieldMatrix transpose() const;
  FieldMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const FieldMatrix& b);
  std::vector<Scalar> column(std::size_t c) const;
  std::vector<Scalar> row(std::size_t r) const;
  static FieldMatrix column_vector(const std::vector<Scalar>& v, std::uint32_t p);
  static FieldMatrix row_vector(const std::vector<Scalar>& v, std::uint32_t p);

  FieldMatrix operator*(const FieldMatrix& o) const;
  FieldMatrix operator+(const FieldMatrix& o) const;
  FieldMatrix operator-(const FieldMatrix& o) const;
  FieldMatrix scaled(Scalar c) const;

  bool operator==(const FieldMatrix& o) const = default;
  std::strong_ordering operator<=>(const FieldMatrix& o) const;

  const std::vector<Scalar>& data() const noexcept { return data_; }
  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::uint32_t p_ = 2;
  std::vector<Scalar> data_;
};

FieldMatrix hstack(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix vstack(const FieldMatrix& a, const FieldMatrix& b);

struct RrefResult {
  FieldMatrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

RrefResult rref(const FieldMatrix& m);
std::size_t rank(const FieldMatrix& m);

// Columns form a basis of {x : m x = 0}.
FieldMatrix kernel_basis(const FieldMatrix& m);

// Some x with m x = b, or nullopt when inconsistent. Throws UsageError on shape mismatch.
std::optional<std::vector<Scalar>> solve(const FieldMatrix& m, const std::vector<Scalar>& b);
// Some X with m X = b (column by column).
std::optional<FieldMatrix> solve_matrix(const FieldMatrix& m, const FieldMatrix& b);
std::optional<FieldMatrix> inverse(const FieldMatrix& m);

// Subspaces of F_p^d are stored as their RREF row basis (k x d, no zero rows).
FieldMatrix row_span(const FieldMatrix& rows);
FieldMatrix zero_subspace(std::size_t ambient, std::uint32_t p);
FieldMatrix full_subspace(std::size_t ambient, std::uint32_t p);
// Image of row subspace u of F^cols(a) under x -> a x.
FieldMatrix image_subspace(const FieldMatrix& a, const FieldMatrix& u);
// {x : a x in u}, u a row subspace of F^rows(a).
FieldMatrix preimage_subspace(const FieldMatrix& a, const FieldMatrix& u);
FieldMatrix subspace_sum(const FieldMatrix& u, const FieldMatrix& w);
FieldMatrix subspace_intersection(const FieldMatrix& u, const FieldMatrix& w);
bool subspace_contains(const FieldMatrix& u, const FieldMatrix& w);
// Complement rows: rows c with rowspace(u) + rowspace(c) = F^d.
FieldMatrix complement_rows(const FieldMatrix& u);

// All e-dimensional subspaces of F_p^d, each in canonical RREF form.
std::vector<FieldMatrix> enumerate_subspaces(std::size_t d, std::size_t e, std::uint32_t p);
// All subspaces of dimension e containing w (w given in RREF form).
std::vector<FieldMatrix> enumerate_superspaces(const FieldMatrix& w, std::size_t e);

std::uint64_t ipow(std::uint64_t base, unsigned exp);
std::uint64_t gaussian_binomial(unsigned d, unsigned e, std::uint32_t p);

// Digits of index in base p, length len: a coefficient vector.
std::vector<Scalar> coefficients_from_index(std::uint64_t index, std::size_t len, std::uint32_t p);

}  // namespace qcc
