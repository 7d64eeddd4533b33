#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace qcc {

using DimVector = std::vector<long long>;

DimVector operator+(const DimVector& a, const DimVector& b);
DimVector operator-(const DimVector& a, const DimVector& b);
DimVector operator-(const DimVector& a);
std::string to_string(const DimVector& v);

// Small dense integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  long long operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
  long long& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }

  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& o) const;
  IntMatrix operator+(const IntMatrix& o) const;
  IntMatrix operator-(const IntMatrix& o) const;
  IntMatrix scaled(long long c) const;
  DimVector apply(const DimVector& v) const;
  bool operator==(const IntMatrix& o) const = default;
  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<long long> data_;
};

struct Arrow {
  int source;  // 0-based
  int target;
};

// A path is its arrow sequence, first arrow first.
struct Path {
  int source;
  int target;
  std::vector<int> arrows;
};

class Quiver {
 public:
  // Vertices are 0-based internally and 1-based in text and printed output.
  Quiver(int vertex_count, std::vector<Arrow> arrows, std::string name = "");

  int vertex_count() const noexcept { return n_; }
  const std::vector<Arrow>& arrows() const noexcept { return arrows_; }
  const std::string& name() const noexcept { return name_; }
  const std::vector<int>& topological_order() const noexcept { return topo_; }
  const std::vector<int>& arrows_into(int v) const { return in_[v]; }
  const std::vector<int>& arrows_out_of(int v) const { return out_[v]; }

  const std::vector<Path>& paths(int from, int to) const { return paths_[from][to]; }
  // Index of the path (from, arrows) within paths(from, target); -1 if not a path.
  int path_index(int from, const std::vector<int>& arrows) const;
  int path_target(int from, const std::vector<int>& arrows) const;

 private:
  int n_;
  std::vector<Arrow> arrows_;
  std::string name_;
  std::vector<int> topo_;
  std::vector<std::vector<int>> in_, out_;
  std::vector<std::vector<std::vector<Path>>> paths_;
  std::map<std::pair<int, std::vector<int>>, int> path_lookup_;
};

using QuiverPtr = std::shared_ptr<const Quiver>;

Quiver parse_quiver(std::istream& in, std::string name = "");
Quiver parse_quiver_text(const std::string& text, std::string name = "");
// Built-in presets: "a2", "a4" (linear 1->2->3->4), "kronecker". Throws UsageError otherwise.
Quiver preset_quiver(const std::string& name);
bool is_preset_quiver(const std::string& name);

IntMatrix euler_matrix(const Quiver& q);
IntMatrix skew_matrix(const IntMatrix& euler);
// Phi = -E^{-1} E^T; acts on dimension vectors of non-projective indecomposables as tau.
IntMatrix coxeter_matrix(const IntMatrix& euler);
IntMatrix inverse_unipotent(const IntMatrix& euler);

long long euler_form(const IntMatrix& euler, const DimVector& m, const DimVector& n);
DimVector star_right(const IntMatrix& euler, const DimVector& e);  // E^T e
DimVector star_left(const IntMatrix& euler, const DimVector& e);   // E e

class NoCompatibleLambda;

struct EulerData {
  IntMatrix euler;
  IntMatrix skew;
  IntMatrix lambda2;  // 2 * Lambda
  int sigma = 1;      // sigma * Lambda * B = I

  long long form(const DimVector& m, const DimVector& n) const { return euler_form(euler, m, n); }
  // 2 * Lambda(a, b)
  long long lambda2_form(const DimVector& a, const DimVector& b) const;
};

// Lambda := sigma * B^{-1}. Throws NoCompatibleLambda when B is singular or 2 B^{-1} is not integral.
IntMatrix lambda_solve(const IntMatrix& skew, int sigma);
EulerData make_euler_data(const Quiver& q, int sigma);
int rational_rank(const IntMatrix& m);

}  // namespace qcc
