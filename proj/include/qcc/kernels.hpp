#pragma once

#include <cstddef>
#include <exception>
#include <type_traits>
#include <vector>

#include "qcc/torus.hpp"

namespace qcc {

// Sum of term(k) for k in [0, count). Partial sums are kept per index block and
// joined in index order, so the result does not depend on the schedule.
template <class Term>
TorusElement parallel_sum(std::size_t count, Term&& term) {
  const long long n = static_cast<long long>(count);
  std::vector<TorusElement> partial(count);
  std::vector<std::exception_ptr> errors(count);
#pragma omp parallel for schedule(dynamic)
  for (long long k = 0; k < n; ++k) {
    // exceptions must not cross the parallel region
    try {
      partial[k] = term(static_cast<std::size_t>(k));
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  TorusElement total;
  for (const auto& x : partial) total += x;
  return total;
}

// Serial reference for parallel_sum.
template <class Term>
TorusElement serial_sum(std::size_t count, Term&& term) {
  TorusElement total;
  for (std::size_t k = 0; k < count; ++k) total += term(k);
  return total;
}

// Evaluates term(k) for k in [0, count) in parallel; results come back in index order.
template <class Term>
auto parallel_collect(std::size_t count, Term&& term) {
  using Result = std::decay_t<decltype(term(std::size_t{0}))>;
  const long long n = static_cast<long long>(count);
  std::vector<Result> out(count);
  std::vector<std::exception_ptr> errors(count);
#pragma omp parallel for schedule(dynamic)
  for (long long k = 0; k < n; ++k) {
    try {
      out[k] = term(static_cast<std::size_t>(k));
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace qcc
