#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace hlmono {

/// Worker count used by parallel_for. 0 selects the hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

/// Runs body(i) for i in [0, n) on contiguous chunks. Bodies must only write to
/// their own output slot.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// Fixed-shape pairwise tree sum; the result depends only on the input order.
double pairwise_sum(std::span<const double> values);

/// Evaluates term(i) in parallel and reduces with pairwise_sum, so serial and
/// parallel runs agree bitwise.
template <class F>
double parallel_sum(std::size_t n, F&& term) {
    std::vector<double> values(n);
    parallel_for(n, [&](std::size_t i) { values[i] = term(i); });
    return pairwise_sum(values);
}

}  // namespace hlmono
