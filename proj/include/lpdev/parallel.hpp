#pragma once

#include <cstdint>
#include <functional>

#include "lpdev/common.hpp"

namespace lpdev {

// Process-wide cap on worker threads. Results never depend on it: parallel
// loops partition work by index and every task writes only its own slots.
void set_max_threads(int n);
int max_threads();

namespace detail {
void parallel_for_impl(Index n, const std::function<void(Index)>& body);
}

// Runs body(i) for i in [0, n). Deterministic: the loop body must touch only
// state owned by index i; reductions happen serially afterwards.
template <typename F>
void parallel_for(Index n, F&& body) {
    detail::parallel_for_impl(n, std::function<void(Index)>(std::forward<F>(body)));
}

}  // namespace lpdev
