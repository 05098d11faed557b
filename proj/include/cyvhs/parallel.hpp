#pragma once

#include <cstddef>
#include <functional>

namespace cyvhs {

// 0 means hardware concurrency.
void set_thread_limit(std::size_t n);
std::size_t thread_limit();

// Runs body(i) for i in [0, n); results must be written to per-index slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace cyvhs
