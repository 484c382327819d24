// Copyright 2026 The wsub Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <exception>
#include <thread>
#include <vector>

#include "wsub/common.hpp"

namespace wsub {

/// Worker cap for parallel_for. Defaults to the hardware concurrency.
int num_threads();
void set_num_threads(int threads);

namespace detail {
bool inside_parallel_region();
void set_inside_parallel_region(bool inside);
}  // namespace detail

/// Runs fn(i) for i in [0, count). Each index is processed exactly once and
/// results must be written to per-index slots, so the outcome does not depend
/// on the worker count. Nested calls run serially. If any call throws, the
/// exception of the smallest failing index is rethrown.
template <typename Fn>
void parallel_for(Index count, Fn&& fn) {
  if (count <= 0) return;
  const Index workers =
      std::min<Index>(count, detail::inside_parallel_region() ? 1 : num_threads());
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
  auto body = [&](Index worker) {
    for (Index i = worker; i < count; i += workers) {
      try {
        fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    body(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (Index w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        detail::set_inside_parallel_region(true);
        body(w);
      });
    }
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace wsub
