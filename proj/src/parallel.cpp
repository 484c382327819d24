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

#include "wsub/parallel.hpp"

#include <atomic>

namespace wsub {
namespace {

std::atomic<int> g_threads{0};
thread_local bool t_inside_parallel = false;

}  // namespace

int num_threads() {
  const int t = g_threads.load();
  if (t > 0) return t;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void set_num_threads(int threads) {
  if (threads < 0) throw ValidationError("thread count must be >= 0");
  g_threads.store(threads);
}

namespace detail {

bool inside_parallel_region() { return t_inside_parallel; }
void set_inside_parallel_region(bool inside) { t_inside_parallel = inside; }

}  // namespace detail
}  // namespace wsub
