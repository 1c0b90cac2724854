// Copyright 2026 The callboost Authors.
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

#ifndef CALLBOOST_PARALLEL_H_
#define CALLBOOST_PARALLEL_H_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace callboost {

// Calls fn(i) for i in [0, n) on up to `jobs` threads. Callers write results
// into slot i, so output order never depends on scheduling. If any call
// throws, the exception of the lowest failing index is rethrown.
template <typename Fn>
void ParallelFor(size_t n, int jobs, Fn &&fn) {
  const size_t workers =
      std::min(n, static_cast<size_t>(std::max(1, jobs)));
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};
  auto work = [&] {
    for (size_t i = next++; i < n && !failed; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
        failed = true;
      }
    }
  };
  std::vector<std::thread> threads;
  for (size_t t = 0; t < workers; ++t) threads.emplace_back(work);
  for (auto &t : threads) t.join();
  for (auto &e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

inline int DefaultJobs() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace callboost

#endif  // CALLBOOST_PARALLEL_H_
