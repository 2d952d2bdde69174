// Copyright 2026 The ec3lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace ec3lab {

/// Number of workers for `jobs`; 0 means the available hardware parallelism.
inline unsigned resolve_jobs(unsigned jobs) {
    if (jobs == 0) {
        jobs = std::max(1u, std::thread::hardware_concurrency());
    }
    return jobs;
}

/// Evaluates fn(0..count-1) on up to `jobs` threads. Results are stored by
/// index, so the output order never depends on completion order. The first
/// exception thrown by any task is rethrown after all workers join.
template <typename T>
std::vector<T> parallel_map(size_t count, unsigned jobs, const std::function<T(size_t)> &fn) {
    std::vector<T> out(count);
    jobs = std::min<unsigned>(resolve_jobs(jobs), static_cast<unsigned>(std::max<size_t>(count, 1)));
    if (jobs <= 1) {
        for (size_t i = 0; i < count; i++) {
            out[i] = fn(i);
        }
        return out;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < jobs; w++) {
        workers.emplace_back([&] {
            for (size_t i = next++; i < count; i = next++) {
                try {
                    out[i] = fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) {
                        error = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto &w : workers) {
        w.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
    return out;
}

}  // namespace ec3lab
