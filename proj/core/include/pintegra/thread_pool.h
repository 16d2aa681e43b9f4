// Copyright 2026 The Pintegra Authors
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

#ifndef PINTEGRA_THREAD_POOL_H_
#define PINTEGRA_THREAD_POOL_H_

#include <condition_variable>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace pintegra {

// Fixed set of workers executing index-parallel loops. The calling thread
// takes part in every loop, so a pool of size 1 owns no extra threads.
class ThreadPool {
 public:
  explicit ThreadPool(int num_threads);
  ~ThreadPool();

  ThreadPool(const ThreadPool&) = delete;
  ThreadPool& operator=(const ThreadPool&) = delete;

  int size() const { return static_cast<int>(workers_.size()) + 1; }

  // Calls fn(i) for every i in [0, count) and blocks until all calls
  // returned. The first exception thrown by fn is rethrown here.
  void ParallelFor(int count, const std::function<void(int)>& fn);

 private:
  void WorkerLoop();
  void RunChunks();

  std::vector<std::thread> workers_;
  std::mutex mutex_;
  std::condition_variable work_ready_;
  std::condition_variable work_done_;
  std::uint64_t generation_ = 0;
  bool stopping_ = false;

  const std::function<void(int)>* task_ = nullptr;
  int count_ = 0;
  int next_index_ = 0;
  int active_workers_ = 0;
  std::exception_ptr error_;
};

// Runs fn over [0, count) on pool, or inline when pool is null.
void ParallelFor(ThreadPool* pool, int count,
                 const std::function<void(int)>& fn);

}  // namespace pintegra

#endif  // PINTEGRA_THREAD_POOL_H_
