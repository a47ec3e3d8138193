#pragma once

#include <condition_variable>
#include <cstddef>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace vesselsim {

/// Fixed-size fork-join pool. `run` blocks until every task has finished, which
/// is the barrier between simulation phases.
class ThreadPool {
 public:
  explicit ThreadPool(std::size_t workers);
  ~ThreadPool();

  ThreadPool(const ThreadPool&) = delete;
  ThreadPool& operator=(const ThreadPool&) = delete;

  std::size_t workers() const noexcept { return workers_; }

  /// Runs task(i) for i in [0, tasks). The first exception thrown by any task is
  /// rethrown on the calling thread after all tasks completed.
  void run(std::size_t tasks, const std::function<void(std::size_t)>& task);

 private:
  void worker_loop();

  std::size_t workers_;
  std::vector<std::jthread> threads_;
  std::mutex mutex_;
  std::condition_variable wake_;
  std::condition_variable done_;
  const std::function<void(std::size_t)>* job_ = nullptr;
  std::size_t job_tasks_ = 0;
  std::size_t next_task_ = 0;
  std::size_t finished_ = 0;
  std::size_t generation_ = 0;
  std::exception_ptr error_;
  bool stopping_ = false;
};

}  // namespace vesselsim
