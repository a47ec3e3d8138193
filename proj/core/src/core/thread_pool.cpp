#include "vesselsim/core/thread_pool.hpp"

#include <algorithm>

namespace vesselsim {

ThreadPool::ThreadPool(std::size_t workers) : workers_(std::max<std::size_t>(1, workers)) {
  // The calling thread participates, so spawn one fewer helper.
  for (std::size_t i = 1; i < workers_; ++i) threads_.emplace_back([this] { worker_loop(); });
}

ThreadPool::~ThreadPool() {
  {
    std::lock_guard lock(mutex_);
    stopping_ = true;
  }
  wake_.notify_all();
  threads_.clear();  // join before the synchronization members go away
}

void ThreadPool::worker_loop() {
  std::size_t seen = 0;
  std::unique_lock lock(mutex_);
  for (;;) {
    wake_.wait(lock, [&] { return stopping_ || generation_ != seen; });
    if (stopping_) return;
    seen = generation_;
    while (job_ && next_task_ < job_tasks_) {
      const std::size_t i = next_task_++;
      const auto* job = job_;
      lock.unlock();
      try {
        (*job)(i);
      } catch (...) {
        lock.lock();
        if (!error_) error_ = std::current_exception();
        lock.unlock();
      }
      lock.lock();
      if (++finished_ == job_tasks_) done_.notify_all();
    }
  }
}

void ThreadPool::run(std::size_t tasks, const std::function<void(std::size_t)>& task) {
  if (tasks == 0) return;
  if (threads_.empty()) {
    for (std::size_t i = 0; i < tasks; ++i) task(i);
    return;
  }
  std::unique_lock lock(mutex_);
  job_ = &task;
  job_tasks_ = tasks;
  next_task_ = 0;
  finished_ = 0;
  error_ = nullptr;
  ++generation_;
  wake_.notify_all();
  while (next_task_ < job_tasks_) {
    const std::size_t i = next_task_++;
    lock.unlock();
    try {
      task(i);
    } catch (...) {
      lock.lock();
      if (!error_) error_ = std::current_exception();
      lock.unlock();
    }
    lock.lock();
    ++finished_;
  }
  done_.wait(lock, [&] { return finished_ == job_tasks_; });
  job_ = nullptr;
  if (error_) {
    auto e = error_;
    error_ = nullptr;
    std::rethrow_exception(e);
  }
}

}  // namespace vesselsim
