#include "pground/worker_pool.hpp"

namespace pground {

WorkerPool::WorkerPool(std::size_t workers) {
  if (workers == 0) workers = 1;
  threads_.reserve(workers);
  for (std::size_t i = 0; i < workers; ++i) threads_.emplace_back([this] { worker_loop(); });
}

WorkerPool::~WorkerPool() {
  {
    std::lock_guard lock(mutex_);
    stopping_ = true;
  }
  cv_.notify_all();
  for (auto& t : threads_) t.join();
}

void WorkerPool::submit(TaskLevel level, TaskGroup& group, std::function<void()> task) {
  group.pending_.fetch_add(1, std::memory_order_acq_rel);
  {
    std::lock_guard lock(mutex_);
    buffers_[static_cast<std::size_t>(level)].push_back({&group, std::move(task)});
  }
  // Waiters only accept some levels, so wake everyone.
  cv_.notify_all();
}

bool WorkerPool::pop(std::size_t coarsest, Task& out) {
  for (std::size_t level = buffers_.size(); level-- > coarsest;) {
    auto& buffer = buffers_[level];
    if (buffer.empty()) continue;
    out = std::move(buffer.front());
    buffer.pop_front();
    return true;
  }
  return false;
}

void WorkerPool::run(Task& task) {
  if (!cancelled()) {
    try {
      task.fn();
    } catch (...) {
      std::lock_guard lock(task.group->error_mutex_);
      if (!task.group->error_) task.group->error_ = std::current_exception();
      cancel();
    }
  }
  task.fn = nullptr;
  {
    // Decrement under the lock so a waiter cannot miss the notification.
    std::lock_guard lock(mutex_);
    task.group->pending_.fetch_sub(1, std::memory_order_acq_rel);
  }
  cv_.notify_all();
}

void WorkerPool::worker_loop() {
  for (;;) {
    Task task;
    {
      std::unique_lock lock(mutex_);
      cv_.wait(lock, [&] { return stopping_ || pop(0, task); });
      if (!task.group) return;
    }
    run(task);
  }
}

void WorkerPool::rethrow(TaskGroup& group) {
  std::lock_guard lock(group.error_mutex_);
  if (group.error_) std::rethrow_exception(group.error_);
}

void WorkerPool::wait(TaskGroup& group, TaskLevel help_level) {
  const auto coarsest = static_cast<std::size_t>(help_level);
  for (;;) {
    Task task;
    {
      std::unique_lock lock(mutex_);
      cv_.wait(lock, [&] { return group.pending() == 0 || pop(coarsest, task); });
      if (!task.group) break;
    }
    run(task);
  }
  rethrow(group);
}

void WorkerPool::wait_passive(TaskGroup& group) {
  {
    std::unique_lock lock(mutex_);
    cv_.wait(lock, [&] { return group.pending() == 0; });
  }
  rethrow(group);
}

}  // namespace pground
