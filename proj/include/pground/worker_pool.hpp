#pragma once

#include <array>
#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <deque>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace pground {

// Task buffers, coarsest first. Idle workers serve the finest non-empty buffer.
enum class TaskLevel : std::size_t { component = 0, rules = 1, split = 2 };

// Completion counter for a set of tasks; the first exception thrown by a member
// task is kept and rethrown by WorkerPool::wait.
class TaskGroup {
 public:
  TaskGroup() = default;
  TaskGroup(const TaskGroup&) = delete;
  TaskGroup& operator=(const TaskGroup&) = delete;

  std::size_t pending() const { return pending_.load(std::memory_order_acquire); }

 private:
  friend class WorkerPool;
  std::atomic<std::size_t> pending_{0};
  std::exception_ptr error_;
  std::mutex error_mutex_;
};

// Fixed set of worker threads over three shared FIFO buffers. Tasks may wait
// for tasks they submitted to finer buffers; a waiting worker keeps executing
// tasks from buffers at least as fine as the one it waits on, so nested waits
// cannot starve the pool.
class WorkerPool {
 public:
  explicit WorkerPool(std::size_t workers);
  ~WorkerPool();
  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  std::size_t workers() const { return threads_.size(); }

  void submit(TaskLevel level, TaskGroup& group, std::function<void()> task);

  // Called from inside a task: runs queued tasks at `help_level` or finer until
  // the group completes, then rethrows the group's first error.
  void wait(TaskGroup& group, TaskLevel help_level);

  // Called from a thread outside the pool: blocks until the group completes.
  void wait_passive(TaskGroup& group);

  // Set once any task fails; long-running tasks poll it to stop early.
  bool cancelled() const { return cancelled_.load(std::memory_order_relaxed); }
  void cancel() { cancelled_.store(true, std::memory_order_relaxed); }
  const std::atomic<bool>& cancel_flag() const { return cancelled_; }

 private:
  struct Task {
    TaskGroup* group = nullptr;
    std::function<void()> fn;
  };

  bool pop(std::size_t finest_first_limit, Task& out);
  void run(Task& task);
  void worker_loop();
  static void rethrow(TaskGroup& group);

  std::array<std::deque<Task>, 3> buffers_;
  std::mutex mutex_;
  std::condition_variable cv_;
  bool stopping_ = false;
  std::atomic<bool> cancelled_{false};
  std::vector<std::thread> threads_;
};

}  // namespace pground
