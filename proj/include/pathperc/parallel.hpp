#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace pathperc {

/// Worker count: PATHPERC_WORKERS if set and positive, else the hardware
/// concurrency (at least 1).
inline std::size_t default_workers() {
  if (const char* env = std::getenv("PATHPERC_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

template <class T>
struct ReplicaOutcome {
  std::optional<T> value;
  std::string error;
  bool ok() const { return value.has_value(); }
};

/// Runs task(i) for i in [0, count) on up to `workers` threads. Results are
/// stored by index, so the output does not depend on scheduling. A throwing
/// task yields an outcome with its message and no value.
template <class T, class Task>
std::vector<ReplicaOutcome<T>> run_replicas(std::size_t count, std::size_t workers, Task task) {
  std::vector<ReplicaOutcome<T>> out(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        out[i].value.emplace(task(i));
      } catch (const std::exception& e) {
        out[i].error = e.what();
      } catch (...) {
        out[i].error = "unknown error";
      }
    }
  };
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(1, count));
  if (workers == 1) {
    worker();
    return out;
  }
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  return out;
}

}  // namespace pathperc
