#include "rhilab/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace rhilab {

namespace {

std::atomic<int> g_threads{0};

int from_environment() {
  if (const char* env = std::getenv("RHI_LAB_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  return 0;
}

}  // namespace

int thread_count() {
  if (const int n = from_environment(); n > 0) return n;
  if (const int n = g_threads.load(); n > 0) return n;
  return std::max(1u, std::thread::hardware_concurrency());
}

void set_thread_count(int n) { g_threads.store(n > 0 ? n : 0); }

}  // namespace rhilab
