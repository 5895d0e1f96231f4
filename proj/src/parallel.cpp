#include "sjlt/parallel.hpp"

#include <omp.h>

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace sjlt::parallel {

int worker_count() {
  int n = omp_get_max_threads();
  if (const char* env = std::getenv("SJLT_THREADS")) {
    int cap = 0;
    auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), cap);
    if (ec == std::errc{} && *ptr == '\0' && cap > 0 && cap < n) n = cap;
  }
  return n < 1 ? 1 : n;
}

Slice partition(std::size_t total, std::size_t parts, std::size_t part) noexcept {
  const std::size_t base = total / parts;
  const std::size_t extra = total % parts;
  const std::size_t begin = part * base + (part < extra ? part : extra);
  return {begin, begin + base + (part < extra ? 1 : 0)};
}

}  // namespace sjlt::parallel
