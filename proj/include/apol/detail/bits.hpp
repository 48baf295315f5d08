#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace apol {

/*! \brief Invalid argument passed to an operation (arity mismatch, bad index, ...). */
struct input_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/*! \brief Malformed textual input.  Carries a 1-based row/column position when known. */
struct parse_error : input_error {
  explicit parse_error(const std::string& what, int row = 0, int column = 0)
      : input_error(what), row(row), column(column) {}
  int row;
  int column;
};

/*! \brief Request exceeds a documented enumeration bound. */
struct capability_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

/*! \brief Deterministic 64-bit generator (splitmix64).
 *
 * Used for every seeded test and sampling path so that results are
 * reproducible across platforms and standard library implementations.
 */
class splitmix64 {
public:
  explicit constexpr splitmix64(uint64_t seed) : state_(seed) {}

  constexpr uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  //! Uniform draw from [0, bound) via 128-bit multiply-shift.
  constexpr uint64_t next_below(uint64_t bound) {
    return static_cast<uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  constexpr bool next_bit() { return next() >> 63; }

private:
  uint64_t state_;
};

//! Stateless per-index stream: draw i of a seeded sequence, worker-independent.
inline splitmix64 substream(uint64_t seed, uint64_t index) {
  splitmix64 mixer(seed ^ (index * 0x9e3779b97f4a7c15ULL));
  return splitmix64(mixer.next());
}

inline int resolve_workers(int requested) {
  if (requested > 0) return requested;
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

/*! \brief Runs fn(begin, end, slot) on `workers` contiguous slices of [0, total).
 *
 * Slices and their order are a pure function of (total, workers), so callers
 * that reduce slot results in slice order stay deterministic for any worker
 * count.
 */
template <typename Fn>
void parallel_slices(uint64_t total, int workers, Fn&& fn) {
  workers = resolve_workers(workers);
  uint64_t n = static_cast<uint64_t>(workers);
  if (total < 2 || n <= 1) {
    fn(uint64_t{0}, total, 0);
    return;
  }
  if (n > total) n = total;
  std::vector<std::thread> pool;
  pool.reserve(n);
  uint64_t chunk = total / n;
  uint64_t extra = total % n;
  uint64_t begin = 0;
  for (uint64_t w = 0; w < n; ++w) {
    uint64_t end = begin + chunk + (w < extra ? 1 : 0);
    pool.emplace_back([&fn, begin, end, w] { fn(begin, end, static_cast<int>(w)); });
    begin = end;
  }
  for (auto& t : pool) t.join();
}

}  // namespace detail
}  // namespace apol
