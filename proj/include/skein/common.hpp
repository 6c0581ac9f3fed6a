#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <sstream>
#include <vector>

namespace skein {

struct check_error : std::runtime_error {
  explicit check_error(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {
inline std::string check_msg(const char* expr, const char* file, int line,
                             const std::string& extra) {
  std::ostringstream os;
  os << "check failed: " << expr << " at " << file << ":" << line;
  if (!extra.empty()) os << " (" << extra << ")";
  return os.str();
}
}  // namespace detail

#define SKEIN_CHECK(cond)                                                     \
  do {                                                                        \
    if (!(cond))                                                              \
      throw ::skein::check_error(                                            \
          ::skein::detail::check_msg(#cond, __FILE__, __LINE__, ""));         \
  } while (0)

#define SKEIN_CHECK_MSG(cond, msg)                                            \
  do {                                                                        \
    if (!(cond)) {                                                            \
      std::ostringstream skein_check_os_;                                     \
      skein_check_os_ << msg;                                                 \
      throw ::skein::check_error(::skein::detail::check_msg(                  \
          #cond, __FILE__, __LINE__, skein_check_os_.str()));                 \
    }                                                                         \
  } while (0)

// Deterministic splitmix64 stream; the only RNG used anywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) {
    SKEIN_CHECK(n > 0);
    std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % n);
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }

  std::int64_t range(std::int64_t lo, std::int64_t hi) {  // inclusive
    SKEIN_CHECK(lo <= hi);
    return lo + static_cast<std::int64_t>(
                    below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::uint64_t state_;
};

template <typename T>
std::string join(const std::vector<T>& xs, const std::string& sep) {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) os << sep;
    os << xs[i];
  }
  return os.str();
}

}  // namespace skein
