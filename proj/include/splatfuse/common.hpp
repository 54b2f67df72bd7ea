#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

namespace splatfuse {

template <class S> using Vec2 = Eigen::Matrix<S, 2, 1>;
template <class S> using Vec3 = Eigen::Matrix<S, 3, 1>;
template <class S> using Vec4 = Eigen::Matrix<S, 4, 1>;
template <class S> using Mat2 = Eigen::Matrix<S, 2, 2>;
template <class S> using Mat3 = Eigen::Matrix<S, 3, 3>;
template <class S> using Mat23 = Eigen::Matrix<S, 2, 3>;
template <class S> using Mat34 = Eigen::Matrix<S, 3, 4>;

// ---------------------------------------------------------------------------
// Errors. Domain failures are typed so callers and tests can distinguish them.
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ShapeMismatch : Error { using Error::Error; };
struct TooSmall : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct MissingAsset : Error { using Error::Error; };
struct UnknownFrame : Error { using Error::Error; };
struct EmptyCloud : Error { using Error::Error; };
struct MissingRefMask : Error { using Error::Error; };
struct UnknownRefiner : Error { using Error::Error; };
struct RefinerFailure : Error { using Error::Error; };
struct InvalidArgument : Error { using Error::Error; };

// ---------------------------------------------------------------------------
// Scalar helpers
// ---------------------------------------------------------------------------

template <class S> inline S sigmoid(S x) {
  // split to avoid overflow of exp for large |x|
  if (x >= S(0)) {
    const S e = std::exp(-x);
    return S(1) / (S(1) + e);
  }
  const S e = std::exp(x);
  return e / (S(1) + e);
}

template <class S> inline S logit(S p) {
  return std::log(p / (S(1) - p));
}

template <class S> inline S clamp01(S v) {
  return std::clamp(v, S(0), S(1));
}

template <class S> inline S sq(S v) { return v * v; }

// ---------------------------------------------------------------------------
// Deterministic RNG. All stochastic choices in the pipeline flow through one
// of these, seeded from the config, so runs are reproducible.
// ---------------------------------------------------------------------------

class Rng {
public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t raw() { return engine_(); }

  // uniform in [lo, hi)
  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }

  double normal(double mean = 0.0, double stddev = 1.0) {
    return std::normal_distribution<double>(mean, stddev)(engine_);
  }

  // uniform integer in [0, n)
  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }

  std::string serialize() const {
    std::ostringstream os;
    os << engine_;
    return os.str();
  }

  void deserialize(const std::string& state) {
    std::istringstream is(state);
    is >> engine_;
    if (is.fail()) throw ParseError("bad RNG state string");
  }

  std::mt19937_64& engine() { return engine_; }

private:
  std::mt19937_64 engine_;
};

// ---------------------------------------------------------------------------
// Parallel helpers. Static block partition, one thread per worker; with a
// fixed worker count the work-to-worker assignment (and therefore any
// per-worker-buffer reduction order) is deterministic.
// ---------------------------------------------------------------------------

inline int default_worker_count() {
  if (const char* env = std::getenv("SPLATFUSE_WORKERS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

// Calls fn(worker, begin, end) on contiguous index blocks, one per worker.
template <class Fn>
inline void parallel_blocks(std::size_t count, int workers, Fn&& fn) {
  if (workers <= 1 || count <= 1) {
    fn(0, std::size_t(0), count);
    return;
  }
  const int used = static_cast<int>(std::min<std::size_t>(workers, count));
  const std::size_t chunk = (count + used - 1) / used;
  std::vector<std::thread> threads;
  threads.reserve(used);
  for (int w = 0; w < used; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    threads.emplace_back([&fn, w, begin, end] { fn(w, begin, end); });
  }
  for (auto& t : threads) t.join();
}

template <class Fn>
inline void parallel_for(std::size_t count, int workers, Fn&& fn) {
  parallel_blocks(count, workers, [&fn](int, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) fn(i);
  });
}

// ---------------------------------------------------------------------------
// FNV-1a content hash, used for config hashes and the run manifest.
// ---------------------------------------------------------------------------

inline std::uint64_t fnv1a(const void* data, std::size_t size,
                           std::uint64_t seed = 0xcbf29ce484222325ull) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::uint64_t fnv1a(const std::string& s,
                           std::uint64_t seed = 0xcbf29ce484222325ull) {
  return fnv1a(s.data(), s.size(), seed);
}

} // namespace splatfuse
