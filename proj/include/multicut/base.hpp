#pragma once

// Shared basics: weights with an infinity sentinel, error types, small
// vertex-set bitmask helpers, and a portable seeded RNG facade.

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace multicut {

using Weight = std::int64_t;
using VertexId = int;
using EdgeId = int;

// Reserved sentinel, strictly greater than any finite sum that can arise.
inline constexpr Weight kInfWeight = std::numeric_limits<Weight>::max() / 4;

inline bool is_inf(Weight w) { return w >= kInfWeight; }

// Saturating addition: anything touching the sentinel stays at the sentinel.
inline Weight w_add(Weight a, Weight b) {
  if (is_inf(a) || is_inf(b)) return kInfWeight;
  Weight s = a + b;
  return is_inf(s) ? kInfWeight : s;
}

// Input could not be parsed or violates an instance invariant.
class parse_error : public std::runtime_error {
 public:
  parse_error(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  explicit parse_error(const std::string& what)
      : std::runtime_error(what), line_(0) {}
  int line() const { return line_; }

 private:
  int line_;
};

// A caller violated an operation precondition or a size bound.
class precondition_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The instance admits no finite-weight solution.
class infeasible_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A property the algorithm is entitled to assume failed at runtime.
class internal_error : public std::logic_error {
  using std::logic_error::logic_error;
};

// Always-on runtime assertion for algorithm laws (never compiled out:
// several acceptance criteria are phrased as zero tolerated violations).
inline void check(bool cond, const char* what) {
  if (!cond) throw internal_error(what);
}

// Vertex sets as 64-bit masks. Solvers reject instances with more than
// 64 vertices; parsing itself is not limited.
using VSet = std::uint64_t;

inline VSet vbit(VertexId v) { return VSet{1} << v; }
inline bool vhas(VSet s, VertexId v) { return (s >> v) & 1; }

inline std::vector<VertexId> vset_to_list(VSet s) {
  std::vector<VertexId> out;
  for (VertexId v = 0; s; ++v, s >>= 1)
    if (s & 1) out.push_back(v);
  return out;
}

inline VSet list_to_vset(const std::vector<VertexId>& vs) {
  VSet s = 0;
  for (VertexId v : vs) s |= vbit(v);
  return s;
}

inline int vset_size(VSet s) { return __builtin_popcountll(s); }

inline VertexId vset_min(VSet s) { return __builtin_ctzll(s); }

// Deterministic RNG. std::mt19937_64 has a standard-mandated sequence;
// distributions do not, so we draw bounded values ourselves.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t raw() { return eng_(); }

  // Uniform in [0, n), n >= 1, via rejection.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / n * n;
    std::uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return x % n;
  }

  int range(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool chance(double p) {
    return static_cast<double>(eng_()) / static_cast<double>(
               std::numeric_limits<std::uint64_t>::max()) < p;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i)
      std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace multicut
