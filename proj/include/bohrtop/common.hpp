// Copyright 2026 The Bohrtop Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BOHRTOP_COMMON_HPP
#define BOHRTOP_COMMON_HPP

#include <bit>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace bohrtop {

// Subsets of at most 64 base elements. Every finite structure in this
// library (lattice carriers, context atoms, block atoms) stays well below
// that bound; constructors enforce it.
using Mask = std::uint64_t;

inline constexpr Mask bit(int i) { return Mask{1} << i; }
inline constexpr bool has(Mask m, int i) { return (m >> i) & 1; }
inline int popcount(Mask m) { return std::popcount(m); }
inline constexpr Mask full_mask(int n) {
  return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1;
}

struct Tol {
  static constexpr double herm = 1e-10;     // Hermitian symmetry
  static constexpr double proj = 1e-9;      // idempotency, orthogonality
  static constexpr double eig = 1e-9;       // strictness at spectral boundaries
  static constexpr double cluster = 1e-8;   // eigenvalue clustering
  static constexpr double truth = 1e-9;     // rho(p) = 1 test
  static constexpr double recon = 1e-8;     // spectral reconstruction residual
  static constexpr double rank = 1e-8;      // rank decisions in span intersection
  static constexpr double jacobi_off = 1e-12;
  static constexpr int jacobi_sweeps = 100;
};

// Enumeration cap; BOHRTOP_CAP overrides.
inline std::size_t enumeration_cap(std::size_t fallback = std::size_t{1} << 20) {
  if (const char* e = std::getenv("BOHRTOP_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(e, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return fallback;
}

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// exit code 2 on the CLI
struct SchemaError : Error {
  std::string path;
  SchemaError(std::string p, const std::string& what)
      : Error(p + ": " + what), path(std::move(p)) {}
};

// exit code 3 on the CLI
struct DegenerateIntersection : Error {
  using Error::Error;
};

struct NotHermitian : Error { using Error::Error; };
struct NotOnSphere : Error { using Error::Error; };
struct NotInContext : Error { using Error::Error; };
struct NotInPoset : Error { using Error::Error; };
struct NotDistributive : Error { using Error::Error; };
struct NotContinuous : Error { using Error::Error; };
struct NotLattice : Error { using Error::Error; };
struct InvalidPoset : Error { using Error::Error; };
struct CapExceeded : Error {
  double log2_bound;  // certified lower bound on the count, as log2
  CapExceeded(const std::string& what, double lg)
      : Error(what), log2_bound(lg) {}
};
struct PosetMismatch : Error { using Error::Error; };
struct AlgebraMismatch : Error { using Error::Error; };
struct IncompatibleAlgebras : Error { using Error::Error; };
struct GlueConflict : Error { using Error::Error; };
struct InconsistentMeasure : Error { using Error::Error; };
struct NotUpperSet : Error { using Error::Error; };
struct MissingGeneratedContext : Error { using Error::Error; };

}  // namespace bohrtop

#endif
