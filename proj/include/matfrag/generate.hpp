#pragma once

#include <cstdint>

#include "matfrag/instance.hpp"

namespace matfrag {

enum class GenKind { XFragile, NFragile };

struct GenParams {
  unsigned q = 2;     // field order, a prime power
  unsigned rows = 2;  // |S1|
  unsigned cols = 3;  // |S2|
  // xfragile: X is the first x_rows row labels and first x_cols column labels.
  unsigned x_rows = 1;
  unsigned x_cols = 1;
  // nfragile: |E(N)| for a uniformly drawn displayed minor.
  unsigned minor_size = 2;
  std::uint64_t seed = 0;
  std::size_t max_attempts = 20000;
  std::size_t max_ground = kDefaultMaxGround;
};

struct Generated {
  InstanceFile instance;
  std::size_t rejections = 0;
};

// The field of order q built as GF(p) plus one canonical step.
Field field_of_order(unsigned q, const FieldLimits& limits = {});

// Rejection sampling: uniform matrices over GF(q) with row labels r1.. and
// column labels s1..; kept iff is_X_fragile_matrix (xfragile, with A[X]
// zeroed first) or is_N_fragile for the displayed minor M[E(N), S1]
// (nfragile).  Deterministic in params.seed.  Throws InvalidArgs or
// CapExceeded before sampling, Exhausted after max_attempts rejections.
Generated gen_random(GenKind kind, const GenParams& params);

// splitmix64 step, used to derive per-case seeds.
std::uint64_t mix_seed(std::uint64_t x);

}  // namespace matfrag
