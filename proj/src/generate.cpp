#include "matfrag/generate.hpp"

#include <algorithm>
#include <random>

namespace matfrag {

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Field field_of_order(unsigned q, const FieldLimits& limits) {
  if (q < 2) throw Error(ErrorKind::InvalidField, "field order must be at least 2");
  unsigned p = 2;
  while (q % p != 0) ++p;
  unsigned n = 0;
  for (unsigned r = q; r > 1; r /= p) {
    if (r % p != 0) throw Error(ErrorKind::InvalidField, std::to_string(q) + " is not a prime power");
    ++n;
  }
  return extend_field(make_prime_field(p, limits), n, limits);
}

Generated gen_random(GenKind kind, const GenParams& params) {
  const Field F = field_of_order(params.q);
  const unsigned n = params.rows + params.cols;
  if (params.rows == 0 && params.cols == 0) throw Error(ErrorKind::InvalidArgs, "empty matrix");
  if (n > params.max_ground)
    throw Error(ErrorKind::CapExceeded, std::to_string(n) + " labels exceed the ground-set cap " +
                                            std::to_string(params.max_ground));
  if (kind == GenKind::XFragile) {
    if (params.x_rows > params.rows || params.x_cols > params.cols)
      throw Error(ErrorKind::InvalidArgs, "X is larger than the matrix");
    if (n - params.x_rows - params.x_cols > kMaxFreeElements)
      throw Error(ErrorKind::CapExceeded, "too many labels outside X");
  } else {
    if (params.minor_size > n) throw Error(ErrorKind::InvalidArgs, "minor is larger than the matroid");
    if (n - params.minor_size > kMaxFreeElements)
      throw Error(ErrorKind::CapExceeded, "too many elements outside the minor");
  }

  std::vector<Label> rows, cols;
  for (unsigned i = 0; i < params.rows; ++i) rows.push_back("r" + std::to_string(i + 1));
  for (unsigned j = 0; j < params.cols; ++j) cols.push_back("s" + std::to_string(j + 1));
  std::vector<Label> all = rows;
  all.insert(all.end(), cols.begin(), cols.end());

  std::mt19937_64 rng(params.seed);
  std::uniform_int_distribution<Code> entry(0, F.order() - 1);
  std::size_t rejections = 0;

  for (std::size_t attempt = 0; attempt < params.max_attempts; ++attempt) {
    std::vector<Code> entries(static_cast<std::size_t>(params.rows) * params.cols);
    for (auto& e : entries) e = entry(rng);

    if (kind == GenKind::XFragile) {
      LabelSet X;
      for (unsigned i = 0; i < params.x_rows; ++i) X.insert(rows[i]);
      for (unsigned j = 0; j < params.x_cols; ++j) X.insert(cols[j]);
      for (unsigned i = 0; i < params.x_rows; ++i)
        for (unsigned j = 0; j < params.x_cols; ++j) entries[i * params.cols + j] = 0;
      LabeledMatrix A(F, rows, cols, std::move(entries));
      if (is_X_fragile_matrix(A, X)) {
        Task task{TaskKind::XFragile, X, std::nullopt, {}, {}};
        return {InstanceFile{ReprMatroid(std::move(A)), std::move(task), params.seed}, rejections};
      }
    } else {
      std::vector<Label> shuffled = all;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      const LabelSet EN(shuffled.begin(), shuffled.begin() + params.minor_size);
      LabeledMatrix A(F, rows, cols, std::move(entries));
      ReprMatroid M(A);
      ReprMatroid N(submatrix(A, EN));
      if (is_N_fragile(M, N)) {
        Task task{TaskKind::NFragile, {}, std::move(N), {}, {}};
        return {InstanceFile{std::move(M), std::move(task), params.seed}, rejections};
      }
    }
    ++rejections;
  }
  throw Error(ErrorKind::Exhausted, "no accepted instance after " + std::to_string(params.max_attempts) +
                                        " attempts");
}

}  // namespace matfrag
