#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "graphrd/kernel.hpp"

namespace graphrd {

/// Which cut-norm formula to evaluate. The two are never converted into one
/// another.
enum class CutVariant {
  /// max over S, T of |(1/n^2) sum_{i in S, j in T} D_ij|
  ST,
  /// max over S of (1/n^2) sum_{i in S, j not in S} D_ij (no absolute value)
  SComplement,
};

struct CutNormLimits {
  std::size_t st = 16;
  std::size_t s_complement = 20;
  std::size_t bilinear = 20;
};

/// Value plus maximizing subsets (0-based cell indices, ascending).
struct SubsetCut {
  double value = 0.0;
  std::vector<std::size_t> s;
  std::vector<std::size_t> t;
};

/// Value plus maximizing sign vectors phi, psi in {-1, +1}^n.
struct SignCut {
  double value = 0.0;
  std::vector<int> phi;
  std::vector<int> psi;
};

/// Exhaustive cut norm of a signed step kernel D. Enumerates subsets S in
/// Gray-code order; for ST the best T for a given S is read off the signs of
/// the column sums. Throws BruteForceLimitExceeded.
SubsetCut cut_norm_exact(const Matrix& d, CutVariant variant, const CutNormLimits& limits = {});

/// Exact bilinear form max over phi, psi in {-1,1}^n of (1/n^2) phi^T D psi.
/// For a step kernel this equals the supremum over [-1,1]-valued test
/// functions. Throws BruteForceLimitExceeded.
SignCut cut_norm_bilinear_exact(const Matrix& d, const CutNormLimits& limits = {});

/// Lower bound on the bilinear form by alternating sign maximization. The
/// first round starts from the signs of the heaviest row; later rounds start
/// from random signs drawn from `seed`. Deterministic given seed.
SignCut cut_norm_heuristic(const Matrix& d, int restarts, std::uint64_t seed);

/// (1/n^2) phi^T D psi.
double bilinear_value(const Matrix& d, const std::vector<int>& phi, const std::vector<int>& psi);

}  // namespace graphrd
