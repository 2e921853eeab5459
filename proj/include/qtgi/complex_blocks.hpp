#pragma once

#include <cstddef>
#include <optional>

#include "qtgi/qmatrix.hpp"

/// Generalized inverses of plain complex matrices. These act on individual
/// frequency blocks of the tensor pipeline, where blocks away from the
/// self-paired frequencies carry no quaternion structure of their own.
namespace qtgi::blocks {

struct Svd {
  CMatrix U;
  RVector S;
  CMatrix V;
};

Svd svd(const CMatrix& x);
RVector singular_values(const CMatrix& x);

/// Default relative rank tolerance for a block: max(rows, cols) * 2^-52.
double default_rtol(const CMatrix& x);

/// Rank decisions count singular values above rtol * scale. `scale` defaults
/// to the block's own largest singular value; blocks cut from one frequency
/// stack should share the stack's scale, otherwise a block that is zero up
/// to DFT roundoff looks full rank.
std::size_t rank(const CMatrix& x, std::optional<double> rtol = std::nullopt,
                 std::optional<double> scale = std::nullopt);
CMatrix pinv(const CMatrix& x, std::optional<double> rtol = std::nullopt, std::optional<double> scale = std::nullopt);
/// Pseudoinverse restricted to the leading `keep` singular triplets.
CMatrix pinv_leading(const CMatrix& x, std::size_t keep);
CMatrix power(const CMatrix& x, std::size_t k);
/// Smallest k with rank(x^{k+1}) = rank(x^k). The rank of x^k is judged
/// against scale^k, the size x^k would have without cancellation.
std::size_t index(const CMatrix& x, std::optional<double> rtol = std::nullopt,
                  std::optional<double> scale = std::nullopt);

struct Drazin {
  CMatrix inverse;
  std::size_t index = 0;
};
/// A^D = A^k (A^{2k+1})^+ A^k with k = index(A).
Drazin drazin(const CMatrix& x, std::optional<double> rtol = std::nullopt,
              std::optional<double> scale = std::nullopt);

struct FullRank {
  CMatrix F;
  CMatrix G;
  std::size_t r = 0;
};
FullRank full_rank_decomposition(const CMatrix& x, std::optional<double> rtol = std::nullopt,
                                 std::optional<double> scale = std::nullopt);

}  // namespace qtgi::blocks
