#pragma once

#include "qlp/scores.hpp"

namespace qlp {

/// Whether path-based scores apply their degree weights. `none` turns RA-L2
/// into the 2-walk count and L3 into the 3-walk count.
enum class Normalization { degree, none };

/// Resource allocation: p_ij = sum over common neighbors z of 1 / k_z.
ScoreMatrix ra_l2(const Graph& g, Normalization norm = Normalization::degree);

/// p_ij = sum over 3-walks i-k-l-j of 1 / sqrt(k_k * k_l)  (A D^-1/2 A D^-1/2 A).
ScoreMatrix l3(const Graph& g, Normalization norm = Normalization::degree);

/// P = A (A^2 + alpha I)^-1 A^2 via a Cholesky solve. Symmetric, may be
/// signed. Throws std::invalid_argument for alpha <= 0 and NumericError if
/// the factorization fails.
ScoreMatrix lo(const Graph& g, double alpha);

/// Cannistraci-Hebb on 2-paths. With LC = common neighbors of i and j:
///   p_ij = sum_{z in LC} (1 + d_int(z)) / (1 + d_ext(z))
/// where d_int(z) counts neighbors of z inside LC and d_ext(z) counts
/// neighbors outside LC and {i, j}.
ScoreMatrix ch_l2(const Graph& g);

/// Cannistraci-Hebb on 3-paths i-k-l-j (k != j, l != i):
///   p_ij = sum sqrt((1 + d_int(k)) (1 + d_int(l))) / sqrt((1 + d_ext(k)) (1 + d_ext(l)))
/// with LC the set of all intermediate nodes on 3-paths between i and j.
ScoreMatrix ch_l3(const Graph& g);

}  // namespace qlp
