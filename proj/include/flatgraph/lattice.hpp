#pragma once

#include <cstdint>
#include <vector>

#include "flatgraph/numeric.hpp"

namespace flatgraph::lattice {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Rank over Q of a matrix given by rows. `columns` fixes the width for empty input.
std::size_t rank(const IntMatrix& rows, std::size_t columns);

/// Basis of the integer lattice {x in Z^columns : A x = 0}, computed by unimodular
/// column reduction. Each basis vector has its first nonzero entry positive.
IntMatrix integer_kernel(const IntMatrix& rows, std::size_t columns);

/// Exact inverse of a square matrix; throws std::domain_error if singular.
std::vector<std::vector<Rational>> inverse(const IntMatrix& square);

}  // namespace flatgraph::lattice
