#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace rcpkit {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Sorted, duplicate-free set of 0-based column indices.
using Support = std::vector<Index>;

// Indices of the nonzero entries of x, ascending.
Support support_of(const Vector& x);

// Sorted union of two supports.
Support support_union(const Support& a, const Support& b);

bool supports_disjoint(const Support& a, const Support& b);

}  // namespace rcpkit
