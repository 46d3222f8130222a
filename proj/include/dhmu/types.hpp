#pragma once

#include <Eigen/Core>

namespace dhmu {

using Index = Eigen::Index;

template <typename Scalar>
using Vector = Eigen::Vector<Scalar, Eigen::Dynamic>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

// Resource caps. Constructions that would exceed them fail with
// std::length_error instead of attempting the allocation.
inline constexpr Index kMaxMomentIndex = Index(1) << 20;
inline constexpr Index kMaxMatrixEntries = Index(1) << 26;
inline constexpr Index kMaxCoefficients = Index(1) << 16;

}  // namespace dhmu
