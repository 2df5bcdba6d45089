#pragma once

#include <array>

#include "toral/algebra.hpp"
#include "toral/layout.hpp"
#include "toral/partition.hpp"

// Reference computations that share no code with the library paths they
// check.
namespace toral::oracle {

// Four-branch dimension formula, in long double and rearranged algebra.
long double dim_uniform(long double alpha);

// (1'), (2'), (3'), (4'), (7') decided on cross-multiplied integers.
std::array<bool, 5> conditions(const Rational& alpha, const Rational& theta);

// Admissible fillings of the left region of a cardinality family, found by
// walking every assignment of the gap positions. Binary alphabets use a
// Gray-code walk with incremental admissibility; larger ones an odometer.
BigInt count_fillings(const CardinalityFamily& f, const TransitionMatrix& G);

}  // namespace toral::oracle
