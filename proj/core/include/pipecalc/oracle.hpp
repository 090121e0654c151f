#pragma once

#include <cstddef>
#include <vector>

#include "pipecalc/pipeline.hpp"

/// First-principles recomputation used to cross-check the production code
/// paths. Everything here works from the pointwise definitions by pairwise
/// comparison and shares no code with the scanning implementations.
namespace pipecalc::oracle {

/// Capacities in stage order.
std::vector<Rational> capacities(const Pipeline& p);

/// factor(v) * capacity(v) in stage order, each product formed separately.
std::vector<Rational> products(const Pipeline& p, const Multiplier& a);

/// Indices i with values[i] <= values[j] for every j (quadratic).
std::vector<std::size_t> minimisers(const std::vector<Rational>& values);

/// The value at any minimiser. `values` must be nonempty.
Rational minimum(const std::vector<Rational>& values);

/// Stage ids at the given indices.
std::vector<StageId> ids_at(const Pipeline& p, const std::vector<std::size_t>& indices);

}  // namespace pipecalc::oracle
