#pragma once

// Internal entry points shared by the engine translation units.

#include <cstdint>
#include <vector>

#include "magnetic/engine.hpp"

namespace magnetic::detail {

/// Balls for the listed n with radius at most the matching target when the
/// escalation succeeds; `certified` is left false.
std::vector<CoefficientValue> compute_values(const FormSpec& spec, const std::vector<std::int64_t>& ns,
                                             const std::vector<double>& targets, const EngineOptions& options);

/// Rounds the ball parts to integers (radius < 1/2 required) and applies the
/// test perturbation. Returns false if either part is not certified.
bool certify_integer(CoefficientValue& value, const EngineOptions& options);

ComplexBall scale_mpz(const ComplexBall& z, const mpz_class& w);

}  // namespace magnetic::detail
