#pragma once

#include <map>
#include <vector>

#include "rgc/jintegral.hpp"
#include "rgc/moments.hpp"

namespace rgc {

/// One term of a central-moment expansion: weight * lambda^M * J(pattern),
/// with M the number of vertices of the pattern.
using MomentTerms = std::map<OverlapPattern, Rational>;

/// Terms of E[(N_k - E N_k)^3] from the quadruple sum over (i, j, s, t).
MomentTerms third_moment_terms(int k);

/// Terms of E[(N_k - E N_k)^n] from the chaos expansion of N_k, multiplying
/// the chaoses pairwise and taking the expectation of the last product.
/// Supports n in {2, 3, 4}.
MomentTerms nth_moment_terms(int k, int n);

/// Sums the terms with J from the oracle. The standard error combines the
/// oracle errors of the distinct patterns as independent.
MomentValue evaluate_terms(const MomentTerms& terms, const ModelParams& params, JOracle& oracle, int order);

MomentValue third_moment_Nk(const ModelParams& params, int k, JOracle& j3_oracle);
MomentValue nth_moment_assembler(const ModelParams& params, int k, int n, JOracle& j_oracle);

}  // namespace rgc
