#pragma once

#include <cstdint>

namespace scratchoff {

/// P[X >= l] for X ~ Binomial(t, 2^-d): the chance of at least `l` winning
/// attempts out of `t` independent tries at log2-difficulty `d`.
///
/// The tail is accumulated from saddle-point pmf terms (stirlerr/bd0), summing
/// whichever side of the distribution has fewer terms, so the absolute error
/// stays below 1e-12 for t up to 1e6.
///
/// Degenerate inputs fall out of the definition: l = 0 gives 1, l > t gives 0.
double zeta(uint64_t l, uint64_t t, double d);

/// The single-success bound written as a bare product: t * 2^-d * (1-2^-d)^(t-1).
/// `t` may be fractional so that speedup factors and split budgets can be
/// substituted directly. For integer t this is P[X = 1], a lower bound on
/// zeta(1, t, d). Only l = 1 is defined; other orders throw UnsupportedOrder.
double zeta_paper_literal(uint64_t l, double t, double d);

/// Binomial(t, p) point mass P[X = x], accurate to a few ulp for all t.
double binom_pmf(uint64_t x, uint64_t t, double p);

} // namespace scratchoff
