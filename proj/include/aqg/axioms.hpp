#pragma once

#include "aqg/modular.hpp"
#include "aqg/report.hpp"

namespace aqg {

/// Exact certification of a presentation on its degree truncation:
/// associativity, coassociativity, counit and antipode laws, the
/// *-structure compatibilities, right invariance and faithfulness of the
/// integral, plus the consistency identities tying the integral to the
/// derived modular data (psi o S = psi(. delta^{-1}), S(delta) =
/// delta^{-1}, the modular maps fixing delta, and the sigma-coproduct
/// exchange law). Every failure carries the witnessing basis tuple and the
/// exact residual.
void run_axiom_checks(const Presentation& p, int max_degree, Recorder& rec);

/// Convenience wrapper: true iff every axiom check passes.
bool presentation_passes_axioms(const Presentation& p, int max_degree);

}  // namespace aqg
