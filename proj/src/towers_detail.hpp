#pragma once

#include "dtower/towers.hpp"

namespace dtower::detail {

/// Whether `next` may follow `prev` in a point of the given variant.
bool step_holds(const TowerParams& params, const FieldCtx& ctx, Variant v, const FieldElem& prev, const FieldElem& next);
/// Coordinates stored for a level-n point.
unsigned coordinate_count(Variant v, unsigned n);

}  // namespace dtower::detail
