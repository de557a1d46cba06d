// Serial depth-first enumeration.  F fibers come from the affine solver rather
// than a scan, so this path shares only the recursion check with the parallel
// kernel.

#include "dtower/towers.hpp"
#include "towers_detail.hpp"

namespace dtower {

namespace {

void extend(const TowerParams& params, const FieldPtr& ctx, Variant variant, unsigned len,
            const std::vector<FieldElem>& cands, std::vector<FieldElem>& prefix, std::vector<TowerPoint>& out) {
  if (prefix.size() == len) {
    out.push_back(TowerPoint::make(params, ctx, variant, prefix));
    return;
  }
  const FieldElem prev = prefix.back();
  if (variant == Variant::F) {
    for (const auto& y : fiber_solutions(params, ctx, prev)) {
      prefix.push_back(y);
      extend(params, ctx, variant, len, cands, prefix, out);
      prefix.pop_back();
    }
    return;
  }
  for (const auto& y : cands) {
    if (!detail::step_holds(params, *ctx, variant, prev, y)) continue;
    prefix.push_back(y);
    extend(params, ctx, variant, len, cands, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<TowerPoint> enumerate_rational_serial(const TowerParams& params, unsigned n, Variant variant, EnumOptions opts) {
  const unsigned len = detail::coordinate_count(variant, n);
  FieldPtr ctx = make_ambient(params, params.m, opts.field);
  std::vector<FieldElem> cands;
  for (std::uint64_t i = 1; i < ctx->size(); ++i) cands.push_back(ctx->from_index(i));
  std::vector<TowerPoint> out;
  std::vector<FieldElem> prefix;
  for (const auto& c : cands) {
    prefix.assign(1, c);
    extend(params, ctx, variant, len, cands, prefix, out);
  }
  return out;
}

}  // namespace dtower
