#pragma once

#include <json.hpp>

#include "opcalc/expansion_dx.hpp"
#include "opcalc/expansion_xd.hpp"
#include "opcalc/series.hpp"
#include "opcalc/umbral.hpp"

namespace opcalc {

using Json = nlohmann::ordered_json;

/// Rationals and polynomials serialize as canonical strings.
Json to_json(const Rat& r);
Json to_json(const Poly& p);
/// {"coefficients": [...], "exact": bool, "trunc_order": int}
Json to_json(const SSeries& f);

Json to_json(const DiagonalFit& fit);
Json to_json(const DxCheckReport& report);
Json to_json(const ConvergenceReport& cert);
Json to_json(const XDExpansion& e);
Json to_json(const DXExpansion& e);
/// Array of canonical Poly strings.
Json to_json(const PolySequence& s);

}  // namespace opcalc
