#pragma once

#include "json.hpp"

#include "heunwell/heun.hpp"
#include "heunwell/potential.hpp"
#include "heunwell/spectrum.hpp"

namespace heunwell {

/// Rounds to 15 significant digits so JSON output is reproducible; NaN and
/// infinities become null.
nlohmann::json json_number(double value);

nlohmann::json to_json(const PotentialParams& p);

/// Flat record: real scalars plus "<name>_re" / "<name>_im" pairs.
nlohmann::json to_json(const HeunData& h);

/// {energies, node_count (null when unavailable), bargmann, calogero, chadan,
/// small_a_cap, warnings}.
nlohmann::json to_json(const SpectrumResult& r);

}  // namespace heunwell
