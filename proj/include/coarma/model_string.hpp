#pragma once

#include <string>
#include <vector>

#include "coarma/estimation.hpp"
#include "coarma/margins.hpp"

namespace coarma {

/// A parsed CLI model string, following the naming scheme
///   <margin>-CoARMA(p,q)-(<ar pairs>)-(<mag pairs>)
///   <margin>-AR(p)-(<pairs>)
///   <margin>-MAG(q)-(<pairs>)
/// Pair codes: i, n, t, c, c180, g, g180, f plus long family names.
/// A bare code or '?' parameters mark free parameters to estimate;
/// numeric parameters are fixed.
struct ParsedModel {
  MarginKind margin = MarginKind::Normal;
  CoarmaSpec spec;                     // free slots hold start values
  std::vector<FreeParam> free_params;

  bool has_free() const { return !free_params.empty(); }
};

ParsedModel parse_model_string(const std::string& text);

/// Canonical printable form; parse(format(m)) reproduces m.
std::string format_model_string(const ParsedModel& model);

}  // namespace coarma
