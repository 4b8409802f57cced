#pragma once

#include <string_view>

#include "circleflow/spectral.hpp"

namespace circleflow {

/// Conformal factor mini-language:
///
///   spec    := number
///            | sum                      e.g. "2+cos", "1 + 0.2*cos2 - 0.1 sin3"
///            | "coeffs:" list           c0, a1, b1, a2, b2, ...
///            | "expcoeffs:" list        exp of the same trigonometric polynomial
///            | family ["(" params ")"]  BS, YAM, QEXT, SYMQ_CONJ; params
///                                       "c=.., lambda=.., alpha=.."
///            | "csv:" path              nodal "theta,value" rows on a uniform
///                                       grid from 0, resampled to n
///   sum     := term (("+" | "-") term)*
///   term    := number | [number ["*"]] ("cos" | "sin") [integer]
///
/// Throws InvalidArgument on malformed input.
PeriodicFunction parse_factor(std::string_view spec, int n);

}  // namespace circleflow
