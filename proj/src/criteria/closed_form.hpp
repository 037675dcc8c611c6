// Closed-form recovery expressions. Internal to criteria3.
#pragma once

#include <array>
#include <optional>
#include <vector>

#include "lincheck/criteria/criteria3.hpp"

namespace lincheck::criteria::detail {

RationalExpr closed_form_delta(const CubicCoeffs& A);

/// (a, ..., f) from the adjugate blocks, or nullopt when Δ is identically zero.
std::optional<std::array<RationalExpr, 6>> closed_form_unknowns(const CubicCoeffs& A,
                                                                const std::vector<RationalExpr>& D);

}  // namespace lincheck::criteria::detail
