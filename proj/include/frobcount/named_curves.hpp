#pragma once

// A fixed table of non-CM curves over Q in minimal form, addressed by their
// isogeny-class labels.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frobcount/ecpoint.hpp"

namespace frobcount {

struct NamedCurve {
  std::string label;
  std::array<std::int64_t, 5> a;
  std::int64_t conductor;
  std::int64_t discriminant;
};

const std::vector<NamedCurve>& named_curves();

/// Curve over Q with the conductor as its hint; nullopt for an unknown label.
std::optional<Curve> named_curve(const std::string& label);

/// "[a1,...,a6]" via parse_curve, otherwise a label from the table (which requires field Q).
/// Throws ParseError for an unknown label, FieldMismatch for a label over a quadratic field.
Curve resolve_curve(const std::string& text, const NumberField& field, std::optional<i128> cond_hint = std::nullopt);

}  // namespace frobcount
