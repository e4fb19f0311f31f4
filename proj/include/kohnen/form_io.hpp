#pragma once

#include <filesystem>
#include <string>

#include "kohnen/forms.hpp"

// JSON persistence for forms:
//   {"ell":6,"weight":"13/2","level":4,"precision":N,"coeffs":[[n,"c(n)"],...]}
// Only nonzero coefficients are listed, sorted by n, as decimal strings.
namespace kohnen::forms {

std::string to_json(const HalfIntegralForm& form);

/// Throws ValidationError on malformed documents or invariant violations.
HalfIntegralForm from_json(const std::string& text);

void save_form(const HalfIntegralForm& form, const std::filesystem::path& path);
HalfIntegralForm load_form(const std::filesystem::path& path);

}  // namespace kohnen::forms
