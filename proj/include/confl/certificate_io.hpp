#pragma once

#include <string>

#include "confl/criteria.hpp"

namespace confl {

/// Deterministic line-oriented rendering; parse_certificate reads it back.
std::string render_certificate(const Certificate& cert);
Certificate parse_certificate(const std::string& text, const Trs& trs);

std::string render_witness(const Witness& witness);
Witness parse_witness(const std::string& text, const Trs& trs);

}  // namespace confl
