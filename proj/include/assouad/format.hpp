#pragma once

#include <string>

namespace assouad {

/// 12 significant digits, shortest general form, locale independent.
std::string format_number(double x);

/// x rounded to 12 significant digits, for JSON emission.
double round12(double x);

}  // namespace assouad
