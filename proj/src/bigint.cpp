#include "assouad/bigint.hpp"

#include "assouad/error.hpp"

#include <cmath>

namespace assouad {

long double log_big(const BigInt& x) {
    if (x <= 0) {
        throw Error(ErrorKind::InvalidArgument, "log of a non-positive integer");
    }
    const std::size_t top = boost::multiprecision::msb(x);
    if (top < 64) {
        return std::log(static_cast<long double>(x.convert_to<std::uint64_t>()));
    }
    const std::size_t shift = top - 63;
    const BigInt head = x >> shift;
    return std::log(static_cast<long double>(head.convert_to<std::uint64_t>())) +
           static_cast<long double>(shift) * std::log(2.0L);
}

BigInt pow_big(const BigInt& base, std::uint64_t exponent) {
    BigInt result = 1;
    BigInt b = base;
    while (exponent > 0) {
        if (exponent & 1U) {
            result *= b;
        }
        exponent >>= 1U;
        if (exponent > 0) {
            b *= b;
        }
    }
    return result;
}

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::EmptySubshift: return "EmptySubshift";
        case ErrorKind::InvalidSymbol: return "InvalidSymbol";
        case ErrorKind::DuplicatePair: return "DuplicatePair";
        case ErrorKind::EnumerationCapExceeded: return "EnumerationCapExceeded";
        case ErrorKind::StateBlowup: return "StateBlowup";
        case ErrorKind::NonConvergence: return "NonConvergence";
        case ErrorKind::EmptyInput: return "EmptyInput";
        case ErrorKind::InvalidScale: return "InvalidScale";
        case ErrorKind::ScaleOrder: return "ScaleOrder";
        case ErrorKind::CenterBlockNotAllowed: return "CenterBlockNotAllowed";
        case ErrorKind::InvalidCenter: return "InvalidCenter";
        case ErrorKind::InvalidSystem: return "InvalidSystem";
        case ErrorKind::ConditionalNotConverged: return "ConditionalNotConverged";
        case ErrorKind::ThetaOutOfRange: return "ThetaOutOfRange";
        case ErrorKind::ScaleWindow: return "ScaleWindow";
        case ErrorKind::DegenerateGrid: return "DegenerateGrid";
        case ErrorKind::EmptyTable: return "EmptyTable";
        case ErrorKind::CapExceeded: return "CapExceeded";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::ConfigSyntax: return "ConfigSyntax";
        case ErrorKind::ConfigSchema: return "ConfigSchema";
    }
    return "Unknown";
}

}  // namespace assouad
