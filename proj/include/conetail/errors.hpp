#pragma once

#include <stdexcept>
#include <string>

namespace conetail {

// Error codes, grouped by how the CLI maps them to exit statuses:
// config/validation problems exit with 2, numeric/hypothesis problems with 3.
enum class ErrorCode {
    // validation class
    ZeroExponent,
    DimensionMismatch,
    BadParam,
    BadModel,
    DomainError,
    SpectrumInvalid,
    IndexMismatch,
    LevelError,
    UnsupportedLevel,
    UnsupportedRule,
    UnsupportedCount,
    UnsupportedModel,
    // numeric/hypothesis class
    ConeMismatch,
    HypothesisViolated,
    AssumptionAViolated,
    RegimeMismatch,
    NullConvOnly,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::ZeroExponent: return "ZeroExponent";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::BadParam: return "BadParam";
        case ErrorCode::BadModel: return "BadModel";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::SpectrumInvalid: return "SpectrumInvalid";
        case ErrorCode::IndexMismatch: return "IndexMismatch";
        case ErrorCode::LevelError: return "LevelError";
        case ErrorCode::UnsupportedLevel: return "UnsupportedLevel";
        case ErrorCode::UnsupportedRule: return "UnsupportedRule";
        case ErrorCode::UnsupportedCount: return "UnsupportedCount";
        case ErrorCode::UnsupportedModel: return "UnsupportedModel";
        case ErrorCode::ConeMismatch: return "ConeMismatch";
        case ErrorCode::HypothesisViolated: return "HypothesisViolated";
        case ErrorCode::AssumptionAViolated: return "AssumptionAViolated";
        case ErrorCode::RegimeMismatch: return "RegimeMismatch";
        case ErrorCode::NullConvOnly: return "NullConvOnly";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
          code_(code) {}

    ErrorCode code() const { return code_; }

    // true for errors a config parser should report (CLI exit 2),
    // false for errors arising from the math itself (CLI exit 3)
    bool is_validation() const {
        switch (code_) {
            case ErrorCode::ConeMismatch:
            case ErrorCode::HypothesisViolated:
            case ErrorCode::AssumptionAViolated:
            case ErrorCode::RegimeMismatch:
            case ErrorCode::NullConvOnly:
                return false;
            default:
                return true;
        }
    }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace conetail
