#pragma once

#include <stdexcept>
#include <string>

namespace divsmooth {

enum class Errc {
    EmptyVector,
    NegativeEntry,
    NotNormalized,
    NonFinite,
    DimensionMismatch,
    IndexOutOfRange,
    NotSorted,
    InfeasibleClip,
    GammaOutOfRange,
    UnsupportedOrder,
    OutOfRegime,
    InvalidArgument,
    OracleScaleExceeded,
    NotSortedForThisD,
    ConstraintViolated,
    DomainViolated,
    InsideBall,
    Infeasible,
    IndeterminateForm,
};

/// Stable identifier used in machine-readable error output.
const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace divsmooth
