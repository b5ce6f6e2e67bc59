#include "divsmooth/error.hpp"

#include <cstdio>

#include "divsmooth/ext_real.hpp"

namespace divsmooth {

const char* errc_name(Errc code) noexcept
{
    switch (code) {
    case Errc::EmptyVector: return "EmptyVector";
    case Errc::NegativeEntry: return "NegativeEntry";
    case Errc::NotNormalized: return "NotNormalized";
    case Errc::NonFinite: return "NonFinite";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::NotSorted: return "NotSorted";
    case Errc::InfeasibleClip: return "InfeasibleClip";
    case Errc::GammaOutOfRange: return "GammaOutOfRange";
    case Errc::UnsupportedOrder: return "UnsupportedOrder";
    case Errc::OutOfRegime: return "OutOfRegime";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::OracleScaleExceeded: return "OracleScaleExceeded";
    case Errc::NotSortedForThisD: return "NotSortedForThisD";
    case Errc::ConstraintViolated: return "ConstraintViolated";
    case Errc::DomainViolated: return "DomainViolated";
    case Errc::InsideBall: return "InsideBall";
    case Errc::Infeasible: return "Infeasible";
    case Errc::IndeterminateForm: return "IndeterminateForm";
    }
    return "Unknown";
}

ExtReal::ExtReal(double v) : v_(v)
{
    if (std::isnan(v)) throw Error(Errc::IndeterminateForm, "ExtReal: NaN is not an extended real");
}

ExtReal operator+(ExtReal x, ExtReal y)
{
    if ((x.is_pos_inf() && y.is_neg_inf()) || (x.is_neg_inf() && y.is_pos_inf()))
        throw Error(Errc::IndeterminateForm, "ExtReal: inf - inf is undefined");
    return ExtReal(x.v_ + y.v_);
}

ExtReal operator-(ExtReal x, ExtReal y) { return x + (-y); }

ExtReal operator*(double s, ExtReal x)
{
    if (s == 0.0 && !x.is_finite()) throw Error(Errc::IndeterminateForm, "ExtReal: 0 * inf is undefined");
    return ExtReal(s * x.v_);
}

std::string ExtReal::to_string() const
{
    if (is_pos_inf()) return "inf";
    if (is_neg_inf()) return "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v_);
    return buf;
}

}  // namespace divsmooth
