#pragma once

#include <stdexcept>
#include <string>

namespace nilscroll {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define NILSCROLL_ERROR(Name)                                          \
    struct Name : Error {                                              \
        explicit Name(const std::string& what = #Name) : Error(what) {} \
    }

NILSCROLL_ERROR(OutOfGrid);
NILSCROLL_ERROR(BadInitialFrame);
NILSCROLL_ERROR(BadFrame);
NILSCROLL_ERROR(DegenerateMetric);
NILSCROLL_ERROR(DegeneratePoint);
NILSCROLL_ERROR(NotNull);
NILSCROLL_ERROR(ZeroRuling);
NILSCROLL_ERROR(MixedBeta);
NILSCROLL_ERROR(ChartInvalid);
NILSCROLL_ERROR(NotClosed);
NILSCROLL_ERROR(NotLorentz);
NILSCROLL_ERROR(ZeroC3);
NILSCROLL_ERROR(AlphaVanishes);
NILSCROLL_ERROR(BetaNotHalf);
NILSCROLL_ERROR(BetaZero);
NILSCROLL_ERROR(ZeroB3);
NILSCROLL_ERROR(TooFewPoints);
NILSCROLL_ERROR(UnknownName);
NILSCROLL_ERROR(BadInput);

#undef NILSCROLL_ERROR

}  // namespace nilscroll
