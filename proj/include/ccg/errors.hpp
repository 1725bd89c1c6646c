#pragma once

#include <stdexcept>
#include <string>

namespace ccg {

enum class Errc {
    SpaceMismatch,
    DegenerateGeodesic,
    DegenerateAngle,
    OutsideModelDomain,
    OutOfRange,
    UnsupportedCongruence,
    UnsupportedCycle,
    UnboundedArc,
    NonCompact,
    BaseNotInterior,
    EmptyInterior,
    ParseError,
    CaseNotRealized,
    InvalidArgument,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Errc code, const std::string& what) {
    if (!cond) fail(code, what);
}

}  // namespace ccg
