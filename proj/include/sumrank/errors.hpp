#pragma once

#include <stdexcept>
#include <string>

namespace sumrank {

enum class Err {
    NonPrimePowerQ,
    ReducibleModulus,
    ThetaNotGenerator,
    LayerMismatch,
    ZeroElementForInverseIdentity,
    QLessThanTwo,
    TwistMismatch,
    DivisionByZeroPolynomial,
    BothZero,
    ZeroOperand,
    TooSmallT,
    BlockCountMismatch,
    ShapeMismatch,
    InfeasibleWeight,
    DependentBetaBlock,
    ConjugateXiEntries,
    BadDimension,
    BlockTooWide,
    KernelDimensionUnexpected,
    DegreeTooHigh,
    AllSequencesEmpty,
    AttemptBudgetExceeded,
    BadSeed,
    ZeroPivot,
    RadiusExceeded,
    ConfigError,
};

class Error : public std::runtime_error {
  public:
    Error(Err code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Err code() const { return code_; }

  private:
    Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Err code, const std::string& what) {
    if (!cond) fail(code, what);
}

}  // namespace sumrank
