#pragma once

// When built with PB_POISON_FLOAT, FloatTrapGuard unmasks hardware
// floating-point exceptions for the lifetime of a scope. The exact code
// paths perform no floating-point arithmetic, so any float sneaking into a
// guarded region raises SIGFPE instead of silently corrupting a verdict.
// Parsing and JSON serialization stay unguarded: third-party code may touch
// the FPU while rejecting non-exact input.

#ifdef PB_POISON_FLOAT

#include <cfenv>

namespace pb {

class FloatTrapGuard {
  public:
    FloatTrapGuard() : previous_(fegetexcept()) {
        std::feclearexcept(FE_ALL_EXCEPT);
        feenableexcept(FE_INVALID | FE_DIVBYZERO | FE_OVERFLOW | FE_UNDERFLOW |
                       FE_INEXACT);
    }
    ~FloatTrapGuard() {
        fedisableexcept(FE_ALL_EXCEPT);
        std::feclearexcept(FE_ALL_EXCEPT);
        if (previous_ >= 0) feenableexcept(previous_);
    }
    FloatTrapGuard(const FloatTrapGuard&) = delete;
    FloatTrapGuard& operator=(const FloatTrapGuard&) = delete;

  private:
    int previous_;
};

} // namespace pb

#else

namespace pb {

class FloatTrapGuard {
  public:
    FloatTrapGuard() = default;
    FloatTrapGuard(const FloatTrapGuard&) = delete;
    FloatTrapGuard& operator=(const FloatTrapGuard&) = delete;
};

} // namespace pb

#endif
