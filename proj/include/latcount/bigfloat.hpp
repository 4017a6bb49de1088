#pragma once

#include <mpfr.h>

#include <string>

#include "latcount/int_types.hpp"

namespace latcount {

// Minimal arbitrary-precision float for numeric spot checks of closed forms.
// Wraps MPFR at a fixed working precision; only what the tests need.
class BigFloat {
public:
    static constexpr mpfr_prec_t kPrec = 256;

    BigFloat();
    BigFloat(const BigFloat& o);
    BigFloat(BigFloat&& o) noexcept;
    BigFloat& operator=(BigFloat o) noexcept;
    ~BigFloat();

    static BigFloat of(long v);
    static BigFloat of(const Rat& v);

    BigFloat operator+(const BigFloat& o) const;
    BigFloat operator-(const BigFloat& o) const;
    BigFloat operator*(const BigFloat& o) const;
    BigFloat operator/(const BigFloat& o) const;

    BigFloat exp() const;
    BigFloat abs() const;
    bool operator<(const BigFloat& o) const;
    bool operator<=(const BigFloat& o) const;

    double to_double() const;
    std::string str(int digits = 20) const;

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

private:
    mpfr_t v_;
};

}  // namespace latcount
