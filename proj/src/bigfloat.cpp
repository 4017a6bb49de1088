#include "latcount/bigfloat.hpp"

#include <utility>

namespace latcount {

BigFloat::BigFloat() { mpfr_init2(v_, kPrec); mpfr_set_zero(v_, 1); }

BigFloat::BigFloat(const BigFloat& o) {
    mpfr_init2(v_, kPrec);
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, kPrec);
    mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(BigFloat o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::of(long v) {
    BigFloat r;
    mpfr_set_si(r.v_, v, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::of(const Rat& v) {
    BigFloat r;
    mpfr_set_q(r.v_, v.get_mpq_t(), MPFR_RNDN);
    return r;
}

BigFloat BigFloat::operator+(const BigFloat& o) const {
    BigFloat r;
    mpfr_add(r.v_, v_, o.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::operator-(const BigFloat& o) const {
    BigFloat r;
    mpfr_sub(r.v_, v_, o.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::operator*(const BigFloat& o) const {
    BigFloat r;
    mpfr_mul(r.v_, v_, o.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::operator/(const BigFloat& o) const {
    BigFloat r;
    mpfr_div(r.v_, v_, o.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::exp() const {
    BigFloat r;
    mpfr_exp(r.v_, v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::abs() const {
    BigFloat r;
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    return r;
}

bool BigFloat::operator<(const BigFloat& o) const { return mpfr_cmp(v_, o.v_) < 0; }
bool BigFloat::operator<=(const BigFloat& o) const { return mpfr_cmp(v_, o.v_) <= 0; }

double BigFloat::to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

std::string BigFloat::str(int digits) const {
    char buf[512];
    mpfr_snprintf(buf, sizeof(buf), "%.*Rg", digits, v_);
    return buf;
}

}  // namespace latcount
