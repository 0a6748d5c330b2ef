#pragma once

// Exact and arbitrary-precision scalars.
//
// Integer / Rational are GMP's C++ classes. BigReal is a thin RAII owner of an
// mpfr_t that carries its own precision: every value knows how many bits it
// holds, and binary operations produce a result at the larger of the two
// operand precisions. There is no process-wide default precision.

#include <concepts>
#include <gmpxx.h>
#include <mpfr.h>

#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qgamma {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Integer factorial(unsigned long n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

/// binom(x + m, m) as a polynomial in x: (x+1)(x+2)...(x+m)/m!.
/// Agrees with the usual binomial for x >= -m and extends it to all integers.
inline Integer polynomial_binomial(long x, unsigned long m) {
  Integer num = 1;
  for (unsigned long j = 1; j <= m; ++j) num *= Integer(x + static_cast<long>(j));
  return num / factorial(m);
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Working precision in bits.
class Precision {
 public:
  constexpr Precision() = default;
  constexpr explicit Precision(mpfr_prec_t bits) : bits_(bits) {}

  /// P decimal digits plus a fixed guard of 32 bits.
  static Precision digits(int decimal_digits) {
    if (decimal_digits < 1) throw std::invalid_argument("precision must be positive");
    const double bits = std::ceil(decimal_digits * 3.3219280948873623) + 32;
    return Precision(static_cast<mpfr_prec_t>(bits));
  }

  constexpr mpfr_prec_t bits() const { return bits_; }
  int decimal_digits() const { return static_cast<int>((bits_ - 32) / 3.3219280948873623); }

  friend constexpr auto operator<=>(Precision, Precision) = default;

 private:
  mpfr_prec_t bits_ = 64;
};

class BigReal {
 public:
  BigReal() {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_set_zero(v_, 1);
  }
  BigReal(long x, Precision p) {
    mpfr_init2(v_, p.bits());
    mpfr_set_si(v_, x, MPFR_RNDN);
  }
  BigReal(double x, Precision p) {
    mpfr_init2(v_, p.bits());
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  BigReal(const Rational& q, Precision p) {
    mpfr_init2(v_, p.bits());
    mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
  }
  BigReal(const Integer& z, Precision p) {
    mpfr_init2(v_, p.bits());
    mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
  }
  BigReal(const std::string& decimal, Precision p) {
    mpfr_init2(v_, p.bits());
    if (mpfr_set_str(v_, decimal.c_str(), 10, MPFR_RNDN) != 0)
      throw std::invalid_argument("not a decimal number: " + decimal);
  }
  BigReal(const BigReal& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  /// Copy rounded to precision p.
  BigReal(const BigReal& o, Precision p) {
    mpfr_init2(v_, p.bits());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigReal(BigReal&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  BigReal& operator=(const BigReal& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigReal& operator=(BigReal&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigReal() { mpfr_clear(v_); }

  Precision precision() const { return Precision(mpfr_get_prec(v_)); }
  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  /// Raises (never lowers) the stored precision, keeping the value.
  void widen(mpfr_prec_t bits) {
    if (bits > mpfr_get_prec(v_)) mpfr_prec_round(v_, bits, MPFR_RNDN);
  }

  BigReal& operator+=(const BigReal& o) {
    widen(mpfr_get_prec(o.v_));
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  BigReal& operator-=(const BigReal& o) {
    widen(mpfr_get_prec(o.v_));
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  BigReal& operator*=(const BigReal& o) {
    widen(mpfr_get_prec(o.v_));
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  BigReal& operator/=(const BigReal& o) {
    widen(mpfr_get_prec(o.v_));
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  BigReal& operator+=(long x) { mpfr_add_si(v_, v_, x, MPFR_RNDN); return *this; }
  BigReal& operator-=(long x) { mpfr_sub_si(v_, v_, x, MPFR_RNDN); return *this; }
  BigReal& operator*=(long x) { mpfr_mul_si(v_, v_, x, MPFR_RNDN); return *this; }
  BigReal& operator/=(long x) { mpfr_div_si(v_, v_, x, MPFR_RNDN); return *this; }
  BigReal& operator*=(const Rational& q) {
    mpfr_mul_q(v_, v_, q.get_mpq_t(), MPFR_RNDN);
    return *this;
  }
  BigReal& operator+=(const Rational& q) {
    mpfr_add_q(v_, v_, q.get_mpq_t(), MPFR_RNDN);
    return *this;
  }

  BigReal operator-() const {
    BigReal r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
  }

  friend BigReal operator+(BigReal a, const BigReal& b) { return a += b; }
  friend BigReal operator-(BigReal a, const BigReal& b) { return a -= b; }
  friend BigReal operator*(BigReal a, const BigReal& b) { return a *= b; }
  friend BigReal operator/(BigReal a, const BigReal& b) { return a /= b; }
  friend BigReal operator+(BigReal a, long b) { return a += b; }
  friend BigReal operator-(BigReal a, long b) { return a -= b; }
  friend BigReal operator*(BigReal a, long b) { return a *= b; }
  friend BigReal operator/(BigReal a, long b) { return a /= b; }
  friend BigReal operator*(long b, BigReal a) { return a *= b; }
  friend BigReal operator*(BigReal a, const Rational& q) { return a *= q; }
  friend BigReal operator*(const Rational& q, BigReal a) { return a *= q; }
  // a double would otherwise convert silently to long
  template <std::floating_point F> friend BigReal operator+(BigReal, F) = delete;
  template <std::floating_point F> friend BigReal operator-(BigReal, F) = delete;
  template <std::floating_point F> friend BigReal operator*(BigReal, F) = delete;
  template <std::floating_point F> friend BigReal operator/(BigReal, F) = delete;
  template <std::floating_point F> friend BigReal operator*(F, BigReal) = delete;

  friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator<(const BigReal& a, const BigReal& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const BigReal& a, const BigReal& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const BigReal& a, const BigReal& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const BigReal& a, const BigReal& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator<(const BigReal& a, double b) { return mpfr_cmp_d(a.v_, b) < 0; }
  friend bool operator>(const BigReal& a, double b) { return mpfr_cmp_d(a.v_, b) > 0; }

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long_rounded() const { return mpfr_get_si(v_, MPFR_RNDN); }
  Integer to_integer_rounded() const {
    Integer z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
    return z;
  }

  /// log10 of |x|; -inf for zero.
  double log10_abs() const {
    if (is_zero()) return -INFINITY;
    long exp2 = 0;
    const double mant = mpfr_get_d_2exp(&exp2, v_, MPFR_RNDN);
    return std::log10(std::fabs(mant)) + static_cast<double>(exp2) * 0.30102999566398120;
  }

  /// Scientific notation with the given number of significant digits.
  std::string to_string(int digits = 20) const {
    if (is_zero()) return "0";
    if (!is_finite()) return mpfr_nan_p(v_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", digits - 1, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }

  friend std::ostream& operator<<(std::ostream& os, const BigReal& x) { return os << x.to_string(25); }

 private:
  mpfr_t v_;
};

namespace detail {
template <typename F>
BigReal unary(const BigReal& x, F f) {
  BigReal r(0L, x.precision());
  f(r.get(), x.get(), MPFR_RNDN);
  return r;
}
}  // namespace detail

inline BigReal abs(const BigReal& x) { return detail::unary(x, mpfr_abs); }
inline BigReal sqrt(const BigReal& x) { return detail::unary(x, mpfr_sqrt); }
inline BigReal exp(const BigReal& x) { return detail::unary(x, mpfr_exp); }
inline BigReal log(const BigReal& x) { return detail::unary(x, mpfr_log); }
inline BigReal sin(const BigReal& x) { return detail::unary(x, mpfr_sin); }
inline BigReal cos(const BigReal& x) { return detail::unary(x, mpfr_cos); }
inline BigReal atan(const BigReal& x) { return detail::unary(x, mpfr_atan); }
inline BigReal log1p(const BigReal& x) { return detail::unary(x, mpfr_log1p); }
inline BigReal lgamma_abs(const BigReal& x) {
  BigReal r(0L, x.precision());
  int sgn = 0;
  mpfr_lgamma(r.get(), &sgn, x.get(), MPFR_RNDN);
  return r;
}
inline BigReal pow(const BigReal& x, const BigReal& y) {
  BigReal r(0L, std::max(x.precision(), y.precision()));
  mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}
inline BigReal pow(const BigReal& x, long k) {
  BigReal r(0L, x.precision());
  mpfr_pow_si(r.get(), x.get(), k, MPFR_RNDN);
  return r;
}
inline BigReal atan2(const BigReal& y, const BigReal& x) {
  BigReal r(0L, std::max(x.precision(), y.precision()));
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}
inline BigReal max(const BigReal& a, const BigReal& b) { return a < b ? b : a; }
inline BigReal min(const BigReal& a, const BigReal& b) { return a < b ? a : b; }

inline BigReal pi_constant(Precision p) {
  BigReal r(0L, p);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

/// Pair of BigReal. Only the operations the library needs.
struct BigComplex {
  BigReal re;
  BigReal im;

  BigComplex() = default;
  BigComplex(BigReal r, BigReal i) : re(std::move(r)), im(std::move(i)) {}
  explicit BigComplex(BigReal r) : re(std::move(r)), im(0L, re.precision()) {}
  BigComplex(const Rational& q, Precision p) : re(q, p), im(0L, p) {}
  BigComplex(long x, Precision p) : re(x, p), im(0L, p) {}

  static BigComplex i(Precision p) { return {BigReal(0L, p), BigReal(1L, p)}; }
  /// e^{i theta}
  static BigComplex polar(const BigReal& theta) { return {cos(theta), sin(theta)}; }

  Precision precision() const { return std::max(re.precision(), im.precision()); }

  BigComplex& operator+=(const BigComplex& o) { re += o.re; im += o.im; return *this; }
  BigComplex& operator-=(const BigComplex& o) { re -= o.re; im -= o.im; return *this; }
  BigComplex& operator*=(const BigComplex& o) {
    BigReal r = re * o.re - im * o.im;
    BigReal i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  BigComplex& operator/=(const BigComplex& o) {
    BigReal d = o.re * o.re + o.im * o.im;
    BigReal r = (re * o.re + im * o.im) / d;
    BigReal i = (im * o.re - re * o.im) / d;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  BigComplex& operator*=(const BigReal& x) { re *= x; im *= x; return *this; }
  BigComplex& operator/=(const BigReal& x) { re /= x; im /= x; return *this; }
  BigComplex& operator*=(const Rational& q) { re *= q; im *= q; return *this; }
  BigComplex& operator*=(long k) { re *= k; im *= k; return *this; }
  BigComplex& operator/=(long k) { re /= k; im /= k; return *this; }

  BigComplex operator-() const { return {-re, -im}; }
  friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
  friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
  friend BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
  friend BigComplex operator/(BigComplex a, const BigComplex& b) { return a /= b; }
  friend BigComplex operator*(BigComplex a, const BigReal& b) { return a *= b; }
  friend BigComplex operator*(const BigReal& b, BigComplex a) { return a *= b; }
  friend BigComplex operator*(BigComplex a, const Rational& q) { return a *= q; }
  friend BigComplex operator*(const Rational& q, BigComplex a) { return a *= q; }
  friend BigComplex operator*(BigComplex a, long k) { return a *= k; }

  BigComplex conj() const { return {re, -im}; }
  BigReal norm() const { return re * re + im * im; }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }

  std::string to_string(int digits = 20) const {
    return "(" + re.to_string(digits) + ", " + im.to_string(digits) + ")";
  }
  friend std::ostream& operator<<(std::ostream& os, const BigComplex& z) { return os << z.to_string(25); }
};

inline BigReal abs(const BigComplex& z) {
  BigReal r(0L, z.precision());
  mpfr_hypot(r.get(), z.re.get(), z.im.get(), MPFR_RNDN);
  return r;
}
inline BigReal arg(const BigComplex& z) { return atan2(z.im, z.re); }
inline BigComplex exp(const BigComplex& z) {
  BigReal m = exp(z.re);
  return {m * cos(z.im), m * sin(z.im)};
}
inline BigComplex pow(const BigComplex& z, unsigned long k) {
  BigComplex result(1L, z.precision());
  BigComplex base = z;
  while (k) {
    if (k & 1UL) result *= base;
    base *= base;
    k >>= 1;
  }
  return result;
}

// Scalar adaptors used by the templated containers (GradedVector<S>, series).

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(const BigReal& x) { return x.is_zero(); }
inline bool is_zero(const BigComplex& z) { return z.is_zero(); }

template <typename S>
S from_rational(const Rational& q, Precision p);
template <>
inline Rational from_rational<Rational>(const Rational& q, Precision) { return q; }
template <>
inline BigReal from_rational<BigReal>(const Rational& q, Precision p) { return BigReal(q, p); }
template <>
inline BigComplex from_rational<BigComplex>(const Rational& q, Precision p) { return BigComplex(q, p); }

inline BigReal to_real(const Rational& q, Precision p) { return BigReal(q, p); }
inline BigReal to_real(const BigReal& x, Precision) { return x; }

inline BigComplex to_complex(const Rational& q, Precision p) { return BigComplex(q, p); }
inline BigComplex to_complex(const BigReal& x, Precision) { return BigComplex(x); }
inline BigComplex to_complex(const BigComplex& z, Precision) { return z; }

inline BigReal magnitude(const Rational& q, Precision p) { return abs(BigReal(q, p)); }
inline BigReal magnitude(const BigReal& x, Precision) { return abs(x); }
inline BigReal magnitude(const BigComplex& z, Precision) { return abs(z); }

inline std::string scalar_string(const Rational& q) { return q.get_str(); }
inline std::string scalar_string(const BigReal& x) { return x.to_string(30); }
inline std::string scalar_string(const BigComplex& z) { return z.to_string(30); }

/// 10^{-k} at precision p.
inline BigReal tenth_power(long k, Precision p) {
  BigReal ten(10L, p);
  return pow(ten, -k);
}

/// Certified constants at a fixed working precision.
class ConstantTable {
 public:
  ConstantTable(int digits, int k_max) : digits_(digits), k_max_(k_max), prec_(Precision::digits(digits)) {
    if (digits < 15) throw std::invalid_argument("precision below 15 digits is not supported");
    if (k_max < 2) throw std::invalid_argument("zeta table needs K_max >= 2");
    pi_ = pi_constant(prec_);
    gamma_ = BigReal(0L, prec_);
    mpfr_const_euler(gamma_.get(), MPFR_RNDN);
    zeta_.resize(static_cast<std::size_t>(k_max) + 1);
    for (int k = 2; k <= k_max; ++k) {
      BigReal z(0L, prec_);
      mpfr_zeta_ui(z.get(), static_cast<unsigned long>(k), MPFR_RNDN);
      zeta_[static_cast<std::size_t>(k)] = std::move(z);
    }
  }

  int digits() const { return digits_; }
  int k_max() const { return k_max_; }
  Precision precision() const { return prec_; }
  const BigReal& pi() const { return pi_; }
  const BigReal& euler_gamma() const { return gamma_; }
  const BigReal& zeta(int k) const {
    if (k < 2 || k > k_max_) throw std::out_of_range("zeta(" + std::to_string(k) + ") not in table");
    return zeta_[static_cast<std::size_t>(k)];
  }

  /// Absolute tolerance 10^{-P+offset}.
  BigReal tolerance(int offset) const { return tenth_power(digits_ - offset, prec_); }

 private:
  int digits_;
  int k_max_;
  Precision prec_;
  BigReal pi_;
  BigReal gamma_;
  std::vector<BigReal> zeta_;
};

inline ConstantTable make_constants(int digits = 50, int k_max = 64) { return ConstantTable(digits, k_max); }

}  // namespace qgamma
