#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <variant>

namespace reflekt {

/// Exact rational, always canonical (lowest terms, positive denominator).
using Rational = mpq_class;

enum class Backend { rational, floating };

/// Pivoting and comparison tolerance of the float backend.
inline constexpr double kDefaultTolerance = 1e-9;

std::string_view to_string(Backend backend);
Backend parse_backend(std::string_view text);

/// Builds num/den in lowest terms. Throws InvalidArgument on den == 0.
Rational make_rational(long num, long den = 1);

/**
 * A number that is either an exact rational or a binary64 float.
 *
 * Arithmetic between a rational and a float scalar throws BackendMismatch;
 * nothing is ever converted implicitly. Comparisons of floats go through an
 * explicit tolerance (a <= b iff a - b <= tol).
 */
class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  Scalar(Rational value) : value_(std::move(value)) {}  // NOLINT(implicit)
  Scalar(int value) : value_(Rational(value)) {}        // NOLINT(implicit)
  Scalar(long value) : value_(Rational(value)) {}       // NOLINT(implicit)

  static Scalar from_double(double value);
  static Scalar integer(long value, Backend backend);
  static Scalar zero(Backend backend) { return integer(0, backend); }
  static Scalar one(Backend backend) { return integer(1, backend); }
  static Scalar fraction(long num, long den, Backend backend);

  /// Parses "p", "p/q" or a decimal like "-1.25" (exactly, in rational mode).
  static Scalar parse(std::string_view text, Backend backend);

  Backend backend() const {
    return std::holds_alternative<Rational>(value_) ? Backend::rational : Backend::floating;
  }
  bool is_rational() const { return backend() == Backend::rational; }

  /// Throws BackendMismatch for float scalars.
  const Rational& rational() const;
  double to_double() const;

  /// Same numeric value in the requested backend (rational -> float rounds;
  /// float -> rational is exact for the stored binary64 value).
  Scalar convert(Backend backend) const;

  /// -1, 0, +1. Exact for rationals; |x| <= tol counts as zero for floats.
  int sign(double tol = kDefaultTolerance) const;
  bool is_zero(double tol = kDefaultTolerance) const { return sign(tol) == 0; }

  Scalar abs() const;
  Scalar operator-() const;

  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  Scalar& operator*=(const Scalar& other);
  Scalar& operator/=(const Scalar& other);

  /// *this -= a * b without allocating a temporary scalar.
  void sub_mul(const Scalar& a, const Scalar& b);
  /// *this += a * b.
  void add_mul(const Scalar& a, const Scalar& b);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  /// Exact for rationals, within kDefaultTolerance for floats.
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Rationals as "p/q" ("p" for integers), floats as the shortest round-trip decimal.
  std::string to_string() const;

 private:
  explicit Scalar(double value) : value_(value) {}

  std::variant<Rational, double> value_;
};

/// Three-way comparison under the float tolerance (exact for rationals).
int compare(const Scalar& a, const Scalar& b, double tol = kDefaultTolerance);
inline bool leq(const Scalar& a, const Scalar& b, double tol = kDefaultTolerance) {
  return compare(a, b, tol) <= 0;
}

/// Strict total order used for sorting and dedup: exact value order, no
/// tolerance. Throws on mixed backends.
bool exact_less(const Scalar& a, const Scalar& b);

}  // namespace reflekt
