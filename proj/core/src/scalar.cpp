#include "reflekt/scalar.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <string>

#include "reflekt/errors.hpp"

namespace reflekt {

namespace {

[[noreturn]] void mismatch(const char* op) {
  throw BackendMismatch(std::string("mixed rational/float operands in ") + op);
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw InvalidArgument("empty number");
  auto dot = s.find('.');
  auto exp = s.find_first_of("eE");
  if (exp != std::string::npos) {
    throw InvalidArgument("exponent notation not accepted for exact numbers: " + s);
  }
  try {
    if (dot == std::string::npos) {
      Rational q(s, 10);
      if (q.get_den() == 0) throw InvalidArgument("zero denominator: " + s);
      q.canonicalize();
      return q;
    }
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac_len = s.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+") throw InvalidArgument("bad decimal: " + s);
    if (digits[0] == '+') digits.erase(0, 1);
    mpz_class num(digits, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    Rational q(num, den);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw InvalidArgument("not a number: " + s);
  }
}

}  // namespace

std::string_view to_string(Backend backend) {
  return backend == Backend::rational ? "rational" : "float";
}

Backend parse_backend(std::string_view text) {
  if (text == "rational" || text == "exact") return Backend::rational;
  if (text == "float" || text == "floating") return Backend::floating;
  throw InvalidArgument("unknown backend: " + std::string(text));
}

Rational make_rational(long num, long den) {
  if (den == 0) throw InvalidArgument("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Scalar Scalar::from_double(double value) { return Scalar(value); }

Scalar Scalar::integer(long value, Backend backend) {
  if (backend == Backend::rational) return Scalar(Rational(value));
  return Scalar(static_cast<double>(value));
}

Scalar Scalar::fraction(long num, long den, Backend backend) {
  if (backend == Backend::rational) return Scalar(make_rational(num, den));
  if (den == 0) throw InvalidArgument("zero denominator");
  return Scalar(static_cast<double>(num) / static_cast<double>(den));
}

Scalar Scalar::parse(std::string_view text, Backend backend) {
  if (backend == Backend::rational) return Scalar(parse_rational(text));
  std::string s(text);
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    return Scalar(parse_rational(s).get_d());
  }
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw InvalidArgument("not a number: " + s);
  return Scalar(value);
}

const Rational& Scalar::rational() const {
  if (auto* q = std::get_if<Rational>(&value_)) return *q;
  throw BackendMismatch("rational value requested from a float scalar");
}

double Scalar::to_double() const {
  if (auto* q = std::get_if<Rational>(&value_)) return q->get_d();
  return std::get<double>(value_);
}

Scalar Scalar::convert(Backend backend) const {
  if (backend == this->backend()) return *this;
  if (backend == Backend::floating) return Scalar(std::get<Rational>(value_).get_d());
  double d = std::get<double>(value_);
  if (!std::isfinite(d)) throw InvalidArgument("non-finite float has no rational value");
  return Scalar(Rational(d));
}

int Scalar::sign(double tol) const {
  if (auto* q = std::get_if<Rational>(&value_)) return sgn(*q);
  double d = std::get<double>(value_);
  if (d > tol) return 1;
  if (d < -tol) return -1;
  return 0;
}

Scalar Scalar::abs() const {
  if (auto* q = std::get_if<Rational>(&value_)) return Scalar(Rational(::abs(*q)));
  return Scalar(std::fabs(std::get<double>(value_)));
}

Scalar Scalar::operator-() const {
  if (auto* q = std::get_if<Rational>(&value_)) return Scalar(Rational(-*q));
  return Scalar(-std::get<double>(value_));
}

template <typename Op>
void apply_binary(std::variant<Rational, double>& lhs, const std::variant<Rational, double>& rhs,
                  const char* name, Op op) {
  if (auto* q = std::get_if<Rational>(&lhs)) {
    auto* o = std::get_if<Rational>(&rhs);
    if (!o) mismatch(name);
    op(*q, *o);
  } else {
    auto* o = std::get_if<double>(&rhs);
    if (!o) mismatch(name);
    op(std::get<double>(lhs), *o);
  }
}

Scalar& Scalar::operator+=(const Scalar& other) {
  apply_binary(value_, other.value_, "+", [](auto& a, const auto& b) { a += b; });
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) {
  apply_binary(value_, other.value_, "-", [](auto& a, const auto& b) { a -= b; });
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& other) {
  apply_binary(value_, other.value_, "*", [](auto& a, const auto& b) { a *= b; });
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& other) {
  if (auto* q = std::get_if<Rational>(&value_)) {
    auto* o = std::get_if<Rational>(&other.value_);
    if (!o) mismatch("/");
    if (sgn(*o) == 0) throw InvalidArgument("division by zero");
    *q /= *o;
  } else {
    auto* o = std::get_if<double>(&other.value_);
    if (!o) mismatch("/");
    if (*o == 0.0) throw InvalidArgument("division by zero");
    std::get<double>(value_) /= *o;
  }
  return *this;
}

void Scalar::sub_mul(const Scalar& a, const Scalar& b) {
  if (auto* q = std::get_if<Rational>(&value_)) {
    auto* qa = std::get_if<Rational>(&a.value_);
    auto* qb = std::get_if<Rational>(&b.value_);
    if (!qa || !qb) mismatch("sub_mul");
    thread_local Rational tmp;
    mpq_mul(tmp.get_mpq_t(), qa->get_mpq_t(), qb->get_mpq_t());
    mpq_sub(q->get_mpq_t(), q->get_mpq_t(), tmp.get_mpq_t());
  } else {
    auto* da = std::get_if<double>(&a.value_);
    auto* db = std::get_if<double>(&b.value_);
    if (!da || !db) mismatch("sub_mul");
    std::get<double>(value_) -= *da * *db;
  }
}

void Scalar::add_mul(const Scalar& a, const Scalar& b) {
  if (auto* q = std::get_if<Rational>(&value_)) {
    auto* qa = std::get_if<Rational>(&a.value_);
    auto* qb = std::get_if<Rational>(&b.value_);
    if (!qa || !qb) mismatch("add_mul");
    thread_local Rational tmp;
    mpq_mul(tmp.get_mpq_t(), qa->get_mpq_t(), qb->get_mpq_t());
    mpq_add(q->get_mpq_t(), q->get_mpq_t(), tmp.get_mpq_t());
  } else {
    auto* da = std::get_if<double>(&a.value_);
    auto* db = std::get_if<double>(&b.value_);
    if (!da || !db) mismatch("add_mul");
    std::get<double>(value_) += *da * *db;
  }
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.backend() != b.backend()) mismatch("==");
  if (a.is_rational()) return a.rational() == b.rational();
  return std::fabs(std::get<double>(a.value_) - std::get<double>(b.value_)) <= kDefaultTolerance;
}

std::string Scalar::to_string() const {
  if (auto* q = std::get_if<Rational>(&value_)) {
    return q->get_str();
  }
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), std::get<double>(value_));
  (void)ec;
  return std::string(buf.data(), ptr);
}

int compare(const Scalar& a, const Scalar& b, double tol) {
  if (a.backend() != b.backend()) mismatch("compare");
  if (a.is_rational()) {
    int c = cmp(a.rational(), b.rational());
    return (c > 0) - (c < 0);
  }
  double diff = a.to_double() - b.to_double();
  if (diff > tol) return 1;
  if (diff < -tol) return -1;
  return 0;
}

bool exact_less(const Scalar& a, const Scalar& b) {
  if (a.backend() != b.backend()) mismatch("exact_less");
  if (a.is_rational()) return a.rational() < b.rational();
  return a.to_double() < b.to_double();
}

}  // namespace reflekt
