#include "fdes/degree.hpp"

#include <cctype>
#include <numeric>
#include <ostream>

namespace fdes {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("Degree arithmetic overflow");
  return out;
}

}  // namespace

Degree::Degree(int v) : num_(v), den_(1) {
  if (v < 0 || v > 1) throw std::out_of_range("Degree must lie in [0,1]");
}

Degree Degree::from_ratio(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw std::invalid_argument("Degree denominator must be positive");
  if (num < 0 || num > den) throw std::out_of_range("Degree must lie in [0,1]");
  const std::int64_t g = std::gcd(num, den);
  Degree d;
  d.num_ = g == 0 ? 0 : num / g;
  d.den_ = g == 0 ? 1 : den / g;
  if (d.num_ == 0) d.den_ = 1;
  return d;
}

Degree Degree::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty degree literal");

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto as_int = [&](std::string_view part) {
      if (part.empty() || part.size() > 18) throw std::invalid_argument("bad fraction '" + std::string(text) + "'");
      std::int64_t v = 0;
      for (char c : part) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
          throw std::invalid_argument("bad fraction '" + std::string(text) + "'");
        v = v * 10 + (c - '0');
      }
      return v;
    };
    const std::int64_t num = as_int(text.substr(0, slash));
    const std::int64_t den = as_int(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    if (num > den) throw std::out_of_range("degree '" + std::string(text) + "' exceeds 1");
    return from_ratio(num, den);
  }

  std::int64_t num = 0;
  std::int64_t den = 1;
  bool seen_point = false;
  bool seen_digit = false;
  for (char c : text) {
    if (c == '.') {
      if (seen_point) throw std::invalid_argument("bad decimal '" + std::string(text) + "'");
      seen_point = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      if (c == '-') throw std::out_of_range("degree '" + std::string(text) + "' is negative");
      throw std::invalid_argument("bad decimal '" + std::string(text) + "'");
    }
    seen_digit = true;
    num = checked_mul(num, 10) + (c - '0');
    if (seen_point) den = checked_mul(den, 10);
  }
  if (!seen_digit) throw std::invalid_argument("bad decimal '" + std::string(text) + "'");
  if (num > den) throw std::out_of_range("degree '" + std::string(text) + "' exceeds 1");
  return from_ratio(num, den);
}

Degree Degree::complement() const { return from_ratio(den_ - num_, den_); }

Degree operator*(const Degree& a, const Degree& b) {
  if (a.num_ == 0 || b.num_ == 0) return Degree{};
  const std::int64_t g1 = std::gcd(a.num_, b.den_);
  const std::int64_t g2 = std::gcd(b.num_, a.den_);
  Degree out;
  out.num_ = checked_mul(a.num_ / g1, b.num_ / g2);
  out.den_ = checked_mul(a.den_ / g2, b.den_ / g1);
  return out;
}

std::string Degree::str() const {
  if (num_ == 0) return "0";
  if (num_ == den_) return "1";
  std::int64_t rest = den_;
  int twos = 0;
  int fives = 0;
  while (rest % 2 == 0) {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++fives;
  }
  if (rest != 1) return std::to_string(num_) + "/" + std::to_string(den_);

  const int digits = std::max(twos, fives);
  // scale num/den to num'/10^digits
  __int128 scaled = num_;
  for (int i = 0; i < digits - twos; ++i) scaled *= 2;
  for (int i = 0; i < digits - fives; ++i) scaled *= 5;
  std::string frac;
  for (int i = 0; i < digits; ++i) {
    frac.insert(frac.begin(), static_cast<char>('0' + static_cast<int>(scaled % 10)));
    scaled /= 10;
  }
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  return "0." + frac;
}

std::ostream& operator<<(std::ostream& os, const Degree& d) { return os << d.str(); }

}  // namespace fdes
