#pragma once

#include <Eigen/Core>

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fdes {

/// Membership grade in [0,1], stored as a reduced rational.
///
/// Values come from decimal literals and from products of two grades
/// (the D-factor scaling), so every quantity the checkers compare is an exact
/// terminating decimal. min, max and multiplication never round.
class Degree {
 public:
  constexpr Degree() = default;
  // Integer constructor exists for Eigen's Scalar(0) / Scalar(1) idiom.
  Degree(int v);  // NOLINT(google-explicit-constructor)

  static Degree from_ratio(std::int64_t num, std::int64_t den);

  /// Parses "0", "1", "0.35", ".5", "1.000" or "3/8". Throws std::invalid_argument
  /// on malformed text and std::out_of_range outside [0,1].
  static Degree parse(std::string_view text);

  static Degree zero() { return Degree{}; }
  static Degree one() { return from_ratio(1, 1); }

  std::int64_t numerator() const { return num_; }
  std::int64_t denominator() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  Degree complement() const;  // 1 - x

  explicit operator double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// Shortest exact decimal ("0.08", "1", "0"); falls back to "p/q" for
  /// non-terminating values.
  std::string str() const;

  friend Degree operator*(const Degree& a, const Degree& b);
  Degree& operator*=(const Degree& o) { return *this = *this * o; }

  friend bool operator==(const Degree& a, const Degree& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend std::strong_ordering operator<=>(const Degree& a, const Degree& b) {
    const __int128 l = static_cast<__int128>(a.num_) * b.den_;
    const __int128 r = static_cast<__int128>(b.num_) * a.den_;
    return l <=> r;
  }

  friend std::ostream& operator<<(std::ostream& os, const Degree& d);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// Eigen reductions (maxCoeff, redux) resolve these through ADL.
inline Degree min(const Degree& a, const Degree& b) { return b < a ? b : a; }
inline Degree max(const Degree& a, const Degree& b) { return a < b ? b : a; }

}  // namespace fdes

template <>
struct std::hash<fdes::Degree> {
  std::size_t operator()(const fdes::Degree& d) const noexcept {
    return std::hash<std::int64_t>{}(d.numerator()) * 1000003u ^ std::hash<std::int64_t>{}(d.denominator());
  }
};

namespace Eigen {

template <>
struct NumTraits<fdes::Degree> : GenericNumTraits<fdes::Degree> {
  using Real = fdes::Degree;
  using NonInteger = fdes::Degree;
  using Literal = fdes::Degree;
  using Nested = fdes::Degree;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 3,
    MulCost = 3
  };
  static inline Real epsilon() { return fdes::Degree::zero(); }
  static inline Real dummy_precision() { return fdes::Degree::zero(); }
  static inline Real highest() { return fdes::Degree::one(); }
  static inline Real lowest() { return fdes::Degree::zero(); }
  static inline int digits10() { return 18; }
};

}  // namespace Eigen
