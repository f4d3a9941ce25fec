#pragma once

// Max-min (⊙) algebra over [0,1] on Eigen dense storage.
//
// Everything is templated on the scalar: fdes::Degree is the exact default,
// double is the opt-in fast mode. Only comparisons differ between the two
// (double compares with an absolute tolerance); ⊙ itself only selects
// existing entries, so vectors produced by ⊙ compare exactly in both modes.

#include "fdes/degree.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace fdes {

template <class Scalar>
using StateVector = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

template <class Scalar>
using EventMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Raised when dimensions of vectors, matrices or automata disagree.
class ShapeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<Degree> {
  static constexpr bool exact = true;
  static Degree zero() { return Degree::zero(); }
  static Degree one() { return Degree::one(); }
  static bool leq(const Degree& a, const Degree& b) { return a <= b; }
  static bool eq(const Degree& a, const Degree& b) { return a == b; }
  static bool positive(const Degree& a) { return !a.is_zero(); }
  static Degree complement(const Degree& a) { return a.complement(); }
  static std::string str(const Degree& a) { return a.str(); }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr double tolerance = 1e-9;
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static bool leq(double a, double b) { return a <= b + tolerance; }
  static bool eq(double a, double b) { return std::abs(a - b) <= tolerance; }
  static bool positive(double a) { return a > 0.0; }
  static double complement(double a) { return 1.0 - a; }
  static std::string str(double a) {
    std::string s = std::to_string(a);
    while (s.size() > 1 && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
  }
};

template <class Scalar>
Scalar smin(const Scalar& a, const Scalar& b) {
  return b < a ? b : a;
}

template <class Scalar>
Scalar smax(const Scalar& a, const Scalar& b) {
  return a < b ? b : a;
}

/// result[j] = max_l min(v[l], m(l, j))
template <class Scalar>
StateVector<Scalar> maxmin(const StateVector<Scalar>& v, const EventMatrix<Scalar>& m) {
  if (v.cols() != m.rows() || m.rows() != m.cols())
    throw ShapeError("max-min product: vector of length " + std::to_string(v.cols()) + " against " +
                     std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " matrix");
  StateVector<Scalar> out(v.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    Scalar best = ScalarTraits<Scalar>::zero();
    for (Eigen::Index l = 0; l < m.rows(); ++l) best = smax(best, smin(v(l), m(l, j)));
    out(j) = best;
  }
  return out;
}

/// c(i, j) = max_l min(a(i, l), b(l, j))
template <class Scalar>
EventMatrix<Scalar> maxmin(const EventMatrix<Scalar>& a, const EventMatrix<Scalar>& b) {
  if (a.cols() != b.rows() || a.rows() != a.cols() || b.rows() != b.cols())
    throw ShapeError("max-min product: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                     " against " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  EventMatrix<Scalar> out(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      Scalar best = ScalarTraits<Scalar>::zero();
      for (Eigen::Index l = 0; l < a.cols(); ++l) best = smax(best, smin(a(i, l), b(l, j)));
      out(i, j) = best;
    }
  }
  return out;
}

/// Largest entry; the possibility that the fuzzy state is occupied at all.
template <class Scalar>
Scalar height(const StateVector<Scalar>& v) {
  Scalar best = ScalarTraits<Scalar>::zero();
  for (Eigen::Index i = 0; i < v.cols(); ++i) best = smax(best, v(i));
  return best;
}

/// max_i min(v[i], w[i]), i.e. v ⊙ wᵀ.
template <class Scalar>
Scalar inner(const StateVector<Scalar>& v, const StateVector<Scalar>& w) {
  if (v.cols() != w.cols()) throw ShapeError("inner max-min product: length mismatch");
  Scalar best = ScalarTraits<Scalar>::zero();
  for (Eigen::Index i = 0; i < v.cols(); ++i) best = smax(best, smin(v(i), w(i)));
  return best;
}

template <class Scalar>
bool is_zero(const StateVector<Scalar>& v) {
  for (Eigen::Index i = 0; i < v.cols(); ++i)
    if (ScalarTraits<Scalar>::positive(v(i))) return false;
  return true;
}

template <class Scalar>
bool same(const StateVector<Scalar>& a, const StateVector<Scalar>& b) {
  if (a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.cols(); ++i)
    if (!(a(i) == b(i))) return false;
  return true;
}

/// Strict weak order on vectors so they can key ordered containers.
template <class Scalar>
bool lex_less(const StateVector<Scalar>& a, const StateVector<Scalar>& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

template <class Scalar>
EventMatrix<Scalar> identity_matrix(Eigen::Index n) {
  EventMatrix<Scalar> m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = i == j ? ScalarTraits<Scalar>::one() : ScalarTraits<Scalar>::zero();
  return m;
}

template <class Scalar>
StateVector<Scalar> constant_vector(Eigen::Index n, const Scalar& value) {
  StateVector<Scalar> v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = value;
  return v;
}

template <class Scalar>
std::string to_string(const StateVector<Scalar>& v) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < v.cols(); ++i) {
    if (i) out += ",";
    out += ScalarTraits<Scalar>::str(v(i));
  }
  return out + "]";
}

}  // namespace fdes
