#include "ltl/matrix.hpp"

#include <utility>

namespace ltl {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnsupportedType: return "UnsupportedType";
    case ErrorKind::WeylCapExceeded: return "WeylCapExceeded";
    case ErrorKind::BasisMismatch: return "BasisMismatch";
    case ErrorKind::NotDominant: return "NotDominant";
    case ErrorKind::NegativeMultiplicity: return "NegativeMultiplicity";
    case ErrorKind::DegenerateSpec: return "DegenerateSpec";
    case ErrorKind::InadmissibleN: return "InadmissibleN";
    case ErrorKind::OutsideDomain: return "OutsideDomain";
    case ErrorKind::TraceNotZero: return "TraceNotZero";
    case ErrorKind::RankTooLarge: return "RankTooLarge";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

RationalMatrix to_rational(const IntMatrix& m) {
  RationalMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = mpq_class(m(i, j));
  return r;
}

Matrix<double> to_double(const RationalMatrix& m) {
  Matrix<double> r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).get_d();
  return r;
}

RationalMatrix inverse(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw Error(ErrorKind::InvalidInput, "inverse of non-square matrix");
  RationalMatrix a = m;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col) == 0) ++pivot;
    if (pivot == n) throw Error(ErrorKind::InvalidInput, "singular matrix");
    if (pivot != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(pivot, j), a(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    const mpq_class p = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a(i, col) == 0) continue;
      const mpq_class f = a(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

mpq_class determinant(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw Error(ErrorKind::InvalidInput, "determinant of non-square matrix");
  RationalMatrix a = m;
  mpq_class det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (a(i, col) == 0) continue;
      const mpq_class f = a(i, col) / a(col, col);
      for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(col, j);
    }
  }
  return det;
}

std::vector<mpq_class> leading_minors(const RationalMatrix& m) {
  std::vector<mpq_class> out;
  for (std::size_t k = 1; k <= m.rows(); ++k) {
    RationalMatrix sub(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(i, j);
    out.push_back(determinant(sub));
  }
  return out;
}

std::string rational_to_string(const mpq_class& value) {
  mpq_class q = value;
  q.canonicalize();
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

mpq_class parse_rational(const std::string& text) {
  mpq_class q;
  if (text.empty() || q.set_str(text, 10) != 0)
    throw Error(ErrorKind::InvalidInput, "not a rational number: '" + text + "'");
  if (q.get_den() == 0) throw Error(ErrorKind::InvalidInput, "zero denominator: '" + text + "'");
  q.canonicalize();
  return q;
}

}  // namespace ltl
