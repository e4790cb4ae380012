#pragma once
#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <vector>

// Dense bivariate power series truncated at bidegree (M, N).

namespace ridgelab {

template <class T>
struct SeriesTraits {
  static T sqrt(const T& x) { return std::sqrt(x); }
  static T zero_like(const T&) { return T(0); }
};

template <>
struct SeriesTraits<mpq_class> {
  static mpq_class sqrt(const mpq_class& x) {
    mpz_class n = x.get_num(), d = x.get_den();
    if (sgn(n) < 0 || !mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
      throw std::domain_error("constant term is not a rational square");
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    return mpq_class(rn, rd);
  }
  static mpq_class zero_like(const mpq_class&) { return 0; }
};

template <>
struct SeriesTraits<mpf_class> {
  static mpf_class sqrt(const mpf_class& x) {
    mpf_class r(0, x.get_prec());
    mpf_sqrt(r.get_mpf_t(), x.get_mpf_t());
    return r;
  }
  static mpf_class zero_like(const mpf_class& x) { return mpf_class(0, x.get_prec()); }
};

template <class T>
class Series2 {
 public:
  Series2(int M, int N, const T& proto = T(0))
      : M_(M), N_(N), c_((M + 1) * (N + 1), SeriesTraits<T>::zero_like(proto)) {}

  static Series2 constant(int M, int N, const T& v) {
    Series2 s(M, N, v);
    s(0, 0) = v;
    return s;
  }

  int M() const { return M_; }
  int N() const { return N_; }
  T& operator()(int i, int j) { return c_[i * (N_ + 1) + j]; }
  const T& operator()(int i, int j) const { return c_[i * (N_ + 1) + j]; }

  Series2& operator+=(const Series2& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Series2& operator-=(const Series2& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Series2& operator*=(const T& s) {
    for (auto& v : c_) v *= s;
    return *this;
  }
  friend Series2 operator+(Series2 a, const Series2& b) { return a += b; }
  friend Series2 operator-(Series2 a, const Series2& b) { return a -= b; }
  friend Series2 operator*(Series2 a, const T& s) { return a *= s; }

  friend Series2 operator*(const Series2& a, const Series2& b) {
    Series2 r(a.M_, a.N_, a.c_[0]);
    T tmp = a.c_[0];
    for (int i1 = 0; i1 <= a.M_; ++i1)
      for (int j1 = 0; j1 <= a.N_; ++j1) {
        const T& x = a(i1, j1);
        if (x == 0) continue;
        for (int i2 = 0; i1 + i2 <= a.M_; ++i2)
          for (int j2 = 0; j1 + j2 <= a.N_; ++j2) {
            tmp = x;
            tmp *= b(i2, j2);
            r(i1 + i2, j1 + j2) += tmp;
          }
      }
    return r;
  }

  // 1/s; constant term must be nonzero
  Series2 inverse() const {
    const T& a0 = (*this)(0, 0);
    if (a0 == 0) throw std::domain_error("series inverse with zero constant term");
    Series2 r(M_, N_, a0);
    T inv0 = a0;
    inv0 = 1;
    inv0 /= a0;
    T acc = a0;
    for (int i = 0; i <= M_; ++i)
      for (int j = 0; j <= N_; ++j) {
        if (i == 0 && j == 0) {
          r(0, 0) = inv0;
          continue;
        }
        acc = 0;
        for (int p = 0; p <= i; ++p)
          for (int q = 0; q <= j; ++q) {
            if (p == 0 && q == 0) continue;
            acc += (*this)(p, q) * r(i - p, j - q);
          }
        r(i, j) = -acc * inv0;
      }
    return r;
  }

  // Newton iteration s <- (s + a/s)/2; each step doubles the correct total degree
  Series2 sqrt() const {
    const T& a0 = (*this)(0, 0);
    Series2 s = constant(M_, N_, SeriesTraits<T>::sqrt(a0));
    T half = a0;
    half = 1;
    half /= 2;
    int correct = 1;
    while (correct <= M_ + N_) {
      s = (s + (*this) * s.inverse()) * half;
      correct *= 2;
    }
    s = (s + (*this) * s.inverse()) * half;
    return s;
  }

 private:
  int M_, N_;
  std::vector<T> c_;
};

}  // namespace ridgelab
