#pragma once

#include "zetagraph/linear_operator.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace zetagraph {

inline constexpr std::size_t default_order = 12;
inline constexpr std::size_t max_order = 64;

/// Throws ResourceCapError when order exceeds max_order.
void require_order(std::size_t order);

/// Power series in u known through u^order.
class TruncatedSeries {
public:
    TruncatedSeries() : coeffs_(1, Complex{0.0}) {}
    explicit TruncatedSeries(std::size_t order) : coeffs_(order + 1, Complex{0.0}) {}
    /// Missing coefficients are zero; extra ones are dropped.
    TruncatedSeries(std::size_t order, std::span<const Complex> coeffs);
    TruncatedSeries(std::size_t order, std::initializer_list<double> coeffs);

    static TruncatedSeries constant(std::size_t order, Complex c);
    static TruncatedSeries monomial(std::size_t order, std::size_t power, Complex c);

    std::size_t order() const noexcept { return coeffs_.size() - 1; }
    const Complex& operator[](std::size_t n) const { return coeffs_.at(n); }
    Complex& operator[](std::size_t n) { return coeffs_.at(n); }
    const std::vector<Complex>& coefficients() const noexcept { return coeffs_; }

    /// Same coefficients, truncated or zero-extended to `order`.
    TruncatedSeries resized(std::size_t order) const;

    TruncatedSeries& operator+=(const TruncatedSeries& other);
    TruncatedSeries& operator-=(const TruncatedSeries& other);
    TruncatedSeries& operator*=(const TruncatedSeries& other);
    TruncatedSeries& operator*=(Complex c);

    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
    friend TruncatedSeries operator*(TruncatedSeries a, const TruncatedSeries& b) { return a *= b; }
    friend TruncatedSeries operator*(TruncatedSeries a, Complex c) { return a *= c; }
    TruncatedSeries operator-() const;

    /// Multiplicative inverse; throws PreconditionError when c_0 == 0.
    TruncatedSeries inverse() const;
    /// Σ n c_n u^{n-1}, known through order - 1.
    TruncatedSeries derivative() const;
    /// Antiderivative with zero constant term, known through order + 1.
    TruncatedSeries integral() const;
    /// u -> c·u.
    TruncatedSeries scaled(Complex c) const;
    /// Integer power; negative exponents use inverse().
    TruncatedSeries pow(long exponent) const;

    Complex evaluate(Complex u) const;

private:
    std::vector<Complex> coeffs_;
};

/// Requires c_0 == 0.
TruncatedSeries exp(const TruncatedSeries& a);
/// Requires c_0 == 1.
TruncatedSeries log(const TruncatedSeries& a);

/// Coefficient comparison |a_n - b_n| <= abs + rel·max(1, |b_n|).
struct Tolerance {
    double abs = 1e-9;
    double rel = 1e-9;

    bool within(Complex value, Complex reference) const;
};

/// Largest |a_n - b_n| over the common order.
double max_deviation(const TruncatedSeries& a, const TruncatedSeries& b);
bool agree(const TruncatedSeries& a, const TruncatedSeries& b, Tolerance tol = {});

/// tr T^j for j = 1..count, by iterated sparse application to blocks of
/// basis columns. Blocks are reduced in fixed order.
std::vector<Complex> power_traces(const Matrix& t, std::size_t count);

/// det(1 - uT) through u^order from the power traces of T
/// (Newton recursion c_k = -(1/k) Σ_{j=1..k} tr(T^j) c_{k-j}).
TruncatedSeries det_from_traces(const Matrix& t, std::size_t order);
TruncatedSeries det_from_traces(const LinearOperator& t, std::size_t order);

/// Matrix-valued power series S_0 + S_1 u + ... + S_M u^M.
class OperatorSeries {
public:
    OperatorSeries(std::size_t order, Eigen::Index dim);
    explicit OperatorSeries(std::vector<Matrix> coeffs);

    /// 1 - u·t.
    static OperatorSeries identity_minus(const Matrix& t, std::size_t order);

    std::size_t order() const noexcept { return coeffs_.size() - 1; }
    Eigen::Index dim() const noexcept { return coeffs_.front().rows(); }
    const Matrix& operator[](std::size_t n) const { return coeffs_.at(n); }
    Matrix& operator[](std::size_t n) { return coeffs_.at(n); }

    OperatorSeries operator*(const OperatorSeries& other) const;
    /// Requires an invertible constant coefficient.
    OperatorSeries inverse() const;
    TruncatedSeries trace() const;

private:
    std::vector<Matrix> coeffs_;
};

/// det S through u^order as exp(tr log S). tr log S is obtained by
/// integrating tr(S^{-1} S'). Requires S_0 = 1. For dim <= 6 the result is
/// cross-checked against exterior_power_det and a mismatch throws
/// std::logic_error.
TruncatedSeries det_operator_series(const OperatorSeries& s);

/// det(1 + X) = Σ_k tr Λ^k X, summing all principal minors of X = S - 1
/// with series entries. Exponential in dim; intended for dim <= 8.
TruncatedSeries exterior_power_det(const OperatorSeries& s);

/// CSV rows "n,re,im" with a header line.
std::string series_csv(const TruncatedSeries& s);

}  // namespace zetagraph
