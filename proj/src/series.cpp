#include "zetagraph/series.hpp"

#include "zetagraph/errors.hpp"
#include "zetagraph/format.hpp"
#include "zetagraph/parallel.hpp"

#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace zetagraph {

void require_order(std::size_t order) {
    if (order > max_order) {
        throw ResourceCapError("series order " + std::to_string(order) + " exceeds the cap of " +
                               std::to_string(max_order));
    }
}

LinearOperator compose(const LinearOperator& a, const LinearOperator& b) {
    if (a.domain != b.codomain) throw PreconditionError("compose: basis mismatch");
    return {b.domain, a.codomain, a.matrix * b.matrix};
}

double max_abs_entry(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

TruncatedSeries::TruncatedSeries(std::size_t order, std::span<const Complex> coeffs) : coeffs_(order + 1) {
    std::copy_n(coeffs.begin(), std::min(coeffs.size(), coeffs_.size()), coeffs_.begin());
}

TruncatedSeries::TruncatedSeries(std::size_t order, std::initializer_list<double> coeffs) : coeffs_(order + 1) {
    std::size_t n = 0;
    for (double c : coeffs) {
        if (n > order) break;
        coeffs_[n++] = c;
    }
}

TruncatedSeries TruncatedSeries::constant(std::size_t order, Complex c) {
    TruncatedSeries s(order);
    s.coeffs_[0] = c;
    return s;
}

TruncatedSeries TruncatedSeries::monomial(std::size_t order, std::size_t power, Complex c) {
    TruncatedSeries s(order);
    if (power <= order) s.coeffs_[power] = c;
    return s;
}

TruncatedSeries TruncatedSeries::resized(std::size_t order) const { return TruncatedSeries(order, coeffs_); }

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& other) {
    if (other.order() > order()) coeffs_.resize(other.coeffs_.size());
    for (std::size_t n = 0; n < other.coeffs_.size(); ++n) coeffs_[n] += other.coeffs_[n];
    return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& other) {
    if (other.order() > order()) coeffs_.resize(other.coeffs_.size());
    for (std::size_t n = 0; n < other.coeffs_.size(); ++n) coeffs_[n] -= other.coeffs_[n];
    return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const TruncatedSeries& other) {
    const std::size_t m = std::max(order(), other.order());
    std::vector<Complex> out(m + 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == Complex{}) continue;
        for (std::size_t j = 0; j < other.coeffs_.size() && i + j <= m; ++j) out[i + j] += coeffs_[i] * other.coeffs_[j];
    }
    coeffs_ = std::move(out);
    return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(Complex c) {
    for (auto& x : coeffs_) x *= c;
    return *this;
}

TruncatedSeries TruncatedSeries::operator-() const { return *this * Complex{-1.0}; }

TruncatedSeries TruncatedSeries::inverse() const {
    if (coeffs_[0] == Complex{}) throw PreconditionError("series inverse needs a nonzero constant term");
    TruncatedSeries out(order());
    const Complex lead = 1.0 / coeffs_[0];
    out.coeffs_[0] = lead;
    for (std::size_t n = 1; n <= order(); ++n) {
        Complex acc{};
        for (std::size_t k = 1; k <= n; ++k) acc += coeffs_[k] * out.coeffs_[n - k];
        out.coeffs_[n] = -lead * acc;
    }
    return out;
}

TruncatedSeries TruncatedSeries::derivative() const {
    TruncatedSeries out(order() == 0 ? 0 : order() - 1);
    for (std::size_t n = 1; n <= order(); ++n) out.coeffs_[n - 1] = static_cast<double>(n) * coeffs_[n];
    return out;
}

TruncatedSeries TruncatedSeries::integral() const {
    TruncatedSeries out(order() + 1);
    for (std::size_t n = 0; n <= order(); ++n) out.coeffs_[n + 1] = coeffs_[n] / static_cast<double>(n + 1);
    return out;
}

TruncatedSeries TruncatedSeries::scaled(Complex c) const {
    TruncatedSeries out = *this;
    Complex power{1.0};
    for (auto& x : out.coeffs_) {
        x *= power;
        power *= c;
    }
    return out;
}

TruncatedSeries TruncatedSeries::pow(long exponent) const {
    if (exponent < 0) return inverse().pow(-exponent);
    TruncatedSeries result = constant(order(), 1.0);
    TruncatedSeries base = *this;
    for (auto e = static_cast<unsigned long>(exponent); e != 0; e >>= 1) {
        if (e & 1u) result *= base;
        if (e > 1) base *= base;
    }
    return result;
}

Complex TruncatedSeries::evaluate(Complex u) const {
    Complex acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * u + *it;
    return acc;
}

TruncatedSeries exp(const TruncatedSeries& a) {
    if (std::abs(a[0]) > 1e-12) throw PreconditionError("series exp needs a zero constant term");
    TruncatedSeries out(a.order());
    out[0] = 1.0;
    for (std::size_t n = 1; n <= a.order(); ++n) {
        Complex acc{};
        for (std::size_t k = 1; k <= n; ++k) acc += static_cast<double>(k) * a[k] * out[n - k];
        out[n] = acc / static_cast<double>(n);
    }
    return out;
}

TruncatedSeries log(const TruncatedSeries& a) {
    if (std::abs(a[0] - 1.0) > 1e-12) throw PreconditionError("series log needs constant term 1");
    TruncatedSeries out(a.order());
    for (std::size_t n = 1; n <= a.order(); ++n) {
        Complex acc = static_cast<double>(n) * a[n];
        for (std::size_t k = 1; k < n; ++k) acc -= static_cast<double>(k) * out[k] * a[n - k];
        out[n] = acc / static_cast<double>(n);
    }
    return out;
}

bool Tolerance::within(Complex value, Complex reference) const {
    return std::abs(value - reference) <= abs + rel * std::max(1.0, std::abs(reference));
}

double max_deviation(const TruncatedSeries& a, const TruncatedSeries& b) {
    const std::size_t m = std::min(a.order(), b.order());
    double worst = 0.0;
    for (std::size_t n = 0; n <= m; ++n) worst = std::max(worst, std::abs(a[n] - b[n]));
    return worst;
}

bool agree(const TruncatedSeries& a, const TruncatedSeries& b, Tolerance tol) {
    const std::size_t m = std::min(a.order(), b.order());
    for (std::size_t n = 0; n <= m; ++n) {
        if (!tol.within(a[n], b[n])) return false;
    }
    return true;
}

std::vector<Complex> power_traces(const Matrix& t, std::size_t count) {
    if (t.rows() != t.cols()) throw PreconditionError("power traces need a square operator");
    const Eigen::Index dim = t.rows();
    constexpr Eigen::Index block = 64;
    const auto blocks = static_cast<std::size_t>((dim + block - 1) / block);

    const Eigen::SparseMatrix<Complex> sparse = t.sparseView();
    std::vector<std::vector<Complex>> partial(blocks, std::vector<Complex>(count));
    parallel_for(blocks, [&](std::size_t b) {
        const Eigen::Index first = static_cast<Eigen::Index>(b) * block;
        const Eigen::Index width = std::min(block, dim - first);
        Matrix columns = Matrix::Zero(dim, width);
        for (Eigen::Index i = 0; i < width; ++i) columns(first + i, i) = 1.0;
        for (std::size_t j = 0; j < count; ++j) {
            columns = sparse * columns;
            Complex acc{};
            for (Eigen::Index i = 0; i < width; ++i) acc += columns(first + i, i);
            partial[b][j] = acc;
        }
    });

    std::vector<Complex> traces(count);
    for (const auto& p : partial) {
        for (std::size_t j = 0; j < count; ++j) traces[j] += p[j];
    }
    return traces;
}

TruncatedSeries det_from_traces(const Matrix& t, std::size_t order) {
    require_order(order);
    const auto p = power_traces(t, order);
    TruncatedSeries c(order);
    c[0] = 1.0;
    for (std::size_t k = 1; k <= order; ++k) {
        Complex acc{};
        for (std::size_t j = 1; j <= k; ++j) acc += p[j - 1] * c[k - j];
        c[k] = -acc / static_cast<double>(k);
    }
    return c;
}

TruncatedSeries det_from_traces(const LinearOperator& t, std::size_t order) { return det_from_traces(t.matrix, order); }

OperatorSeries::OperatorSeries(std::size_t order, Eigen::Index dim) : coeffs_(order + 1, Matrix::Zero(dim, dim)) {}

OperatorSeries::OperatorSeries(std::vector<Matrix> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw PreconditionError("operator series needs at least one coefficient");
    for (const auto& m : coeffs_) {
        if (m.rows() != m.cols() || m.rows() != coeffs_.front().rows()) {
            throw PreconditionError("operator series coefficients must share one square shape");
        }
    }
}

OperatorSeries OperatorSeries::identity_minus(const Matrix& t, std::size_t order) {
    OperatorSeries s(order, t.rows());
    s[0] = Matrix::Identity(t.rows(), t.rows());
    if (order >= 1) s[1] = -t;
    return s;
}

OperatorSeries OperatorSeries::operator*(const OperatorSeries& other) const {
    if (dim() != other.dim()) throw PreconditionError("operator series dimension mismatch");
    const std::size_t m = std::max(order(), other.order());
    OperatorSeries out(m, dim());
    for (std::size_t i = 0; i <= order(); ++i) {
        for (std::size_t j = 0; j <= other.order() && i + j <= m; ++j) out[i + j].noalias() += coeffs_[i] * other[j];
    }
    return out;
}

OperatorSeries OperatorSeries::inverse() const {
    Eigen::FullPivLU<Matrix> lu(coeffs_[0]);
    if (!lu.isInvertible()) throw PreconditionError("operator series inverse needs an invertible constant term");
    const Matrix lead = lu.inverse();
    OperatorSeries out(order(), dim());
    out[0] = lead;
    for (std::size_t n = 1; n <= order(); ++n) {
        Matrix acc = Matrix::Zero(dim(), dim());
        for (std::size_t k = 1; k <= n; ++k) acc.noalias() += coeffs_[k] * out[n - k];
        out[n] = -lead * acc;
    }
    return out;
}

TruncatedSeries OperatorSeries::trace() const {
    TruncatedSeries out(order());
    for (std::size_t n = 0; n <= order(); ++n) out[n] = coeffs_[n].trace();
    return out;
}

namespace {

// log det S, from d/du log det S = tr(S^{-1} S').
TruncatedSeries jacobi_log_det(const OperatorSeries& s) {
    const std::size_t order = s.order();
    if (order == 0) return TruncatedSeries(0);
    const OperatorSeries inv = s.inverse();
    // d/du log det S = tr(S^{-1} S'), coefficient k needs only traces of products.
    TruncatedSeries log_derivative(order - 1);
    for (std::size_t k = 0; k + 1 <= order; ++k) {
        Complex acc{};
        for (std::size_t i = 0; i <= k; ++i) {
            const Matrix& d = s[k - i + 1];
            acc += static_cast<double>(k - i + 1) * (inv[i].array() * d.transpose().array()).sum();
        }
        log_derivative[k] = acc;
    }
    return log_derivative.integral();
}

// Leibniz expansion over series-valued entries.
TruncatedSeries leibniz_det(const std::vector<std::vector<TruncatedSeries>>& entries, std::size_t order) {
    const std::size_t k = entries.size();
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    TruncatedSeries total(order);
    do {
        std::size_t inversions = 0;
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = i + 1; j < k; ++j) inversions += perm[i] > perm[j];
        }
        TruncatedSeries term = TruncatedSeries::constant(order, inversions % 2 == 0 ? 1.0 : -1.0);
        for (std::size_t i = 0; i < k; ++i) term *= entries[i][perm[i]];
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

}  // namespace

TruncatedSeries exterior_power_det(const OperatorSeries& s) {
    const auto dim = static_cast<std::size_t>(s.dim());
    const std::size_t order = s.order();
    if (!s[0].isIdentity(1e-12)) throw PreconditionError("determinant needs constant coefficient = identity");
    if (dim > 10) throw ResourceCapError("exterior power expansion limited to dimension 10");

    std::vector<std::vector<TruncatedSeries>> x(dim, std::vector<TruncatedSeries>(dim, TruncatedSeries(order)));
    for (std::size_t n = 1; n <= order; ++n) {
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) x[i][j][n] = s[n](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }

    TruncatedSeries total = TruncatedSeries::constant(order, 1.0);
    for (std::size_t mask = 1; mask < (std::size_t{1} << dim); ++mask) {
        std::vector<std::size_t> subset;
        for (std::size_t i = 0; i < dim; ++i) {
            if (mask & (std::size_t{1} << i)) subset.push_back(i);
        }
        std::vector<std::vector<TruncatedSeries>> minor(subset.size());
        for (std::size_t a = 0; a < subset.size(); ++a) {
            for (std::size_t b : subset) minor[a].push_back(x[subset[a]][b]);
        }
        total += leibniz_det(minor, order);
    }
    return total;
}

TruncatedSeries det_operator_series(const OperatorSeries& s) {
    require_order(s.order());
    if (!s[0].isIdentity(1e-12)) throw PreconditionError("determinant needs constant coefficient = identity");
    const TruncatedSeries log_det = jacobi_log_det(s);
    TruncatedSeries det = exp(log_det);
    if (s.dim() <= 6) {
        const TruncatedSeries check = exterior_power_det(s);
        for (std::size_t n = 0; n <= det.order(); ++n) {
            // rounding in exp grows with the terms it sums, not with the result
            double terms = 0.0;
            for (std::size_t k = 1; k <= n; ++k) terms += static_cast<double>(k) * std::abs(log_det[k]) * std::abs(det[n - k]);
            if (n > 0) terms /= static_cast<double>(n);
            if (std::abs(det[n] - check[n]) > 1e-10 * std::max(1.0, std::abs(check[n])) + 1e-12 * terms) {
                throw std::logic_error("determinant routes disagree at u^" + std::to_string(n) + ": " +
                                       format_real(std::abs(det[n])) + " vs " + format_real(std::abs(check[n])));
            }
        }
    }
    return det;
}

std::string series_csv(const TruncatedSeries& s) {
    std::string out = "n,re,im\n";
    for (std::size_t n = 0; n <= s.order(); ++n) {
        out += csv_row({std::to_string(n), format_real(s[n].real()), format_real(s[n].imag())}) + "\n";
    }
    return out;
}

}  // namespace zetagraph
