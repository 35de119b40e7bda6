#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

namespace zetagraph {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Finite matrix between labeled bases. Column j is the image of domain[j];
/// entries are indexed [codomain row, domain column].
struct LinearOperator {
    std::vector<std::string> domain;
    std::vector<std::string> codomain;
    Matrix matrix;

    Eigen::Index rows() const noexcept { return matrix.rows(); }
    Eigen::Index cols() const noexcept { return matrix.cols(); }
    bool square() const noexcept { return matrix.rows() == matrix.cols(); }
    const Complex& operator()(Eigen::Index row, Eigen::Index col) const { return matrix(row, col); }
};

/// a ∘ b; throws PreconditionError when b's codomain is not a's domain.
LinearOperator compose(const LinearOperator& a, const LinearOperator& b);

double max_abs_entry(const Matrix& m);

}  // namespace zetagraph
