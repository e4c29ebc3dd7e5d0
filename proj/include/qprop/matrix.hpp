#pragma once

#include <complex>
#include <vector>

namespace qprop {

using cplx = std::complex<double>;

/// Dense square complex matrix, sized for gate synthesis work (dim <= 64).
/// Row-major storage.
class CMatrix {
public:
    CMatrix() = default;
    explicit CMatrix(int dim) : dim_(dim), data_(static_cast<std::size_t>(dim) * dim) {}

    static CMatrix identity(int dim);

    int dim() const { return dim_; }

    cplx& at(int r, int c) { return data_[static_cast<std::size_t>(r) * dim_ + c]; }
    const cplx& at(int r, int c) const { return data_[static_cast<std::size_t>(r) * dim_ + c]; }

    CMatrix operator*(const CMatrix& rhs) const;
    CMatrix adjoint() const;

    std::vector<cplx> apply(const std::vector<cplx>& v) const;

    /// max_ij |a_ij - b_ij|
    static double max_abs_diff(const CMatrix& a, const CMatrix& b);

    /// True when M M^dagger = I within tol.
    bool is_unitary(double tol) const;

private:
    int dim_ = 0;
    std::vector<cplx> data_;
};

} // namespace qprop
