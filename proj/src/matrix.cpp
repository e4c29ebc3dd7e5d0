#include "qprop/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace qprop {

CMatrix CMatrix::identity(int dim) {
    CMatrix m(dim);
    for (int i = 0; i < dim; ++i)
        m.at(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::operator*(const CMatrix& rhs) const {
    if (dim_ != rhs.dim_)
        throw std::invalid_argument("CMatrix: dimension mismatch");
    CMatrix out(dim_);
    for (int i = 0; i < dim_; ++i) {
        for (int k = 0; k < dim_; ++k) {
            const cplx a = at(i, k);
            if (a == cplx{})
                continue;
            for (int j = 0; j < dim_; ++j)
                out.at(i, j) += a * rhs.at(k, j);
        }
    }
    return out;
}

CMatrix CMatrix::adjoint() const {
    CMatrix out(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            out.at(i, j) = std::conj(at(j, i));
    return out;
}

std::vector<cplx> CMatrix::apply(const std::vector<cplx>& v) const {
    if (static_cast<int>(v.size()) != dim_)
        throw std::invalid_argument("CMatrix::apply: dimension mismatch");
    std::vector<cplx> out(v.size());
    for (int i = 0; i < dim_; ++i) {
        cplx acc = 0.0;
        for (int j = 0; j < dim_; ++j)
            acc += at(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

double CMatrix::max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("CMatrix: dimension mismatch");
    double worst = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            worst = std::max(worst, std::abs(a.at(i, j) - b.at(i, j)));
    return worst;
}

bool CMatrix::is_unitary(double tol) const {
    const CMatrix prod = *this * adjoint();
    return max_abs_diff(prod, identity(dim_)) <= tol;
}

} // namespace qprop
