#include "fanokernel/linalg.hpp"

#include <stdexcept>

namespace fano {

void MatFp::append_row(const std::vector<uint32_t>& r) {
    if (r.size() != cols_) throw std::invalid_argument("row length mismatch");
    a_.insert(a_.end(), r.begin(), r.end());
    ++rows_;
}

std::vector<size_t> MatFp::rref() {
    const PrimeField& F = *F_;
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < cols_ && r < rows_; ++c) {
        size_t piv = r;
        while (piv < rows_ && at(piv, c) == 0) ++piv;
        if (piv == rows_) continue;
        if (piv != r)
            for (size_t j = c; j < cols_; ++j) std::swap(at(r, j), at(piv, j));
        uint32_t ip = F.inv(at(r, c));
        if (ip != 1) {
            uint32_t* pr = row(r);
            for (size_t j = c; j < cols_; ++j) pr[j] = F.mul(pr[j], ip);
        }
        const uint32_t* pr = row(r);
        const uint64_t p = F.modulus();
        for (size_t i = 0; i < rows_; ++i) {
            if (i == r) continue;
            uint32_t f = at(i, c);
            if (f == 0) continue;
            uint64_t fp = p - f;  // row_i += (p - f) * row_r
            uint32_t* ri = row(i);
            for (size_t j = c; j < cols_; ++j) {
                ri[j] = F.reduce(ri[j] + fp * pr[j]);
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

size_t MatFp::rank() const {
    MatFp copy = *this;
    return copy.rref().size();
}

MatFp MatFp::kernel() const {
    MatFp copy = *this;
    std::vector<size_t> piv = copy.rref();
    std::vector<int> pivot_of_col(cols_, -1);
    for (size_t k = 0; k < piv.size(); ++k) pivot_of_col[piv[k]] = static_cast<int>(k);
    size_t nfree = cols_ - piv.size();
    MatFp K(*F_, nfree, cols_);
    size_t kr = 0;
    for (size_t c = 0; c < cols_; ++c) {
        if (pivot_of_col[c] >= 0) continue;
        K.at(kr, c) = 1;
        for (size_t k = 0; k < piv.size(); ++k)
            K.at(kr, piv[k]) = F_->neg(copy.at(k, c));
        ++kr;
    }
    return K;
}

MatFp MatFp::transpose() const {
    MatFp T(*F_, cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) T.at(j, i) = at(i, j);
    return T;
}

MatFp MatFp::multiply(const MatFp& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("matrix shape mismatch");
    MatFp C(*F_, rows_, other.cols_);
    const uint64_t limit = F_->accumulation_limit();
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t j = 0; j < other.cols_; ++j) {
            uint64_t acc = 0;
            uint64_t cnt = 0;
            for (size_t k = 0; k < cols_; ++k) {
                acc += uint64_t(at(i, k)) * other.at(k, j);
                if (++cnt == limit) {
                    acc = F_->reduce(acc);
                    cnt = 0;
                }
            }
            C.at(i, j) = F_->reduce(acc);
        }
    }
    return C;
}

bool MatFp::solve(const std::vector<uint32_t>& b, std::vector<uint32_t>& x) const {
    if (b.size() != rows_) throw std::invalid_argument("rhs length mismatch");
    MatFp aug(*F_, rows_, cols_ + 1);
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, cols_) = b[i];
    }
    std::vector<size_t> piv = aug.rref();
    x.assign(cols_, 0);
    for (size_t k = 0; k < piv.size(); ++k) {
        if (piv[k] == cols_) return false;  // pivot in augmented column
        x[piv[k]] = aug.at(k, cols_);
    }
    return true;
}

MatFp MatFp::inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
    MatFp aug(*F_, rows_, 2 * cols_);
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, cols_ + i) = 1;
    }
    std::vector<size_t> piv = aug.rref();
    if (piv.size() != rows_ || piv.back() != rows_ - 1)
        throw std::domain_error("matrix not invertible");
    MatFp inv(*F_, rows_, cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) inv.at(i, j) = aug.at(i, cols_ + j);
    return inv;
}

uint32_t MatFp::det() const {
    if (rows_ != cols_) throw std::invalid_argument("det of non-square matrix");
    MatFp copy = *this;
    const PrimeField& F = *F_;
    uint32_t d = 1;
    for (size_t c = 0; c < cols_; ++c) {
        size_t piv = c;
        while (piv < rows_ && copy.at(piv, c) == 0) ++piv;
        if (piv == rows_) return 0;
        if (piv != c) {
            for (size_t j = 0; j < cols_; ++j) std::swap(copy.at(c, j), copy.at(piv, j));
            d = F.neg(d);
        }
        d = F.mul(d, copy.at(c, c));
        uint32_t ip = F.inv(copy.at(c, c));
        for (size_t i = c + 1; i < rows_; ++i) {
            uint32_t f = F.mul(copy.at(i, c), ip);
            if (f == 0) continue;
            uint64_t fp = F.modulus() - f;
            for (size_t j = c; j < cols_; ++j)
                copy.at(i, j) = F.reduce(copy.at(i, j) + fp * copy.at(c, j));
        }
    }
    return d;
}

}  // namespace fano
