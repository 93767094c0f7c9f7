#pragma once

#include <cstdint>
#include <vector>

#include "fanokernel/ff.hpp"

namespace fano {

// Dense row-major matrix over GF(p). The workhorse behind interpolation,
// graded pieces, image kernels and the linear-algebra oracles in tests.
class MatFp {
public:
    MatFp() = default;
    MatFp(const PrimeField& F, size_t rows, size_t cols)
        : F_(&F), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    const PrimeField& field() const { return *F_; }

    uint32_t& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
    uint32_t at(size_t i, size_t j) const { return a_[i * cols_ + j]; }
    uint32_t* row(size_t i) { return a_.data() + i * cols_; }
    const uint32_t* row(size_t i) const { return a_.data() + i * cols_; }

    void append_row(const std::vector<uint32_t>& r);

    // In-place reduced row echelon form; returns pivot column list.
    std::vector<size_t> rref();

    size_t rank() const;

    // Basis of the right kernel {v : A v = 0}, one vector per row of the result.
    // Deterministic: free columns in increasing order, free coordinate set to 1.
    MatFp kernel() const;

    MatFp transpose() const;
    MatFp multiply(const MatFp& other) const;

    // Solve A x = b; returns false if inconsistent. Any solution (free vars 0).
    bool solve(const std::vector<uint32_t>& b, std::vector<uint32_t>& x) const;

    MatFp inverse() const;  // throws if singular
    uint32_t det() const;

private:
    const PrimeField* F_ = nullptr;
    size_t rows_ = 0, cols_ = 0;
    std::vector<uint32_t> a_;
};

}  // namespace fano
