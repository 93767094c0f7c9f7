#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fanokernel/ring.hpp"
#include "fanokernel/rng.hpp"

namespace fano {

struct Term {
    Mono m;
    uint32_t c = 0;
};

struct NegativeDegree : std::invalid_argument {
    NegativeDegree() : std::invalid_argument("required entry degree is negative") {}
};
struct SizeExceeded : std::invalid_argument {
    SizeExceeded() : std::invalid_argument("minor size exceeds matrix dimensions") {}
};

// Multivariate polynomial in canonical form: terms strictly descending in
// the ring order, no zero coefficients.
class Poly {
public:
    Poly() = default;
    explicit Poly(RingPtr R) : R_(std::move(R)) {}

    static Poly zero(RingPtr R) { return Poly(std::move(R)); }
    static Poly constant(RingPtr R, uint32_t c);
    static Poly variable(RingPtr R, int i);
    static Poly term(RingPtr R, Mono m, uint32_t c);
    // normalizes: sorts, merges duplicates, drops zeros
    static Poly from_terms(RingPtr R, std::vector<Term> ts);

    const RingPtr& ring() const { return R_; }
    const std::vector<Term>& terms() const { return ts_; }
    size_t size() const { return ts_.size(); }
    bool is_zero() const { return ts_.empty(); }
    bool is_constant() const { return ts_.empty() || (ts_.size() == 1 && ts_[0].m.is_one()); }

    const Term& lead() const { return ts_.front(); }
    Mono lead_mono() const { return ts_.front().m; }
    uint32_t lead_coeff() const { return ts_.front().c; }

    // weighted degree of the top term; -1 for zero (not total-degree for
    // inhomogeneous polys under non-degree orders, callers know)
    int degree() const;
    int total_degree() const;  // max weighted degree over all terms
    bool is_homogeneous(int* deg = nullptr) const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly scaled(uint32_t c) const;
    Poly mono_mul(Mono m, uint32_t c = 1) const;
    // this - c * m * g, the division-step kernel
    Poly axpy_sub(uint32_t c, Mono m, const Poly& g) const;
    Poly monic() const;
    Poly pow(unsigned k) const;

    uint32_t eval(const std::vector<uint32_t>& point) const;
    Poly derivative(int var) const;

    uint32_t coeff_of(Mono m) const;

    std::string str() const;

    void check_ring(const Poly& o) const {
        if (!R_->same_ring(*o.R_)) throw RingMismatch();
    }

private:
    RingPtr R_;
    std::vector<Term> ts_;
};

enum class ArithOp { Add, Sub, Mul };
Poly poly_arith(const Poly& f, const Poly& g, ArithOp op);

// Substitution homomorphism between rings: one image per source variable.
struct RingMap {
    RingPtr source;
    RingPtr target;
    std::vector<Poly> images;

    RingMap(RingPtr src, RingPtr tgt, std::vector<Poly> imgs);
    Poly apply(const Poly& f) const;
};

// Rectangular matrix of polynomials with row/column twists; entry (i,j) is
// homogeneous of degree col_twist[j] - row_twist[i] when nonzero.
struct PolyMatrix {
    RingPtr ring;
    size_t nrows = 0, ncols = 0;
    std::vector<Poly> entries;  // row-major
    std::vector<int> row_twists, col_twists;

    PolyMatrix() = default;
    PolyMatrix(RingPtr R, size_t r, size_t c);

    Poly& at(size_t i, size_t j) { return entries[i * ncols + j]; }
    const Poly& at(size_t i, size_t j) const { return entries[i * ncols + j]; }

    bool is_graded() const;  // verifies the twist/degree invariant
    PolyMatrix transpose() const;
};

std::vector<Poly> minors(int k, const PolyMatrix& M);
PolyMatrix jacobian(const std::vector<Poly>& gens);
PolyMatrix random_graded_matrix(RingPtr R, const std::vector<int>& row_twists,
                                const std::vector<int>& col_twists, uint64_t seed);
Poly random_form(RingPtr R, int degree, Rng& rng);

// ---- text format ----

struct SyntaxError : std::runtime_error {
    int line, col;
    SyntaxError(const std::string& msg, int l, int c)
        : std::runtime_error(msg + " at line " + std::to_string(l) + ", column " +
                             std::to_string(c)),
          line(l), col(c) {}
};

// header: ring p=<prime> vars=<n> order=<grevlex|lex|elim:<k>>
RingPtr parse_ring_header(const std::string& line);
std::string ring_header(const PolyRing& R);

Poly parse_poly(RingPtr R, const std::string& text);

struct ParsedIdeal {
    RingPtr ring;
    std::string name;
    std::vector<Poly> gens;
};
// full ideal file: ring header then "ideal <name> = <poly>; <poly>; ..."
ParsedIdeal parse_ideal_text(const std::string& text);
std::string print_ideal_text(const std::string& name, const std::vector<Poly>& gens);

}  // namespace fano
