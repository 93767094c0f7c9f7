#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "fanokernel/ff.hpp"

namespace fano {

struct RingMismatch : std::invalid_argument {
    RingMismatch() : std::invalid_argument("operands live in different rings") {}
    explicit RingMismatch(const std::string& m) : std::invalid_argument(m) {}
};

struct DimensionMismatch : std::invalid_argument {
    DimensionMismatch() : std::invalid_argument("monomials have different variable counts") {}
};

// A monomial in up to 8 variables, exponents packed one byte per variable.
// Every exponent stays <= 127 so packed add/sub/divisibility work as
// branch-free word operations; the engine rejects anything larger.
struct Mono {
    uint64_t e = 0;

    static constexpr int kMaxVars = 8;
    static constexpr uint64_t kHighBits = 0x8080808080808080ull;

    static Mono one() { return Mono{0}; }
    static Mono var(int i, int exp = 1) { return Mono{uint64_t(exp) << (8 * i)}; }

    int exp(int i) const { return int((e >> (8 * i)) & 0xff); }
    int degree() const { return int((e * 0x0101010101010101ull) >> 56); }
    bool is_one() const { return e == 0; }

    Mono operator*(Mono o) const { return Mono{e + o.e}; }
    bool divides(Mono o) const { return ((o.e - e) & kHighBits) == 0; }
    Mono operator/(Mono o) const { return Mono{e - o.e}; }

    Mono lcm(Mono o) const {
        Mono r;
        for (int i = 0; i < kMaxVars; ++i) {
            int a = exp(i), b = o.exp(i);
            r.e |= uint64_t(a > b ? a : b) << (8 * i);
        }
        return r;
    }
    bool coprime(Mono o) const {
        for (int i = 0; i < kMaxVars; ++i)
            if (exp(i) && o.exp(i)) return false;
        return true;
    }
    bool operator==(Mono o) const { return e == o.e; }
    bool operator!=(Mono o) const { return e != o.e; }
};

enum class OrderKind { Grevlex, Lex, WGrevlex, Elim };

struct MonomialOrder {
    OrderKind kind = OrderKind::Grevlex;
    int elim_block = 0;               // Elim: vars [0, elim_block) dominate
    std::vector<int> weights;         // WGrevlex

    static MonomialOrder grevlex() { return {}; }
    static MonomialOrder lex() { return {OrderKind::Lex, 0, {}}; }
    static MonomialOrder wgrevlex(std::vector<int> w) {
        return {OrderKind::WGrevlex, 0, std::move(w)};
    }
    static MonomialOrder elim(int k) { return {OrderKind::Elim, k, {}}; }

    bool operator==(const MonomialOrder& o) const {
        return kind == o.kind && elim_block == o.elim_block && weights == o.weights;
    }
};

class PolyRing;
using RingPtr = std::shared_ptr<const PolyRing>;

// Polynomial ring GF(p)[x_0..x_{n-1}] with a fixed monomial order and an
// optional grading weight per variable (weights only affect homogeneity
// bookkeeping, never the order itself).
class PolyRing : public std::enable_shared_from_this<PolyRing> {
public:
    static RingPtr make(uint32_t p, int nvars, MonomialOrder ord = MonomialOrder::grevlex(),
                        std::vector<std::string> names = {}, std::vector<int> grading = {});

    const PrimeField& field() const { return F_; }
    int nvars() const { return n_; }
    const MonomialOrder& order() const { return ord_; }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<int>& grading() const { return grading_; }
    bool standard_grading() const { return std_grading_; }

    int weighted_degree(Mono m) const {
        if (std_grading_) return m.degree();
        int d = 0;
        for (int i = 0; i < n_; ++i) d += grading_[i] * m.exp(i);
        return d;
    }

    // -1 if a < b, 0 if equal, +1 if a > b in the ring order.
    int cmp(Mono a, Mono b) const;

    bool same_ring(const PolyRing& o) const;

    // All degree-d monomials (standard grading), descending in the ring order.
    std::vector<Mono> monomials_of_degree(int d) const;

    std::string mono_str(Mono m) const;

    RingPtr with_order(MonomialOrder ord) const;

private:
    PolyRing(uint32_t p, int n, MonomialOrder ord, std::vector<std::string> names,
             std::vector<int> grading);

    PrimeField F_;
    int n_;
    MonomialOrder ord_;
    std::vector<std::string> names_;
    std::vector<int> grading_;
    bool std_grading_;
    uint64_t block_mask_ = 0;  // Elim: mask of block-1 bytes
};

// Compare under an explicit order (the order_compare operation).
int order_compare(Mono a, Mono b, const MonomialOrder& ord, int nvars);

}  // namespace fano
