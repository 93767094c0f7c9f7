#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fano {

struct CompositeModulus : std::invalid_argument {
    explicit CompositeModulus(uint64_t p)
        : std::invalid_argument("modulus " + std::to_string(p) + " is not prime") {}
};

struct DivisionByZero : std::domain_error {
    long index = -1;
    DivisionByZero() : std::domain_error("division by zero in prime field") {}
    explicit DivisionByZero(long i)
        : std::domain_error("division by zero in prime field at index " + std::to_string(i)),
          index(i) {}
};

// Prime field GF(p), p < 2^31. Elements are canonical residues in [0, p)
// stored as uint32_t; all member ops assume canonical inputs.
class PrimeField {
public:
    explicit PrimeField(uint32_t p);

    uint32_t modulus() const { return p_; }

    uint32_t add(uint32_t a, uint32_t b) const {
        uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    uint32_t sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : a + p_ - b; }
    uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p_ - a; }
    uint32_t mul(uint32_t a, uint32_t b) const {
        return static_cast<uint32_t>((uint64_t(a) * b) % p_);
    }
    uint32_t reduce(uint64_t a) const { return static_cast<uint32_t>(a % p_); }
    uint32_t reduce_signed(int64_t a) const {
        int64_t r = a % int64_t(p_);
        return static_cast<uint32_t>(r < 0 ? r + p_ : r);
    }
    uint32_t pow(uint32_t a, uint64_t e) const;
    uint32_t inv(uint32_t a) const;
    uint32_t div(uint32_t a, uint32_t b) const {
        if (b == 0) throw DivisionByZero();
        return mul(a, inv(b));
    }

    // Elementwise inverses with a single field inversion (Montgomery trick).
    std::vector<uint32_t> batch_invert(const std::vector<uint32_t>& xs) const;

    // How many products (p-1)^2 fit in a uint64 accumulator before reduction.
    uint64_t accumulation_limit() const { return acc_limit_; }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }
    bool operator!=(const PrimeField& o) const { return p_ != o.p_; }

    static bool is_prime(uint64_t n);

private:
    uint32_t p_;
    uint64_t acc_limit_;
};

// A field element bound to its field; convenience layer used by the
// bindings and tests. Kernel loops work on raw uint32_t instead.
struct FieldElement {
    uint32_t value = 0;
    const PrimeField* field = nullptr;

    FieldElement() = default;
    FieldElement(uint32_t v, const PrimeField& f) : value(v % f.modulus()), field(&f) {}

    friend FieldElement operator+(FieldElement a, FieldElement b) {
        a.check(b);
        return {a.field->add(a.value, b.value), *a.field};
    }
    friend FieldElement operator-(FieldElement a, FieldElement b) {
        a.check(b);
        return {a.field->sub(a.value, b.value), *a.field};
    }
    friend FieldElement operator*(FieldElement a, FieldElement b) {
        a.check(b);
        return {a.field->mul(a.value, b.value), *a.field};
    }
    friend FieldElement operator/(FieldElement a, FieldElement b) {
        a.check(b);
        return {a.field->div(a.value, b.value), *a.field};
    }
    bool operator==(const FieldElement& o) const { return value == o.value; }

    void check(const FieldElement& o) const;
};

}  // namespace fano
