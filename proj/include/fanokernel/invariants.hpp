#pragma once

#include <optional>

#include "fanokernel/ideal.hpp"

namespace fano {

struct ZeroIdealNoGenus : std::domain_error {
    ZeroIdealNoGenus() : std::domain_error("genus is defined for curves only") {}
};

// Hilbert series data of R/I: numerator over (1-t)^n, projective dimension,
// degree, and arithmetic genus for curves.
struct HilbertData {
    std::vector<long long> numerator;          // N(t), raw
    std::vector<long long> reduced_numerator;  // N(t)/(1-t)^e with e maximal
    int cone_dim = 0;                          // Krull dimension of R/I
    int dim = -1;                              // projective dimension
    long long degree = 0;
    std::optional<long long> genus;            // arithmetic, dim == 1 only

    long long hilbert_function(int d) const;       // exact HF of R/I
    long long hilbert_polynomial(long long d) const;
    int nvars = 0;
};

HilbertData hilbert_series(const Ideal& I);

struct NumericInvariants {
    int dim = -1;
    long long degree = 0;
    std::optional<long long> genus;
};
NumericInvariants numeric_invariants(const Ideal& I);

bool is_smooth(const Ideal& I);

}  // namespace fano
