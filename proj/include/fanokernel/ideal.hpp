#pragma once

#include <memory>
#include <mutex>
#include <optional>

#include "fanokernel/groebner.hpp"

namespace fano {

struct AllFormsVanish : std::invalid_argument {
    AllFormsVanish() : std::invalid_argument("every form vanishes on the variety") {}
};
struct PointNotOnVariety : std::invalid_argument {
    PointNotOnVariety() : std::invalid_argument("point does not lie on the variety") {}
};
struct NoRationalPoint : std::runtime_error {
    NoRationalPoint() : std::runtime_error("no rational point found within the retry budget") {}
};
struct DegeneratePosition : std::invalid_argument {
    explicit DegeneratePosition(const std::string& m) : std::invalid_argument(m) {}
};
struct ProjectionNotGeneric : std::runtime_error {
    ProjectionNotGeneric() : std::runtime_error("seeded projection was not generic, retry") {}
};

// Homogeneous ideal with a lazily cached reduced Groebner basis. Cheap to
// copy; the cache is shared and filled once.
class Ideal {
public:
    Ideal() = default;
    Ideal(RingPtr R, std::vector<Poly> gens);

    static Ideal zero(RingPtr R) { return Ideal(std::move(R), {}); }
    static Ideal unit(RingPtr R) { return Ideal(R, {Poly::constant(R, 1)}); }

    const RingPtr& ring() const { return st_->ring; }
    const std::vector<Poly>& gens() const { return st_->gens; }
    const std::vector<Poly>& gb() const;  // reduced Groebner basis

    bool is_zero_ideal() const { return st_->gens.empty(); }
    bool is_unit() const;

    Poly nf(const Poly& f) const { return normal_form(f, gb()); }
    bool contains(const Poly& f) const { return nf(f).is_zero(); }

private:
    struct State {
        RingPtr ring;
        std::vector<Poly> gens;
        mutable std::mutex mu;
        mutable std::shared_ptr<const std::vector<Poly>> gb;
    };
    std::shared_ptr<State> st_;
};

enum class CombineOp { Sum, Product, Power };
Ideal combine(const Ideal& I, const Ideal& J, CombineOp op, int power = 0);
Ideal intersect(const Ideal& I, const Ideal& J);
Ideal intersect_many(std::vector<Ideal> ideals);
Ideal quotient_by_poly(const Ideal& I, const Poly& g);
Ideal quotient(const Ideal& I, const Ideal& J);
// iterated quotient by J until stable
Ideal saturate(const Ideal& I, const Ideal& J);
// saturation with respect to the irrelevant maximal ideal
Ideal saturate_irrelevant(const Ideal& I, uint64_t seed = 1);

// I viewed in the subring of the variables NOT listed; result lives in a
// fresh ring on the remaining variables.
Ideal eliminate(const Ideal& I, const std::vector<int>& vars);

bool is_subset(const Ideal& I, const Ideal& J);  // I contained in J
bool ideal_equals(const Ideal& I, const Ideal& J);

// closure of the image of V(I) under the map given by the forms; target is
// a fresh ring with one variable per form
Ideal map_kernel(const std::vector<Poly>& forms, const Ideal& I);

struct ImageInvariants {
    int dim;
    long long degree;
};
ImageInvariants image_invariants(const std::vector<Poly>& forms, const Ideal& I, uint64_t seed);
long long map_degree(const std::vector<Poly>& forms, const Ideal& I, uint64_t seed);

// ---- linear systems through fat points ----

struct PointConfiguration {
    std::vector<std::vector<uint32_t>> points;  // projective coordinates
    std::vector<int> multiplicities;

    void validate(const PrimeField& F) const;  // distinct, not all zero
    bool general_linear_position(const PrimeField& F) const;
};

struct GradedPieceBasis {
    int degree;
    std::vector<Poly> basis;
    long long dimension() const { return (long long)basis.size(); }
};

// Fast path: interpolation with Hasse-derivative vanishing conditions plus
// optional membership conditions in the given ideals.
GradedPieceBasis graded_piece(RingPtr R, const PointConfiguration& pc, int d,
                              const std::vector<Ideal>& containment = {});
// Slow path: degree-d piece of the saturation of I.
GradedPieceBasis graded_piece(const Ideal& I, int d);

Ideal singular_locus(const Ideal& I);

Ideal component_through_point(const Ideal& I, const std::vector<uint32_t>& q);

std::vector<std::vector<uint32_t>> points_on_curve(const Ideal& I, int count, uint64_t seed);

struct RationalNormalQuartic {
    Ideal ideal;
    std::vector<Poly> parametrization;  // 5 binary quartics in k[t,s]
};
RationalNormalQuartic rnc_through_seven(RingPtr R,
                                        const std::vector<std::vector<uint32_t>>& pts);

// ---- helpers used across the scenes ----

Ideal ideal_of_point(RingPtr R, const std::vector<uint32_t>& p);
Ideal ideal_of_line(RingPtr R, const std::vector<uint32_t>& p,
                    const std::vector<uint32_t>& q);
std::vector<Poly> min_gens(const Ideal& I);

// binomial coefficient mod p via Lucas
uint32_t binom_mod(long a, long b, const PrimeField& F);

// all degree-d monomials (desc) with a binary-search rank helper
const std::vector<Mono>& degree_monomials(const PolyRing& R, int d);
size_t mono_rank(const PolyRing& R, const std::vector<Mono>& monos, Mono m);

// dense vector over the degree-d monomial basis reduced to standard support
void dense_reduce(const PolyRing& R, const std::vector<Poly>& gb, int d,
                  const std::vector<Mono>& monos, std::vector<uint32_t>& v);

}  // namespace fano
