#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "fanokernel/poly.hpp"

namespace fano {

struct InhomogeneousInput : std::invalid_argument {
    InhomogeneousInput() : std::invalid_argument("module operation requires homogeneous input") {}
};

// Free module ⊕_i R(-twists[i]); twists are generator degrees.
struct FreeModule {
    RingPtr ring;
    std::vector<int> twists;

    size_t rank() const { return twists.size(); }
};

struct ModTerm {
    Mono m;
    uint32_t comp = 0;
    uint32_t c = 0;
};

enum class ModOrder { TOP, POT };  // term-over-position / position-over-term

// Element of a free module, terms strictly descending. TOP: ring order on
// the monomial, lower component breaks ties. POT: lower component first.
class ModPoly {
public:
    ModPoly() = default;
    explicit ModPoly(RingPtr R, ModOrder ord = ModOrder::TOP) : R_(std::move(R)), ord_(ord) {}

    static ModPoly from_terms(RingPtr R, ModOrder ord, std::vector<ModTerm> ts);
    static ModPoly unit(RingPtr R, ModOrder ord, uint32_t comp, int ncomp_unused = 0);
    static ModPoly from_poly(const Poly& f, uint32_t comp, ModOrder ord);

    const RingPtr& ring() const { return R_; }
    ModOrder order() const { return ord_; }
    const std::vector<ModTerm>& terms() const { return ts_; }
    bool is_zero() const { return ts_.empty(); }
    const ModTerm& lead() const { return ts_.front(); }

    int cmp_terms(const ModTerm& a, const ModTerm& b) const;

    ModPoly operator+(const ModPoly& o) const;
    ModPoly axpy_sub(uint32_t c, Mono m, const ModPoly& g) const;  // this - c*m*g
    ModPoly mono_mul(Mono m, uint32_t c) const;
    ModPoly scaled(uint32_t c) const;
    ModPoly monic() const;

    Poly component(uint32_t comp) const;
    // degree with twists; -2 if inhomogeneous, -1 if zero
    int homogeneous_degree(const std::vector<int>& twists) const;

private:
    RingPtr R_;
    ModOrder ord_ = ModOrder::TOP;
    std::vector<ModTerm> ts_;
};

struct GBOptions {
    bool track_syzygies = false;
    int degree_cap = -1;   // skip S-pairs whose sugar exceeds the cap
    bool fully_reduce = true;
};

struct ModGBResult {
    std::vector<ModPoly> basis;      // reduced (or at least minimal/monic) GB
    std::vector<ModPoly> syzygies;   // generators of Syz(inputs), POT over input index
    bool truncated = false;
};

// Buchberger over a free module (rank 1 = ideal case). Sugar-degree pair
// selection, Gebauer-Moeller pruning, product criterion only in rank 1.
ModGBResult module_buchberger(const FreeModule& F, const std::vector<ModPoly>& gens,
                              ModOrder ord = ModOrder::TOP, GBOptions opt = {});

ModPoly module_normal_form(const ModPoly& f, const std::vector<ModPoly>& basis);

// Ideal-level conveniences.
std::vector<Poly> buchberger(const std::vector<Poly>& gens, GBOptions opt = {});
std::vector<Poly> reduce_basis(std::vector<Poly> gb);
Poly normal_form(const Poly& f, const std::vector<Poly>& gb);

// Syzygy matrix of the given module generators: columns are generators of
// the kernel of F_gens <- R^s, as a graded matrix.
PolyMatrix syzygy_matrix(const FreeModule& F, const std::vector<ModPoly>& gens);

// Betti-style table: (homological index, internal degree) -> count.
struct BettiReport {
    std::map<std::pair<int, int>, long> table;

    bool operator==(const BettiReport& o) const { return table == o.table; }
    std::string str() const;
};

struct Resolution {
    std::vector<PolyMatrix> maps;  // maps[i] : F_{i+1} -> F_i, columns in F_i
    std::vector<int> f0_twists;
    BettiReport betti;
};

// Minimal free resolution of coker(presentation). For an ideal I pass the
// 1 x g generator matrix to resolve R/I.
Resolution free_resolution(const FreeModule& F0, const std::vector<ModPoly>& gens,
                           int max_length);
Resolution free_resolution_of_quotient(const std::vector<Poly>& ideal_gens, int max_length);

}  // namespace fano
