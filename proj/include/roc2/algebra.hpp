#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "roc2/fgab.hpp"
#include "roc2/grading.hpp"
#include "roc2/linalg.hpp"

namespace roc2 {

struct Generator {
    std::string name;
    Degree degree;
    long long filtration = 0;  // >= 0
    int annihilator = 0;       // 0 = free over Z[1/3], 2 = killed by 2
    bool invertible = false;   // Laurent generator
};

/* Exponent vector indexed by generator position; size equals gens().size(). */
using Monomial = std::vector<int32_t>;

struct Element {
    std::map<Monomial, long long> terms;

    bool is_zero() const { return terms.empty(); }
    friend bool operator==(const Element& x, const Element& y) { return x.terms == y.terms; }
};

/* Per-generator exponent bounds for enumeration in Laurent directions. */
struct ExponentWindow {
    int cap = 64;  // |exponent| <= cap on every generator
};

class MonomialAlgebra {
public:
    MonomialAlgebra() = default;
    explicit MonomialAlgebra(std::vector<Generator> gens);

    const std::vector<Generator>& gens() const { return gens_; }
    size_t size() const { return gens_.size(); }
    int index_of(const std::string& name) const;  // -1 when absent
    const Generator& gen(const std::string& name) const;

    Degree degree_of(const Monomial& m) const;
    long long filtration_of(const Monomial& m) const;
    int annihilator_of(const Monomial& m) const;

    Monomial monomial(const std::map<std::string, int>& exps) const;
    Monomial unit_monomial() const { return Monomial(gens_.size(), 0); }
    std::string monomial_str(const Monomial& m) const;
    std::string element_str(const Element& e) const;

    /* Drops zero terms and reduces coefficients mod 2 on 2-torsion monomials. */
    void normalize(Element& e) const;

    Element element(const Monomial& m, long long c = 1) const;
    Element add(const Element& x, const Element& y) const;
    Element scale(long long c, const Element& x) const;
    Element multiply(const Element& x, const Element& y) const;

    /* Equality in the free module over Z[1/3]: coefficients may differ by
     * a power of 3 uniformly per term pair. */
    bool associate(const Element& x, const Element& y) const;

    /* All monomials of the given degree and filtration, lexicographic in
     * name-sorted generator order. Throws when the degree map has kernel
     * directions inside the allowed exponent cone and no window is given. */
    std::vector<Monomial> basis_in_bidegree(Degree d, long long s,
                                            std::optional<ExponentWindow> window = {}) const;

    MonomialAlgebra localize(const std::string& gen_name) const;

    /* True when bidegree pieces are infinite without an exponent window. */
    bool requires_exponent_window() const { return cone_has_kernel_direction(); }

private:
    std::vector<Generator> gens_;
    std::map<std::string, int> index_;
    std::vector<int> name_order_;  // generator indices sorted by name

    void validate() const;
    bool cone_has_kernel_direction() const;

    friend struct MonomialLess;
};

/* Named polynomial presentations living inside an ambient monomial algebra. */
Element expand_named(const MonomialAlgebra& a, const std::string& name);

/* Degree-zero subring of the filtration-0, torsion-free part of an algebra.
 * Grading is either the full RO(C2) degree or the underlying Z-dimension. */
enum class GradingKind { RepresentationDegree, UnderlyingDegree };

struct SubringPresentation {
    enum class Kind { Constants, Polynomial, Laurent, Mixed } kind;
    struct Gen {
        std::string label;
        std::map<std::string, int> exps;
        bool invertible;
    };
    std::vector<Gen> generators;
};

SubringPresentation degree_zero_subring(const MonomialAlgebra& a,
                                        GradingKind grading = GradingKind::RepresentationDegree);

/* Unit group of Z[1/3][polynomial/Laurent gens]: <3> x <-1> x Laurent part. */
FGAbelianGroup unit_group(const SubringPresentation& r);

/* Content check used before factoring Delta: a polynomial of a3-degree <= 1
 * whose top a3-coefficient is a 3-power unit is irreducible over
 * Z[1/3][a1, a3]. */
bool irreducible_linear_in(const MonomialAlgebra& a, const Element& e, const std::string& var);

}  // namespace roc2
