#pragma once

#include <cstdint>
#include <string>

namespace roc2 {

/* An element a + b*sigma of RO(C2), written in the basis {1, sigma}.
 * rho = 1 + sigma is always normalized into this basis on input. */
struct Degree {
    long long a = 0;  // multiplicity of the trivial representation
    long long b = 0;  // multiplicity of the sign representation sigma

    friend Degree operator+(Degree x, Degree y) { return {x.a + y.a, x.b + y.b}; }
    friend Degree operator-(Degree x, Degree y) { return {x.a - y.a, x.b - y.b}; }
    friend Degree operator*(long long n, Degree x) { return {n * x.a, n * x.b}; }
    Degree operator-() const { return {-a, -b}; }
    friend bool operator==(const Degree& x, const Degree& y) { return x.a == y.a && x.b == y.b; }
    friend bool operator!=(const Degree& x, const Degree& y) { return !(x == y); }
    friend bool operator<(const Degree& x, const Degree& y)
    {
        return x.a < y.a || (x.a == y.a && x.b < y.b);
    }

    long long underlying_dimension() const { return a + b; }
    std::string str() const;
};

inline Degree deg_sigma() { return {0, 1}; }
inline Degree deg_rho() { return {1, 1}; }

/* k copies of the regular representation. */
inline Degree regular_multiple(long long k) { return {k, k}; }

/* A spot of an RO(C2)-graded spectral sequence: representation degree
 * plus cohomological filtration. Integer charts use stem = a + b. */
struct BiDegree {
    Degree degree;
    long long filtration = 0;

    long long stem() const { return degree.underlying_dimension(); }
    friend bool operator==(const BiDegree& x, const BiDegree& y)
    {
        return x.degree == y.degree && x.filtration == y.filtration;
    }
    friend bool operator<(const BiDegree& x, const BiDegree& y)
    {
        if (x.degree != y.degree)
            return x.degree < y.degree;
        return x.filtration < y.filtration;
    }
};

/* Tridegree (r, s, t) of the fixed point spectral sequence, converted to
 * representation grading: (r,s,t) sits in degree (t-r) + r*sigma, filtration s. */
inline BiDegree tri_to_bidegree(long long r, long long s, long long t)
{
    return BiDegree{Degree{t - r, r}, s};
}

/* Where a d_r starting at `src` lands: one trivial unit down, r filtrations up. */
inline BiDegree differential_target(const BiDegree& src, long long r)
{
    return BiDegree{src.degree - Degree{1, 0}, src.filtration + r};
}

}  // namespace roc2
