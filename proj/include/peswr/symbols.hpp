#ifndef PESWR_SYMBOLS_HPP
#define PESWR_SYMBOLS_HPP

#include <array>
#include <complex>
#include <vector>

#include "peswr/core.hpp"
#include "peswr/layout.hpp"

namespace peswr {

using Cplx = std::complex<double>;

/** Laplace-Fourier sample point; Re(s) must be positive. */
struct SymbolInput {
    Cplx s;
    double eta = 0.0;
    int n = 0;
    PhysicalParams params;

    void validate() const;
};

/** Small dense complex matrix tagged with the interface side. */
struct SymbolMatrix {
    Side side = Side::Minus;
    int rows = 0;
    int cols = 0;
    std::vector<Cplx> a;

    SymbolMatrix() = default;
    SymbolMatrix(Side s, int r, int c)
        : side(s), rows(r), cols(c), a(static_cast<size_t>(r) * c, Cplx(0.0)) {}
    Cplx& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    Cplx at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
    double frobenius() const;
};

SymbolMatrix operator-(const SymbolMatrix& x, const SymbolMatrix& y);

struct BaroclinicRoots {
    // lambda[sign of the sqrt][sign of the i/eps coupling], signs {+,-}.
    Cplx plus_plus, plus_minus, minus_plus, minus_minus;
    std::array<Cplx, 4> all() const { return {plus_plus, plus_minus, minus_plus, minus_minus}; }
};

/** Quartic roots lambda^{n,+-}_{+-} = (Re/2)(u0 +- sqrt(Delta_{+-})),
 *  Delta_{+-} = u0^2 + (4/Re)(eta^2/Re + mu_n^2/Re' + s + i eta v0 +- i/eps). */
BaroclinicRoots baroclinic_roots(const SymbolInput& inp);

// 2x2 coupled advection-diffusion block; det M_n = q^2 + 1/eps^2.
Cplx baroclinic_det(const SymbolInput& inp, Cplx lambda);

/** Exact Dirichlet-to-Neumann symbol -/+ (1/Re) Phi Lambda Phi^{-1} +- u0 I.
 * side == Plus selects the positive-real-part root pair (solutions decaying
 * in the minus domain), side == Minus the negative pair. */
SymbolMatrix baroclinic_symbol_exact(const SymbolInput& inp, Side side);

/** sqrt(eps)-leading constant approximation, independent of the mode n. */
SymbolMatrix baroclinic_symbol_approx(Side side, const PhysicalParams& params);

/** Coefficients c[0..5] (ascending powers) of det M_0(lambda), the
 *  barotropic quintic, expanded in closed form. */
std::array<Cplx, 6> barotropic_det_coeffs(const SymbolInput& inp);

// Direct cofactor evaluation of det M_0(lambda); oracle for the expansion.
Cplx barotropic_det(const SymbolInput& inp, Cplx lambda);

/** All roots of a complex polynomial (ascending coefficients) with
 * backward error <= 1e-10 relative to the evaluation magnitude.
 * Durand-Kerner plus Newton polish; deterministic. */
std::vector<Cplx> polyroots(const std::vector<Cplx>& coeffs);

struct BarotropicAsymptotics {
    Cplx transport;     // lambda^0_0
    Cplx neg_plus, neg_minus;  // lambda^{0,-}_{+-}
    Cplx pos_plus, pos_minus;  // lambda^{0,+}_{+-}
};

/** Leading-order root approximations lambda^0_0 = -(s + i eta v0)/u0,
 *  lambda^{0,-/+}_{+-} = -/+ sqrt(+-i Re)/sqrt(eps)
 *                       + (Re u0/2 - Re/(4 Fr^2 u0)). */
BarotropicAsymptotics barotropic_roots_asymptotic(const SymbolInput& inp);

/** Constant barotropic symbol approximations; 2x3 for the minus side,
 *  3x2 for the plus side. */
SymbolMatrix barotropic_symbol_approx(Side side, const PhysicalParams& params);

/** Null direction of a (numerically) rank-2 complex 3x3 matrix via the
 * largest cross product of two rows. */
std::array<Cplx, 3> null_vector_3x3(const std::array<std::array<Cplx, 3>, 3>& m);

// Least-squares slope of log10(y) against log10(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

} // namespace peswr

#endif
