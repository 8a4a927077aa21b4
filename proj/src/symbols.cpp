#include "peswr/symbols.hpp"

#include <cmath>
#include <stdexcept>

namespace peswr {

void SymbolInput::validate() const {
    if (!(s.real() > 0.0))
        throw std::invalid_argument("SymbolInput: Re(s) must be > 0");
    if (n < 0) throw std::invalid_argument("SymbolInput: n must be >= 0");
    params.validate();
}

double SymbolMatrix::frobenius() const {
    double s = 0.0;
    for (const Cplx& z : a) s += std::norm(z);
    return std::sqrt(s);
}

SymbolMatrix operator-(const SymbolMatrix& x, const SymbolMatrix& y) {
    if (x.rows != y.rows || x.cols != y.cols)
        throw std::invalid_argument("SymbolMatrix: shape mismatch");
    SymbolMatrix out = x;
    for (size_t p = 0; p < out.a.size(); ++p) out.a[p] -= y.a[p];
    return out;
}

namespace {

Cplx q_poly(const SymbolInput& inp, Cplx lambda, double mu2_over_rev) {
    const auto& p = inp.params;
    return -lambda * lambda / p.reynolds + p.u0 * lambda + inp.s +
           inp.eta * inp.eta / p.reynolds + mu2_over_rev + Cplx(0.0, inp.eta * p.v0);
}

} // namespace

BaroclinicRoots baroclinic_roots(const SymbolInput& inp) {
    inp.validate();
    if (inp.n < 1) throw std::invalid_argument("baroclinic_roots: n must be >= 1");
    const auto& p = inp.params;
    const double mu = inp.n * M_PI;
    const Cplx base = inp.eta * inp.eta / p.reynolds + mu * mu / p.reynolds_v + inp.s +
                      Cplx(0.0, inp.eta * p.v0);
    const Cplx ieps(0.0, 1.0 / p.epsilon);
    const Cplx dplus = p.u0 * p.u0 + 4.0 / p.reynolds * (base + ieps);
    const Cplx dminus = p.u0 * p.u0 + 4.0 / p.reynolds * (base - ieps);
    const Cplx sp = std::sqrt(dplus);
    const Cplx sm = std::sqrt(dminus);
    BaroclinicRoots r;
    r.plus_plus = 0.5 * p.reynolds * (p.u0 + sp);
    r.plus_minus = 0.5 * p.reynolds * (p.u0 + sm);
    r.minus_plus = 0.5 * p.reynolds * (p.u0 - sp);
    r.minus_minus = 0.5 * p.reynolds * (p.u0 - sm);
    return r;
}

Cplx baroclinic_det(const SymbolInput& inp, Cplx lambda) {
    const double mu = inp.n * M_PI;
    const Cplx q = q_poly(inp, lambda, mu * mu / inp.params.reynolds_v);
    const double ie = 1.0 / inp.params.epsilon;
    return q * q + ie * ie;
}

SymbolMatrix baroclinic_symbol_exact(const SymbolInput& inp, Side side) {
    if (side == Side::Mono)
        throw std::invalid_argument("baroclinic symbol: side must be Minus or Plus");
    const BaroclinicRoots r = baroclinic_roots(inp);
    // side Plus keeps the decaying-in-Omega^- roots (positive real part).
    const Cplx la = (side == Side::Plus) ? r.plus_plus : r.minus_plus;   // coupling +
    const Cplx lb = (side == Side::Plus) ? r.plus_minus : r.minus_minus; // coupling -
    // Phi columns (1, -i) and (1, i); Phi Lambda Phi^{-1} in closed form.
    const Cplx half_sum = 0.5 * (la + lb);
    const Cplx half_diff = 0.5 * (la - lb);
    const Cplx i(0.0, 1.0);
    SymbolMatrix out(side, 2, 2);
    out.at(0, 0) = half_sum;
    out.at(0, 1) = i * half_diff;
    out.at(1, 0) = -i * half_diff;
    out.at(1, 1) = half_sum;
    const double sgn = (side == Side::Plus) ? 1.0 : -1.0;
    for (Cplx& z : out.a) z *= -sgn / inp.params.reynolds;
    out.at(0, 0) += sgn * inp.params.u0;
    out.at(1, 1) += sgn * inp.params.u0;
    return out;
}

SymbolMatrix baroclinic_symbol_approx(Side side, const PhysicalParams& params) {
    if (side == Side::Mono)
        throw std::invalid_argument("baroclinic symbol: side must be Minus or Plus");
    const double sgn = (side == Side::Plus) ? 1.0 : -1.0;
    const double c = std::sqrt(2.0 / params.reynolds) / std::sqrt(params.epsilon);
    SymbolMatrix out(side, 2, 2);
    out.at(0, 0) = 0.5 * (sgn * params.u0 - c);
    out.at(0, 1) = 0.5 * c;
    out.at(1, 0) = -0.5 * c;
    out.at(1, 1) = 0.5 * (sgn * params.u0 - c);
    return out;
}

std::array<Cplx, 6> barotropic_det_coeffs(const SymbolInput& inp) {
    inp.validate();
    const auto& p = inp.params;
    const double re = p.reynolds;
    const double fr2 = p.froude * p.froude;
    const double u0 = p.u0;
    const Cplx e = inp.s + Cplx(0.0, inp.eta * p.v0);       // w(l) = u0 l + e
    const Cplx d = e + inp.eta * inp.eta / re;              // q0(l) = -l^2/Re + u0 l + d
    const double ie2 = 1.0 / (p.epsilon * p.epsilon);
    const double eta2 = inp.eta * inp.eta;
    // det M_0 = w (q0^2 + 1/eps^2) + (q0/Fr^2)(eta^2 - l^2), expanded.
    std::array<Cplx, 6> c;
    c[5] = u0 / (re * re);
    c[4] = e / (re * re) - 2.0 * u0 * u0 / re + 1.0 / (re * fr2);
    c[3] = u0 * u0 * u0 - 2.0 * u0 * (d + e) / re - u0 / fr2;
    c[2] = u0 * u0 * e - 2.0 * d * e / re + 2.0 * u0 * u0 * d - (d + eta2 / re) / fr2;
    c[1] = 2.0 * u0 * d * e + u0 * (d * d + ie2) + u0 * eta2 / fr2;
    c[0] = e * (d * d + ie2) + d * eta2 / fr2;
    return c;
}

Cplx barotropic_det(const SymbolInput& inp, Cplx lambda) {
    const auto& p = inp.params;
    const Cplx q0 = q_poly(inp, lambda, 0.0);
    const Cplx w = p.u0 * lambda + inp.s + Cplx(0.0, inp.eta * p.v0);
    const Cplx ie(0.0, 1.0 / p.epsilon);
    const double fr2 = p.froude * p.froude;
    const Cplx ieta(0.0, inp.eta);
    // Cofactor expansion of the displayed 3x3 matrix.
    const Cplx a11 = q0, a12 = -1.0 / p.epsilon, a13 = lambda / fr2;
    const Cplx a21 = 1.0 / p.epsilon, a22 = q0, a23 = ieta / fr2;
    const Cplx a31 = lambda, a32 = ieta, a33 = w;
    (void)ie;
    return a11 * (a22 * a33 - a23 * a32) - a12 * (a21 * a33 - a23 * a31) +
           a13 * (a21 * a32 - a22 * a31);
}

namespace {

Cplx poly_eval(const std::vector<Cplx>& c, Cplx z) {
    Cplx acc(0.0);
    for (size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
    return acc;
}

Cplx poly_eval_deriv(const std::vector<Cplx>& c, Cplx z) {
    Cplx acc(0.0);
    for (size_t k = c.size(); k-- > 1;) acc = acc * z + static_cast<double>(k) * c[k];
    return acc;
}

double eval_magnitude(const std::vector<Cplx>& c, Cplx z) {
    double acc = 0.0;
    double zp = 1.0;
    const double az = std::abs(z);
    for (size_t k = 0; k < c.size(); ++k) {
        acc += std::abs(c[k]) * zp;
        zp *= az;
    }
    return acc;
}

} // namespace

std::vector<Cplx> polyroots(const std::vector<Cplx>& coeffs) {
    if (coeffs.size() < 2) throw std::invalid_argument("polyroots: degree >= 1 required");
    const size_t n = coeffs.size() - 1;
    const double lead = std::abs(coeffs.back());
    double maxc = 0.0;
    for (const Cplx& z : coeffs) maxc = std::max(maxc, std::abs(z));
    if (!(lead > 0.0) || lead < 1e-300 * maxc)
        throw std::invalid_argument("polyroots: degenerate leading coefficient");

    // Monic copy.
    std::vector<Cplx> c(coeffs);
    for (Cplx& z : c) z /= coeffs.back();

    // Cauchy-style radius bound for the initial circle.
    double radius = 0.0;
    for (size_t k = 0; k < n; ++k) radius = std::max(radius, std::abs(c[k]));
    radius = 1.0 + radius;

    const double tol = 1e-10;
    for (int attempt = 0; attempt < 4; ++attempt) {
        std::vector<Cplx> r(n);
        const double phase = 0.40 + 0.37 * attempt;
        const double rad = radius * (1.0 + 0.25 * attempt);
        for (size_t k = 0; k < n; ++k) {
            const double ang = 2.0 * M_PI * k / n + phase;
            r[k] = rad * Cplx(std::cos(ang), std::sin(ang));
        }
        // Durand-Kerner sweeps.
        bool converged = false;
        for (int it = 0; it < 600 && !converged; ++it) {
            double move = 0.0;
            for (size_t k = 0; k < n; ++k) {
                Cplx denom(1.0);
                for (size_t m = 0; m < n; ++m)
                    if (m != k) denom *= (r[k] - r[m]);
                if (denom == Cplx(0.0)) {
                    r[k] += Cplx(1e-8 * rad, 1e-8 * rad);
                    continue;
                }
                const Cplx delta = poly_eval(c, r[k]) / denom;
                r[k] -= delta;
                move = std::max(move, std::abs(delta));
            }
            converged = move < 1e-14 * rad;
        }
        // Newton polish against the original coefficients.
        for (size_t k = 0; k < n; ++k) {
            for (int it = 0; it < 50; ++it) {
                const Cplx f = poly_eval(coeffs, r[k]);
                const Cplx df = poly_eval_deriv(coeffs, r[k]);
                if (df == Cplx(0.0)) break;
                const Cplx step = f / df;
                r[k] -= step;
                if (std::abs(step) < 1e-16 * (1.0 + std::abs(r[k]))) break;
            }
        }
        bool ok = true;
        for (size_t k = 0; k < n; ++k) {
            const double be = std::abs(poly_eval(coeffs, r[k])) /
                              std::max(eval_magnitude(coeffs, r[k]), 1e-300);
            if (!(be <= tol)) { ok = false; break; }
        }
        if (ok) return r;
    }
    throw std::runtime_error("polyroots: backward error target not reached");
}

BarotropicAsymptotics barotropic_roots_asymptotic(const SymbolInput& inp) {
    inp.validate();
    const auto& p = inp.params;
    const double re = p.reynolds;
    const double shift = 0.5 * re * p.u0 - re / (4.0 * p.froude * p.froude * p.u0);
    const double rs = std::sqrt(re / p.epsilon);
    const Cplx sqrt_pi = std::sqrt(Cplx(0.0, 1.0));  // e^{i pi/4}
    const Cplx sqrt_mi = std::sqrt(Cplx(0.0, -1.0)); // e^{-i pi/4}
    BarotropicAsymptotics out;
    out.transport = -(inp.s + Cplx(0.0, inp.eta * p.v0)) / p.u0;
    out.neg_plus = -rs * sqrt_pi + shift;
    out.neg_minus = -rs * sqrt_mi + shift;
    out.pos_plus = rs * sqrt_pi + shift;
    out.pos_minus = rs * sqrt_mi + shift;
    return out;
}

SymbolMatrix barotropic_symbol_approx(Side side, const PhysicalParams& params) {
    if (side == Side::Mono)
        throw std::invalid_argument("barotropic symbol: side must be Minus or Plus");
    const double c = std::sqrt(2.0) / std::sqrt(params.reynolds * params.epsilon);
    const double u0 = params.u0;
    const double f = 1.0 / (params.froude * params.froude * u0);
    const double fr2 = params.froude * params.froude;
    if (side == Side::Minus) {
        SymbolMatrix out(side, 2, 3);
        out.at(0, 0) = 0.5 * (-c - u0 - f);
        out.at(0, 1) = 0.5 * (c + 0.5 * f);
        out.at(0, 2) = 0.5 * (-2.0 / fr2);
        out.at(1, 0) = 0.5 * (-c + 0.5 * f);
        out.at(1, 1) = 0.5 * (-c - u0);
        out.at(1, 2) = 0.0;
        return out;
    }
    SymbolMatrix out(side, 3, 2);
    out.at(0, 0) = 0.5 * (-c + u0 - f);
    out.at(0, 1) = 0.5 * (c - 0.5 * f);
    out.at(1, 0) = 0.5 * (-c - 0.5 * f);
    out.at(1, 1) = 0.5 * (-c + u0);
    out.at(2, 0) = 0.0;
    out.at(2, 1) = 0.0;
    return out;
}

std::array<Cplx, 3> null_vector_3x3(const std::array<std::array<Cplx, 3>, 3>& m) {
    auto cross = [](const std::array<Cplx, 3>& a, const std::array<Cplx, 3>& b) {
        return std::array<Cplx, 3>{a[1] * b[2] - a[2] * b[1],
                                   a[2] * b[0] - a[0] * b[2],
                                   a[0] * b[1] - a[1] * b[0]};
    };
    auto norm2 = [](const std::array<Cplx, 3>& a) {
        return std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]);
    };
    // row . (row_a x row_b) = 0 holds bilinearly, which is exactly the
    // orthogonality m * v = 0 needs; pick the best-conditioned row pair.
    std::array<Cplx, 3> best{};
    double best_n = -1.0;
    const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (const auto& pr : pairs) {
        auto v = cross(m[pr[0]], m[pr[1]]);
        const double nn = norm2(v);
        if (nn > best_n) { best_n = nn; best = v; }
    }
    const double nn = std::sqrt(norm2(best));
    if (nn > 0.0)
        for (Cplx& z : best) z /= nn;
    return best;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("loglog_slope: need >= 2 points");
    const size_t n = x.size();
    double sx = 0.0, sy = 0.0;
    std::vector<double> lx(n), ly(n);
    for (size_t k = 0; k < n; ++k) {
        lx[k] = std::log10(x[k]);
        ly[k] = std::log10(y[k]);
        sx += lx[k];
        sy += ly[k];
    }
    const double mx = sx / n, my = sy / n;
    double num = 0.0, den = 0.0;
    for (size_t k = 0; k < n; ++k) {
        num += (lx[k] - mx) * (ly[k] - my);
        den += (lx[k] - mx) * (lx[k] - mx);
    }
    return num / den;
}

} // namespace peswr
