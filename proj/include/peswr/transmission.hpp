#ifndef PESWR_TRANSMISSION_HPP
#define PESWR_TRANSMISSION_HPP

#include <array>
#include <iosfwd>
#include <vector>

#include "peswr/core.hpp"
#include "peswr/layout.hpp"

namespace peswr {

using Mat2 = std::array<std::array<double, 2>, 2>;

/** Free parameters (alpha, beta) and the constant coupling matrices of
 *  the generalized interface conditions
 *      B_pm U = -/+ (1/Re) dx U +/- (u0/2) U + (alpha/sqrt(eps)) A U
 *               -/+ beta B Ubar,
 *  plus the scalar water-height functional u0*zeta + ubar on the plus
 *  side. */
struct TransmissionParams {
    double alpha; // > 0
    double beta;  // >= 0

    static constexpr Mat2 matrix_a() { return {{{1.0, -1.0}, {1.0, 1.0}}}; }
    static constexpr Mat2 matrix_b() { return {{{1.0, -0.5}, {-0.5, 0.0}}}; }

    // Values read off the sqrt(eps) expansion of the exact symbols.
    static TransmissionParams taylor(const PhysicalParams& p);

    void validate() const;
};

double alpha_taylor(const PhysicalParams& p);
double beta_taylor(const PhysicalParams& p);

/** Interface time series exchanged between the subdomains.
 *
 * b_u/b_v hold the functional values per level j and time slot k. Slots
 * k = 0..nt-1 live at the half-integer times t_{k+1/2} (the update rule
 * averages the traces at k and k+1); the trailing k = nt column exists
 * only to keep the array shape aligned with the traces and stays zero.
 * b_zeta (plus side only) is sampled at the integer times 0..nt.
 */
struct TransmissionRecord {
    Side side = Side::Plus; // which operator family, Minus or Plus
    int nlev = 0;           // nz + 1
    int nt = 0;
    std::vector<double> b_u; // (nz+1) x (nt+1)
    std::vector<double> b_v;
    std::vector<double> b_zeta; // nt+1, plus side only (empty otherwise)

    TransmissionRecord() = default;
    TransmissionRecord(Side s, int nlev_, int nt_);

    size_t idx(int j, int k) const { return static_cast<size_t>(j) * (nt + 1) + k; }
    bool finite() const;
};

/** Continuous-form B operator on given interface traces; diagnostic and
 *  test surface, the solvers use the discrete closures below. Returns
 *  {B^u, B^v} and, for side == Plus, the scalar u0*zeta + ubar. */
struct BOperatorValue {
    double u = 0.0;
    double v = 0.0;
    double zeta = 0.0; // meaningful for side == Plus only
};

BOperatorValue b_operator_continuous(Side side,
                                     const std::array<double, 2>& u_trace,
                                     const std::array<double, 2>& du_dx_trace,
                                     const std::array<double, 2>& mean_trace,
                                     double zeta_trace,
                                     const PhysicalParams& params,
                                     const TransmissionParams& tp);

/** Interface traces of one subdomain solve at integer times: velocity
 *  components of the interface column, the last water-height cell and
 *  the interface column mean, all with nt+1 samples. */
struct InterfaceTrace {
    int nlev = 0;
    int nt = 0;
    std::vector<double> u; // (nz+1) x (nt+1)
    std::vector<double> v;
    std::vector<double> zeta_adjacent; // nt+1 (last zeta cell of the minus side)
    std::vector<double> mean_u;        // nt+1

    InterfaceTrace() = default;
    InterfaceTrace(int nlev_, int nt_);
    size_t idx(int j, int k) const { return static_cast<size_t>(j) * (nt + 1) + k; }
};

/** Record recursion B_out := -B_in + 2 (alpha/sqrt(eps)) A <U> with the
 *  trace time average <U>_k = (U_k + U_{k+1})/2; sides flip. No spatial
 *  derivative of the neighbor solution is needed. b_zeta of a plus-side
 *  output is NOT produced here (see compute_b_zeta). */
TransmissionRecord update_transmission(const TransmissionRecord& incoming,
                                       const std::vector<double>& interface_u_trace,
                                       const std::vector<double>& interface_v_trace,
                                       const TransmissionParams& tp,
                                       const PhysicalParams& params);

/** Scalar water-height functional u0*zeta + ubar at one time level. */
double compute_b_zeta(double zeta_last_cell, double mean_u_interface,
                      const PhysicalParams& params);

/** Coefficients of the modified Crank-Nicolson interface rows, obtained
 *  from the half-cell balance with the boundary flux expressed through
 *  the B functional. All values multiply unknowns at the interface
 *  column; mean couplings apply the trapezoid weights per level.
 *  rhs_record_scale multiplies the incoming record value, and the plus
 *  side additionally consumes the time-averaged b_zeta with
 *  rhs_bzeta_scale (the water-height ghost eliminated through
 *  u0*zeta + ubar). */
struct InterfaceRowCoeffs {
    // L-operator contributions (before the Crank-Nicolson half).
    double uu = 0.0;       // u-row, interface u
    double uv = 0.0;       // u-row, interface v
    double vu = 0.0;       // v-row, interface u
    double vv = 0.0;       // v-row, interface v
    double u_mean_u = 0.0; // u-row, coupling to ubar of the column
    double u_mean_v = 0.0; // u-row, coupling to vbar
    double v_mean_u = 0.0; // v-row, coupling to ubar
    double rhs_record_scale = 0.0; // multiplies incoming b_u / b_v
    double rhs_bzeta_scale = 0.0;  // plus side: multiplies <b_zeta>
};

InterfaceRowCoeffs interface_momentum_rows(Side side, const TransmissionParams& tp,
                                           const PhysicalParams& params,
                                           const GridSpec& grid);

// CSV round trip (columns side,j,k,b_u,b_v,b_zeta) at full precision.
void write_record_csv(std::ostream& os, const TransmissionRecord& rec);
TransmissionRecord read_record_csv(std::istream& is);

} // namespace peswr

#endif
