#include "peswr/transmission.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "peswr/csv.hpp"

namespace peswr {

double alpha_taylor(const PhysicalParams& p) { return 1.0 / std::sqrt(2.0 * p.reynolds); }
double beta_taylor(const PhysicalParams& p) { return 1.0 / (2.0 * p.froude * p.froude * p.u0); }

TransmissionParams TransmissionParams::taylor(const PhysicalParams& p) {
    return TransmissionParams{alpha_taylor(p), beta_taylor(p)};
}

void TransmissionParams::validate() const {
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
    if (!(beta >= 0.0)) throw std::invalid_argument("beta must be >= 0");
}

TransmissionRecord::TransmissionRecord(Side s, int nlev_, int nt_)
    : side(s), nlev(nlev_), nt(nt_),
      b_u(static_cast<size_t>(nlev_) * (nt_ + 1), 0.0),
      b_v(static_cast<size_t>(nlev_) * (nt_ + 1), 0.0) {
    if (s == Side::Mono) throw std::invalid_argument("record side must be Minus or Plus");
    if (s == Side::Plus) b_zeta.assign(static_cast<size_t>(nt_) + 1, 0.0);
}

bool TransmissionRecord::finite() const {
    auto ok = [](const std::vector<double>& a) {
        for (double x : a)
            if (!std::isfinite(x)) return false;
        return true;
    };
    return ok(b_u) && ok(b_v) && ok(b_zeta);
}

BOperatorValue b_operator_continuous(Side side,
                                     const std::array<double, 2>& u_trace,
                                     const std::array<double, 2>& du_dx_trace,
                                     const std::array<double, 2>& mean_trace,
                                     double zeta_trace,
                                     const PhysicalParams& params,
                                     const TransmissionParams& tp) {
    if (side == Side::Mono) throw std::invalid_argument("b_operator: side must be Minus or Plus");
    const double sgn = (side == Side::Plus) ? 1.0 : -1.0; // upper sign of -/+
    const double a_eps = tp.alpha / std::sqrt(params.epsilon);
    const Mat2 A = TransmissionParams::matrix_a();
    const Mat2 B = TransmissionParams::matrix_b();
    BOperatorValue out;
    const std::array<double, 2> au{A[0][0] * u_trace[0] + A[0][1] * u_trace[1],
                                   A[1][0] * u_trace[0] + A[1][1] * u_trace[1]};
    const std::array<double, 2> bm{B[0][0] * mean_trace[0] + B[0][1] * mean_trace[1],
                                   B[1][0] * mean_trace[0] + B[1][1] * mean_trace[1]};
    out.u = -sgn * du_dx_trace[0] / params.reynolds + sgn * 0.5 * params.u0 * u_trace[0]
            + a_eps * au[0] - sgn * tp.beta * bm[0];
    out.v = -sgn * du_dx_trace[1] / params.reynolds + sgn * 0.5 * params.u0 * u_trace[1]
            + a_eps * au[1] - sgn * tp.beta * bm[1];
    if (side == Side::Plus)
        out.zeta = params.u0 * zeta_trace + mean_trace[0];
    return out;
}

InterfaceTrace::InterfaceTrace(int nlev_, int nt_)
    : nlev(nlev_), nt(nt_),
      u(static_cast<size_t>(nlev_) * (nt_ + 1), 0.0),
      v(static_cast<size_t>(nlev_) * (nt_ + 1), 0.0),
      zeta_adjacent(static_cast<size_t>(nt_) + 1, 0.0),
      mean_u(static_cast<size_t>(nt_) + 1, 0.0) {}

TransmissionRecord update_transmission(const TransmissionRecord& incoming,
                                       const std::vector<double>& interface_u_trace,
                                       const std::vector<double>& interface_v_trace,
                                       const TransmissionParams& tp,
                                       const PhysicalParams& params) {
    const size_t expect = static_cast<size_t>(incoming.nlev) * (incoming.nt + 1);
    if (interface_u_trace.size() != expect || interface_v_trace.size() != expect)
        throw std::invalid_argument("update_transmission: trace shape mismatch");
    const Side out_side = (incoming.side == Side::Plus) ? Side::Minus : Side::Plus;
    TransmissionRecord out(out_side, incoming.nlev, incoming.nt);
    const double a_eps = tp.alpha / std::sqrt(params.epsilon);
    for (int j = 0; j < incoming.nlev; ++j) {
        for (int k = 0; k < incoming.nt; ++k) {
            const size_t p = incoming.idx(j, k);
            const double um = 0.5 * (interface_u_trace[p] + interface_u_trace[p + 1]);
            const double vm = 0.5 * (interface_v_trace[p] + interface_v_trace[p + 1]);
            out.b_u[p] = -incoming.b_u[p] + 2.0 * a_eps * (um - vm);
            out.b_v[p] = -incoming.b_v[p] + 2.0 * a_eps * (um + vm);
        }
    }
    return out;
}

double compute_b_zeta(double zeta_last_cell, double mean_u_interface,
                      const PhysicalParams& params) {
    return params.u0 * zeta_last_cell + mean_u_interface;
}

InterfaceRowCoeffs interface_momentum_rows(Side side, const TransmissionParams& tp,
                                           const PhysicalParams& params,
                                           const GridSpec& grid) {
    if (side == Side::Mono)
        throw std::invalid_argument("interface rows: side must be Minus or Plus");
    const double two_dx = 2.0 / grid.dx;
    const double a_eps = tp.alpha / std::sqrt(params.epsilon);
    const double u0 = params.u0;
    const double fr2u0 = params.froude * params.froude * u0;
    InterfaceRowCoeffs c;
    if (side == Side::Plus) {
        // Half-cell (0, dx/2): boundary flux F_0 is rebuilt from the
        // incoming functional, F_0 = b_in + (u0/2) u - a_eps (A U)
        //   + beta (B Ubar) + (b_zeta - ubar)/(u0 Fr^2), entering as -F_0.
        // The water-height ghost is eliminated through u0*zeta + ubar,
        // which is where the (1/(Fr^2 u0) - beta) mean coupling and the
        // b_zeta right-hand side come from.
        c.uu = two_dx * (-0.5 * u0 + a_eps);
        c.uv = two_dx * (-a_eps);
        c.vu = two_dx * (a_eps);
        c.vv = two_dx * (-0.5 * u0 + a_eps);
        c.u_mean_u = two_dx * (-tp.beta + 1.0 / fr2u0);
        c.u_mean_v = two_dx * (0.5 * tp.beta);
        c.v_mean_u = two_dx * (0.5 * tp.beta);
        c.rhs_record_scale = two_dx;
        c.rhs_bzeta_scale = two_dx / fr2u0;
    } else {
        // Half-cell (-dx/2, 0): F_0 = -b_in + (u0/2) u + a_eps (A U)
        //   + beta (B Ubar) + zeta_last/Fr^2, entering as +F_0. The
        //   interface-face pressure uses the domain's own last cell, so
        //   no water-height data is consumed on this side.
        c.uu = two_dx * (0.5 * u0 + a_eps);
        c.uv = two_dx * (-a_eps);
        c.vu = two_dx * (a_eps);
        c.vv = two_dx * (0.5 * u0 + a_eps);
        c.u_mean_u = two_dx * tp.beta;
        c.u_mean_v = two_dx * (-0.5 * tp.beta);
        c.v_mean_u = two_dx * (-0.5 * tp.beta);
        c.rhs_record_scale = two_dx;
        c.rhs_bzeta_scale = 0.0;
    }
    return c;
}

void write_record_csv(std::ostream& os, const TransmissionRecord& rec) {
    os << "side,j,k,b_u,b_v,b_zeta\n";
    const char* side = (rec.side == Side::Plus) ? "plus" : "minus";
    for (int j = 0; j < rec.nlev; ++j)
        for (int k = 0; k <= rec.nt; ++k) {
            const double bz = (rec.side == Side::Plus && j == 0)
                                  ? rec.b_zeta[static_cast<size_t>(k)]
                                  : 0.0;
            os << side << ',' << j << ',' << k << ',' << csv_num(rec.b_u[rec.idx(j, k)])
               << ',' << csv_num(rec.b_v[rec.idx(j, k)]) << ',' << csv_num(bz) << '\n';
        }
}

TransmissionRecord read_record_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("record csv: empty stream");
    struct Row { std::string side; int j, k; double bu, bv, bz; };
    std::vector<Row> rows;
    int max_j = -1, max_k = -1;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        Row r;
        std::string tok;
        std::getline(ss, r.side, ',');
        std::getline(ss, tok, ','); r.j = std::stoi(tok);
        std::getline(ss, tok, ','); r.k = std::stoi(tok);
        std::getline(ss, tok, ','); r.bu = std::stod(tok);
        std::getline(ss, tok, ','); r.bv = std::stod(tok);
        std::getline(ss, tok, ','); r.bz = std::stod(tok);
        max_j = std::max(max_j, r.j);
        max_k = std::max(max_k, r.k);
        rows.push_back(r);
    }
    if (rows.empty()) throw std::runtime_error("record csv: no rows");
    const Side side = (rows.front().side == "plus") ? Side::Plus : Side::Minus;
    TransmissionRecord rec(side, max_j + 1, max_k);
    for (const Row& r : rows) {
        rec.b_u[rec.idx(r.j, r.k)] = r.bu;
        rec.b_v[rec.idx(r.j, r.k)] = r.bv;
        if (side == Side::Plus && r.j == 0) rec.b_zeta[static_cast<size_t>(r.k)] = r.bz;
    }
    return rec;
}

} // namespace peswr
