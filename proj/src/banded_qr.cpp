#include "peswr/banded_qr.hpp"

#include <cmath>
#include <stdexcept>

namespace peswr {

BandedQR::BandedQR(const BlockTridiagonal& a) {
    const int b = a.bsize();
    const int nb = a.nblocks();
    n_ = nb * b;
    bl_ = 2 * b - 1;
    bu_ = 2 * (2 * b - 1); // fill-in doubles the upper width
    stride_ = bl_ + bu_ + 1;
    w_.assign(static_cast<size_t>(n_) * stride_, 0.0);

    for (int i = 0; i < nb; ++i)
        for (int r = 0; r < b; ++r) {
            const int row = i * b + r;
            for (int c = 0; c < b; ++c) {
                at(row, (i * b + c) - row) = a.diag(i, r, c);
                if (i > 0) {
                    const double v = a.sub(i, r, c);
                    if (v != 0.0) at(row, ((i - 1) * b + c) - row) = v;
                }
                if (i + 1 < nb) {
                    const double v = a.super(i, r, c);
                    if (v != 0.0) at(row, ((i + 1) * b + c) - row) = v;
                }
            }
        }

    rot_.reserve(static_cast<size_t>(n_) * 2);
    for (int j = 0; j < n_; ++j) {
        const int rmax = std::min(n_ - 1, j + bl_);
        for (int r = j + 1; r <= rmax; ++r) {
            const double f = at(j, 0);
            const double g = at(r, j - r);
            double c = 1.0, s = 0.0;
            if (g != 0.0) {
                const double h = std::hypot(f, g);
                c = f / h;
                s = g / h;
            }
            rot_.push_back(c);
            rot_.push_back(s);
            if (g == 0.0) continue;
            // Combine rows j and r over the shared column range.
            const int dmax = std::min(bu_, n_ - 1 - j);
            for (int d = 0; d <= dmax; ++d) {
                const double vj = at(j, d);
                const double vr = (j + d - r >= -bl_) ? at(r, j + d - r) : 0.0;
                at(j, d) = c * vj + s * vr;
                if (j + d - r >= -bl_) at(r, j + d - r) = -s * vj + c * vr;
            }
        }
        if (at(j, 0) == 0.0) throw std::runtime_error("banded qr: singular matrix");
    }
}

void BandedQR::solve(std::vector<double>& rhs) const {
    if (static_cast<int>(rhs.size()) != n_)
        throw std::invalid_argument("banded qr: rhs size mismatch");
    size_t q = 0;
    for (int j = 0; j < n_; ++j) {
        const int rmax = std::min(n_ - 1, j + bl_);
        for (int r = j + 1; r <= rmax; ++r) {
            const double c = rot_[q];
            const double s = rot_[q + 1];
            q += 2;
            if (s == 0.0 && c == 1.0) continue;
            const double vj = rhs[static_cast<size_t>(j)];
            const double vr = rhs[static_cast<size_t>(r)];
            rhs[static_cast<size_t>(j)] = c * vj + s * vr;
            rhs[static_cast<size_t>(r)] = -s * vj + c * vr;
        }
    }
    for (int r = n_ - 1; r >= 0; --r) {
        double acc = rhs[static_cast<size_t>(r)];
        const int dmax = std::min(bu_, n_ - 1 - r);
        for (int d = 1; d <= dmax; ++d) acc -= at(r, d) * rhs[static_cast<size_t>(r + d)];
        rhs[static_cast<size_t>(r)] = acc / at(r, 0);
    }
}

} // namespace peswr
