#ifndef PESWR_BANDED_QR_HPP
#define PESWR_BANDED_QR_HPP

#include "peswr/block_tridiag.hpp"

namespace peswr {

/** Givens QR factorization of a banded matrix, built from the
 * block-tridiagonal momentum operator.
 *
 * One-directional LU substitution is unstable here: the stiff rotation
 * term gives the discrete operator an exponential dichotomy (boundary
 * layers growing by a constant factor per column), and triangular
 * factors from Gaussian elimination inherit that growth even though the
 * matrix itself is well conditioned. QR avoids it - kappa(R) equals
 * kappa(A), so the back substitution is as benign as the problem. The
 * rotations are stored so each time step reuses the factorization. */
class BandedQR {
public:
    explicit BandedQR(const BlockTridiagonal& a);

    int dim() const { return n_; }

    // Solve R x = Q^T b in place.
    void solve(std::vector<double>& rhs) const;

private:
    double& at(int r, int d) { return w_[static_cast<size_t>(r) * stride_ + d + bl_]; }
    double at(int r, int d) const { return w_[static_cast<size_t>(r) * stride_ + d + bl_]; }

    int n_ = 0;
    int bl_ = 0;     // lower bandwidth of the input
    int bu_ = 0;     // upper bandwidth of R after fill-in
    int stride_ = 0; // bl_ + bu_ + 1
    std::vector<double> w_;   // band storage, diagonal at offset bl_
    std::vector<double> rot_; // (c, s) pairs in elimination order
};

} // namespace peswr

#endif
