#ifndef PESWR_BLOCK_TRIDIAG_HPP
#define PESWR_BLOCK_TRIDIAG_HPP

#include <vector>

namespace peswr {

/** Block-tridiagonal matrix with dense square blocks of size b.
 *
 * Column-block i couples to i-1 (sub), i (diag) and i+1 (super), which
 * is exactly the structure of the momentum system when unknowns are
 * grouped by velocity column. Used for assembly and matrix-vector
 * products; linear solves go through the banded QR factorization. */
class BlockTridiagonal {
public:
    BlockTridiagonal(int nblocks, int bsize);

    int nblocks() const { return nblocks_; }
    int bsize() const { return bsize_; }
    int dim() const { return nblocks_ * bsize_; }

    double& diag(int i, int r, int c) { return diag_[pos(i, r, c)]; }
    double& sub(int i, int r, int c) { return sub_[pos(i, r, c)]; }
    double& super(int i, int r, int c) { return super_[pos(i, r, c)]; }
    double diag(int i, int r, int c) const { return diag_[pos(i, r, c)]; }
    double sub(int i, int r, int c) const { return sub_[pos(i, r, c)]; }
    double super(int i, int r, int c) const { return super_[pos(i, r, c)]; }

    void matvec(const std::vector<double>& x, std::vector<double>& y) const;

private:
    size_t pos(int i, int r, int c) const {
        return (static_cast<size_t>(i) * bsize_ + r) * bsize_ + c;
    }

    int nblocks_;
    int bsize_;
    std::vector<double> diag_, sub_, super_;
};

} // namespace peswr

#endif
