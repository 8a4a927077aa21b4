#include "peswr/block_tridiag.hpp"

#include <stdexcept>

namespace peswr {

BlockTridiagonal::BlockTridiagonal(int nblocks, int bsize)
    : nblocks_(nblocks), bsize_(bsize),
      diag_(static_cast<size_t>(nblocks) * bsize * bsize, 0.0),
      sub_(static_cast<size_t>(nblocks) * bsize * bsize, 0.0),
      super_(static_cast<size_t>(nblocks) * bsize * bsize, 0.0) {
    if (nblocks < 1 || bsize < 1)
        throw std::invalid_argument("BlockTridiagonal: bad sizes");
}

void BlockTridiagonal::matvec(const std::vector<double>& x, std::vector<double>& y) const {
    const int b = bsize_;
    y.assign(static_cast<size_t>(dim()), 0.0);
    for (int i = 0; i < nblocks_; ++i) {
        double* yi = y.data() + static_cast<size_t>(i) * b;
        const double* xi = x.data() + static_cast<size_t>(i) * b;
        for (int r = 0; r < b; ++r) {
            double s = 0.0;
            for (int c = 0; c < b; ++c) s += diag_[pos(i, r, c)] * xi[c];
            if (i > 0)
                for (int c = 0; c < b; ++c) s += sub_[pos(i, r, c)] * xi[c - b];
            if (i + 1 < nblocks_)
                for (int c = 0; c < b; ++c) s += super_[pos(i, r, c)] * xi[c + b];
            yi[r] += s;
        }
    }
}

} // namespace peswr
