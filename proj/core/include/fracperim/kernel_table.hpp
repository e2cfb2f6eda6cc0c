#pragma once

#include <vector>

namespace fracperim {

// Interaction L_s(cell_a, cell_b) = integral over two grid cells of |x - y|^{-n-s}, by integer offset.
// Offsets with max-norm <= near_radius use singularity-adapted quadrature; the rest a tensor Gauss rule.
class KernelTable {
public:
    static constexpr int near_radius = 3;

    KernelTable() = default;
    // Offsets up to `extent` in each coordinate (n = 1 or 2), cells of side h.
    KernelTable(int n, double s, double h, int extent);

    int dim() const { return n_; }
    double s() const { return s_; }
    double h() const { return h_; }
    int extent() const { return extent_; }
    double operator()(int dx) const { return data_[std::abs(dx)]; }
    double operator()(int dx, int dy) const { return data_[std::abs(dy) * (extent_ + 1) + std::abs(dx)]; }
    // Row |dy| for contiguous access, indexed by |dx|.
    const double* row(int dy) const { return data_.data() + std::abs(dy) * (extent_ + 1); }

private:
    int n_ = 0;
    double s_ = 0.0, h_ = 0.0;
    int extent_ = 0;
    std::vector<double> data_;
};

// Unit-cell interaction for offset d (cells of side 1), d != 0.
double unit_kernel_1d(int d, double s);
double unit_kernel_2d(int dx, int dy, double s);

}  // namespace fracperim
