#pragma once

#include <span>
#include <vector>

namespace thermoqvi {

/// Square sparse matrix in compressed row storage. Assembled matrices in
/// this project are symmetric; is_symmetric() checks that exactly
/// (entry-for-entry, no tolerance).
struct SparseMatrix {
    int n = 0;
    std::vector<int> row_ptr;
    std::vector<int> col_idx;
    std::vector<double> vals;

    void multiply(std::span<const double> x, std::span<double> y) const;
    std::vector<double> multiply(const std::vector<double>& x) const;
    double coeff(int i, int j) const;
    bool is_symmetric() const;
    std::vector<double> diagonal() const;
};

/// Accumulates (i, j, value) triplets and compresses them to CSR with
/// sorted column indices; duplicate entries are summed.
class SparseBuilder {
  public:
    explicit SparseBuilder(int n) : n_(n) {}
    void add(int i, int j, double v) { entries_.push_back({i, j, v}); }
    SparseMatrix build() const;

  private:
    struct Entry {
        int i, j;
        double v;
    };
    int n_;
    std::vector<Entry> entries_;
};

}  // namespace thermoqvi
