#include "thermoqvi/sparse.hpp"

#include <algorithm>
#include <stdexcept>

namespace thermoqvi {

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) s += vals[k] * x[col_idx[k]];
        y[i] = s;
    }
}

std::vector<double> SparseMatrix::multiply(const std::vector<double>& x) const {
    std::vector<double> y(n);
    multiply(x, y);
    return y;
}

double SparseMatrix::coeff(int i, int j) const {
    for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
        if (col_idx[k] == j) return vals[k];
    return 0.0;
}

bool SparseMatrix::is_symmetric() const {
    for (int i = 0; i < n; ++i)
        for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
            if (vals[k] != coeff(col_idx[k], i)) return false;
    return true;
}

std::vector<double> SparseMatrix::diagonal() const {
    std::vector<double> d(n, 0.0);
    for (int i = 0; i < n; ++i) d[i] = coeff(i, i);
    return d;
}

SparseMatrix SparseBuilder::build() const {
    std::vector<Entry> sorted = entries_;
    std::sort(sorted.begin(), sorted.end(), [](const Entry& a, const Entry& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });
    SparseMatrix A;
    A.n = n_;
    A.row_ptr.assign(n_ + 1, 0);
    for (size_t k = 0; k < sorted.size();) {
        size_t k2 = k;
        double sum = 0.0;
        while (k2 < sorted.size() && sorted[k2].i == sorted[k].i && sorted[k2].j == sorted[k].j)
            sum += sorted[k2++].v;
        if (sorted[k].i < 0 || sorted[k].i >= n_ || sorted[k].j < 0 || sorted[k].j >= n_)
            throw std::out_of_range("SparseBuilder: entry outside matrix");
        A.col_idx.push_back(sorted[k].j);
        A.vals.push_back(sum);
        A.row_ptr[sorted[k].i + 1]++;
        k = k2;
    }
    for (int i = 0; i < n_; ++i) A.row_ptr[i + 1] += A.row_ptr[i];
    return A;
}

}  // namespace thermoqvi
