#include "mmsupg/sparse.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "mmsupg/errors.hpp"

namespace mmsupg {

double* SparseMatrix::find(int i, int j) {
    const int lo = row_offsets[static_cast<std::size_t>(i)];
    const int hi = row_offsets[static_cast<std::size_t>(i) + 1];
    auto begin = col_indices.begin() + lo;
    auto end = col_indices.begin() + hi;
    auto it = std::lower_bound(begin, end, j);
    if (it == end || *it != j) return nullptr;
    return &values[static_cast<std::size_t>(it - col_indices.begin())];
}

const double* SparseMatrix::find(int i, int j) const {
    return const_cast<SparseMatrix*>(this)->find(i, j);
}

SparseMatrix compress(const Triplets& t, int n_rows, int n_cols) {
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (t.rows[k] < 0 || t.rows[k] >= n_rows || t.cols[k] < 0 || t.cols[k] >= n_cols)
            throw std::invalid_argument("compress: triplet index out of range");
    }

    std::vector<std::size_t> order(t.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&t](std::size_t a, std::size_t b) {
        if (t.rows[a] != t.rows[b]) return t.rows[a] < t.rows[b];
        if (t.cols[a] != t.cols[b]) return t.cols[a] < t.cols[b];
        return a < b;  // stable within a duplicate group
    });

    SparseMatrix m;
    m.n_rows = n_rows;
    m.n_cols = n_cols;
    m.row_offsets.assign(static_cast<std::size_t>(n_rows) + 1, 0);

    // Duplicates are summed in insertion order within each (row,col) group so
    // the result is bitwise identical under any permutation of the triplets.
    std::size_t k = 0;
    while (k < order.size()) {
        const int r = t.rows[order[k]];
        const int c = t.cols[order[k]];
        double sum = 0.0;
        while (k < order.size() && t.rows[order[k]] == r && t.cols[order[k]] == c)
            sum += t.vals[order[k++]];
        m.col_indices.push_back(c);
        m.values.push_back(sum);
        m.row_offsets[static_cast<std::size_t>(r) + 1]++;
    }
    for (int r = 0; r < n_rows; ++r)
        m.row_offsets[static_cast<std::size_t>(r) + 1] += m.row_offsets[static_cast<std::size_t>(r)];
    return m;
}

std::vector<double> matvec(const SparseMatrix& a, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != a.n_cols)
        throw std::invalid_argument("matvec: dimension mismatch");
    std::vector<double> y(static_cast<std::size_t>(a.n_rows), 0.0);
    for (int i = 0; i < a.n_rows; ++i) {
        double s = 0.0;
        for (int k = a.row_offsets[static_cast<std::size_t>(i)]; k < a.row_offsets[static_cast<std::size_t>(i) + 1]; ++k)
            s += a.values[static_cast<std::size_t>(k)] * x[static_cast<std::size_t>(a.col_indices[static_cast<std::size_t>(k)])];
        y[static_cast<std::size_t>(i)] = s;
    }
    return y;
}

std::vector<double> solve(const SparseMatrix& a, const std::vector<double>& rhs) {
    if (a.n_rows != a.n_cols) throw std::invalid_argument("solve: matrix not square");
    if (static_cast<int>(rhs.size()) != a.n_rows)
        throw std::invalid_argument("solve: rhs dimension mismatch");

    using EigenSparse = Eigen::SparseMatrix<double, Eigen::ColMajor>;
    EigenSparse mat(a.n_rows, a.n_cols);
    {
        std::vector<Eigen::Triplet<double>> trips;
        trips.reserve(a.values.size());
        for (int i = 0; i < a.n_rows; ++i)
            for (int k = a.row_offsets[static_cast<std::size_t>(i)]; k < a.row_offsets[static_cast<std::size_t>(i) + 1]; ++k)
                trips.emplace_back(i, a.col_indices[static_cast<std::size_t>(k)], a.values[static_cast<std::size_t>(k)]);
        mat.setFromTriplets(trips.begin(), trips.end());
    }
    mat.makeCompressed();

    Eigen::SparseLU<EigenSparse, Eigen::COLAMDOrdering<int>> lu;
    lu.analyzePattern(mat);
    lu.factorize(mat);
    if (lu.info() != Eigen::Success)
        throw SingularMatrixError("solve: sparse LU factorization failed (singular or near-singular matrix)");

    Eigen::VectorXd b(a.n_rows);
    for (int i = 0; i < a.n_rows; ++i) b[i] = rhs[static_cast<std::size_t>(i)];
    const Eigen::VectorXd x = lu.solve(b);

    std::vector<double> result(static_cast<std::size_t>(a.n_rows));
    for (int i = 0; i < a.n_rows; ++i) result[static_cast<std::size_t>(i)] = x[i];

    const std::vector<double> ax = matvec(a, result);
    double res = 0.0, bnorm = 0.0;
    for (int i = 0; i < a.n_rows; ++i) {
        res = std::max(res, std::abs(ax[static_cast<std::size_t>(i)] - rhs[static_cast<std::size_t>(i)]));
        bnorm = std::max(bnorm, std::abs(rhs[static_cast<std::size_t>(i)]));
    }
    if (!(res / (bnorm + 1.0) <= 1e-10))
        throw SingularMatrixError("solve: residual " + std::to_string(res / (bnorm + 1.0)) +
                                  " exceeds 1e-10 (matrix near-singular)");
    return result;
}

void write_matrix_market(const SparseMatrix& a, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw IoError("cannot open " + path + " for writing");
    std::fprintf(f, "%%%%MatrixMarket matrix coordinate real general\n");
    std::fprintf(f, "%d %d %d\n", a.n_rows, a.n_cols, a.nnz());
    for (int i = 0; i < a.n_rows; ++i)
        for (int k = a.row_offsets[static_cast<std::size_t>(i)]; k < a.row_offsets[static_cast<std::size_t>(i) + 1]; ++k)
            std::fprintf(f, "%d %d %.17g\n", i + 1, a.col_indices[static_cast<std::size_t>(k)] + 1,
                         a.values[static_cast<std::size_t>(k)]);
    std::fclose(f);
}

}  // namespace mmsupg
