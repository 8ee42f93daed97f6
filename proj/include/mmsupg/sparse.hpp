#ifndef MMSUPG_SPARSE_HPP
#define MMSUPG_SPARSE_HPP

#include <string>
#include <vector>

namespace mmsupg {

// Compressed row storage; column indices sorted and unique within each row.
struct SparseMatrix {
    int n_rows = 0;
    int n_cols = 0;
    std::vector<int> row_offsets;  // size n_rows + 1
    std::vector<int> col_indices;
    std::vector<double> values;

    int nnz() const { return static_cast<int>(values.size()); }
    // Pointer to the stored entry (i,j), or nullptr if structurally zero.
    double* find(int i, int j);
    const double* find(int i, int j) const;
};

// Accumulating (row, col, value) list; duplicates sum on compression.
struct Triplets {
    std::vector<int> rows;
    std::vector<int> cols;
    std::vector<double> vals;

    void add(int r, int c, double v) {
        rows.push_back(r);
        cols.push_back(c);
        vals.push_back(v);
    }
    std::size_t size() const { return vals.size(); }
};

// Deterministic: the result is independent of triplet insertion order.
SparseMatrix compress(const Triplets& t, int n_rows, int n_cols);

std::vector<double> matvec(const SparseMatrix& a, const std::vector<double>& x);

// Direct sparse LU with partial pivoting.  Throws SingularMatrixError when
// the factorization encounters a (near-)singular matrix, and when the
// verified residual ||Ax-b||_inf / (||b||_inf + 1) exceeds 1e-10.
std::vector<double> solve(const SparseMatrix& a, const std::vector<double>& rhs);

// Debug export, one line per nonzero: "row col value" (1-based, matrix
// market coordinate format).
void write_matrix_market(const SparseMatrix& a, const std::string& path);

}  // namespace mmsupg

#endif
