#pragma once

#include <optional>

#include "brauerlab/field.hpp"

namespace brauerlab {

/// Dense row-major matrix over a small prime field.
struct Mat {
    int rows = 0, cols = 0;
    std::vector<Field::El> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

    Field::El& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    Field::El at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
    Field::El* row(int r) { return &a[static_cast<size_t>(r) * cols]; }
    const Field::El* row(int r) const { return &a[static_cast<size_t>(r) * cols]; }

    bool operator==(const Mat& other) const = default;

    static Mat identity(int n);
};

/// OpenMP-parallel product; mat_mul_serial is the reference kept for tests.
Mat mat_mul(const Field& f, const Mat& a, const Mat& b);
Mat mat_mul_serial(const Field& f, const Mat& a, const Mat& b);

Mat mat_add(const Field& f, const Mat& a, const Mat& b);
Mat mat_sub(const Field& f, const Mat& a, const Mat& b);
Mat transpose(const Mat& a);
Mat hstack(const Mat& a, const Mat& b);
Mat vstack(const Mat& a, const Mat& b);
bool is_zero(const Mat& a);
Mat mat_vec_to_col(const std::vector<Field::El>& v);

/// In-place reduced row echelon form. Row updates run in parallel;
/// rref_serial is the reference implementation kept for tests.
int rref(const Field& f, Mat& m, std::vector<int>* pivots = nullptr);
int rref_serial(const Field& f, Mat& m, std::vector<int>* pivots = nullptr);

int rank(const Field& f, Mat m);

/// Column basis of the right null space {x : a x = 0}; cols = nullity.
Mat kernel_basis(const Field& f, const Mat& a);

/// Column-space basis (columns, full rank).
Mat column_space(const Field& f, const Mat& a);

std::optional<Mat> inverse(const Field& f, Mat a);

/// Solve a X = b columnwise; nullopt when any column is inconsistent.
std::optional<Mat> solve(const Field& f, const Mat& a, const Mat& b);

/// Kronecker product (a (x) b), row-major index convention
/// (i1*rows_b+i2, j1*cols_b+j2).
Mat kron(const Field& f, const Mat& a, const Mat& b);

/// Quotient of F^n by the row space of `relations`: projection onto the
/// complement coordinates (non-pivot columns of the RREF) and the canonical
/// section embedding quotient coordinates back at those columns.
struct QuotientSpace {
    int n = 0, dim = 0;
    Mat rrefm;                   // rank x n
    std::vector<int> pivot_cols, free_cols;

    std::vector<Field::El> project(const Field& f, const Field::El* v) const;
    std::vector<Field::El> section(const Field::El* q) const;  // length n
    /// Matrix of the induced map on the quotient for an endomorphism `m` of
    /// F^n that preserves the relation subspace.
    Mat induced(const Field& f, const Mat& m) const;
};
QuotientSpace make_quotient(const Field& f, Mat relations_rows);

}  // namespace brauerlab
