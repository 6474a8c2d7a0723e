#include "brauerlab/matrix.hpp"

#include <stdexcept>

namespace brauerlab {

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Mat mat_mul_serial(const Field& f, const Mat& a, const Mat& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matrix shape mismatch");
    Mat c(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i) {
        const Field::El* arow = a.row(i);
        Field::El* crow = c.row(i);
        for (int k = 0; k < a.cols; ++k) {
            Field::El v = arow[k];
            if (!v) continue;
            const Field::El* mulv = f.mul_row(v);
            const Field::El* brow = b.row(k);
            for (int j = 0; j < b.cols; ++j) crow[j] = f.add(crow[j], mulv[brow[j]]);
        }
    }
    return c;
}

Mat mat_mul(const Field& f, const Mat& a, const Mat& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matrix shape mismatch");
    Mat c(a.rows, b.cols);
#pragma omp parallel for schedule(static) if (a.rows >= 64)
    for (int i = 0; i < a.rows; ++i) {
        const Field::El* arow = a.row(i);
        Field::El* crow = c.row(i);
        for (int k = 0; k < a.cols; ++k) {
            Field::El v = arow[k];
            if (!v) continue;
            const Field::El* mulv = f.mul_row(v);
            const Field::El* brow = b.row(k);
            for (int j = 0; j < b.cols; ++j) crow[j] = f.add(crow[j], mulv[brow[j]]);
        }
    }
    return c;
}

Mat mat_add(const Field& f, const Mat& a, const Mat& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw std::invalid_argument("matrix shape mismatch");
    Mat c(a.rows, a.cols);
    for (size_t i = 0; i < a.a.size(); ++i) c.a[i] = f.add(a.a[i], b.a[i]);
    return c;
}

Mat mat_sub(const Field& f, const Mat& a, const Mat& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw std::invalid_argument("matrix shape mismatch");
    Mat c(a.rows, a.cols);
    for (size_t i = 0; i < a.a.size(); ++i) c.a[i] = f.sub(a.a[i], b.a[i]);
    return c;
}

Mat transpose(const Mat& a) {
    Mat t(a.cols, a.rows);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) t.at(j, i) = a.at(i, j);
    return t;
}

Mat hstack(const Mat& a, const Mat& b) {
    if (a.rows != b.rows) throw std::invalid_argument("hstack row mismatch");
    Mat c(a.rows, a.cols + b.cols);
    for (int i = 0; i < a.rows; ++i) {
        for (int j = 0; j < a.cols; ++j) c.at(i, j) = a.at(i, j);
        for (int j = 0; j < b.cols; ++j) c.at(i, a.cols + j) = b.at(i, j);
    }
    return c;
}

Mat vstack(const Mat& a, const Mat& b) {
    if (a.cols != b.cols) throw std::invalid_argument("vstack col mismatch");
    Mat c(a.rows + b.rows, a.cols);
    std::copy(a.a.begin(), a.a.end(), c.a.begin());
    std::copy(b.a.begin(), b.a.end(), c.a.begin() + a.a.size());
    return c;
}

bool is_zero(const Mat& a) {
    for (auto v : a.a)
        if (v) return false;
    return true;
}

Mat mat_vec_to_col(const std::vector<Field::El>& v) {
    Mat m(static_cast<int>(v.size()), 1);
    for (size_t i = 0; i < v.size(); ++i) m.at(static_cast<int>(i), 0) = v[i];
    return m;
}

namespace {

template <bool Parallel>
int rref_impl(const Field& f, Mat& m, std::vector<int>* pivots) {
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int piv = -1;
        for (int i = r; i < m.rows; ++i)
            if (m.at(i, c)) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(r, j), m.at(piv, j));
        Field::El lead = m.at(r, c);
        if (lead != 1) {
            const Field::El* mulv = f.mul_row(f.inv(lead));
            Field::El* row = m.row(r);
            for (int j = 0; j < m.cols; ++j) row[j] = mulv[row[j]];
        }
        const Field::El* rrow = m.row(r);
#pragma omp parallel for schedule(static) if (Parallel && m.rows >= 64)
        for (int i = 0; i < m.rows; ++i) {
            if (i == r) continue;
            Field::El factor = m.at(i, c);
            if (!factor) continue;
            const Field::El* mulv = f.mul_row(factor);
            Field::El* row = m.row(i);
            for (int j = c; j < m.cols; ++j) row[j] = f.sub(row[j], mulv[rrow[j]]);
        }
        if (pivots) pivots->push_back(c);
        ++r;
    }
    return r;
}

}  // namespace

int rref(const Field& f, Mat& m, std::vector<int>* pivots) {
    return rref_impl<true>(f, m, pivots);
}

int rref_serial(const Field& f, Mat& m, std::vector<int>* pivots) {
    return rref_impl<false>(f, m, pivots);
}

int rank(const Field& f, Mat m) { return rref(f, m); }

Mat kernel_basis(const Field& f, const Mat& a) {
    Mat m = a;
    std::vector<int> pivots;
    int r = rref(f, m, &pivots);
    std::vector<char> is_pivot(a.cols, 0);
    for (int c : pivots) is_pivot[c] = 1;
    std::vector<int> free_cols;
    for (int c = 0; c < a.cols; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    Mat k(a.cols, static_cast<int>(free_cols.size()));
    for (size_t idx = 0; idx < free_cols.size(); ++idx) {
        int fc = free_cols[idx];
        k.at(fc, static_cast<int>(idx)) = 1;
        for (int i = 0; i < r; ++i) k.at(pivots[i], static_cast<int>(idx)) = f.neg(m.at(i, fc));
    }
    return k;
}

Mat column_space(const Field& f, const Mat& a) {
    Mat t = transpose(a);
    int r = rref(f, t);
    Mat out(a.rows, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < a.rows; ++j) out.at(j, i) = t.at(i, j);
    return out;
}

std::optional<Mat> inverse(const Field& f, Mat a) {
    if (a.rows != a.cols) return std::nullopt;
    int n = a.rows;
    Mat aug = hstack(a, Mat::identity(n));
    int r = rref(f, aug);
    if (r != n) return std::nullopt;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (aug.at(i, j) != (i == j ? 1 : 0)) return std::nullopt;
    Mat inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

std::optional<Mat> solve(const Field& f, const Mat& a, const Mat& b) {
    if (a.rows != b.rows) throw std::invalid_argument("solve shape mismatch");
    Mat aug = hstack(a, b);
    std::vector<int> pivots;
    rref(f, aug, &pivots);
    for (int c : pivots)
        if (c >= a.cols) return std::nullopt;  // inconsistent system
    Mat x(a.cols, b.cols);
    for (size_t i = 0; i < pivots.size(); ++i)
        for (int j = 0; j < b.cols; ++j) x.at(pivots[i], j) = aug.at(static_cast<int>(i), a.cols + j);
    return x;
}

Mat kron(const Field& f, const Mat& a, const Mat& b) {
    Mat c(a.rows * b.rows, a.cols * b.cols);
    for (int i1 = 0; i1 < a.rows; ++i1)
        for (int j1 = 0; j1 < a.cols; ++j1) {
            Field::El v = a.at(i1, j1);
            if (!v) continue;
            const Field::El* mulv = f.mul_row(v);
            for (int i2 = 0; i2 < b.rows; ++i2)
                for (int j2 = 0; j2 < b.cols; ++j2)
                    c.at(i1 * b.rows + i2, j1 * b.cols + j2) = mulv[b.at(i2, j2)];
        }
    return c;
}

std::vector<Field::El> QuotientSpace::project(const Field& f, const Field::El* v) const {
    std::vector<Field::El> w(v, v + n);
    for (int i = 0; i < rrefm.rows; ++i) {
        Field::El c = w[pivot_cols[i]];
        if (!c) continue;
        const Field::El* mulv = f.mul_row(c);
        const Field::El* row = rrefm.row(i);
        for (int j = 0; j < n; ++j) w[j] = f.sub(w[j], mulv[row[j]]);
    }
    std::vector<Field::El> out(free_cols.size());
    for (size_t i = 0; i < free_cols.size(); ++i) out[i] = w[free_cols[i]];
    return out;
}

std::vector<Field::El> QuotientSpace::section(const Field::El* q) const {
    std::vector<Field::El> v(n, 0);
    for (size_t i = 0; i < free_cols.size(); ++i) v[free_cols[i]] = q[i];
    return v;
}

Mat QuotientSpace::induced(const Field& f, const Mat& m) const {
    if (m.rows != n || m.cols != n) throw std::invalid_argument("induced shape mismatch");
    Mat out(dim, dim);
    for (int j = 0; j < dim; ++j) {
        std::vector<Field::El> e(dim, 0);
        e[j] = 1;
        auto v = section(e.data());
        std::vector<Field::El> mv(n, 0);
        for (int i = 0; i < n; ++i) {
            Field::El acc = 0;
            const Field::El* row = m.row(i);
            for (int k = 0; k < n; ++k) acc = f.add(acc, f.mul(row[k], v[k]));
            mv[i] = acc;
        }
        auto pq = project(f, mv.data());
        for (int i = 0; i < dim; ++i) out.at(i, j) = pq[i];
    }
    return out;
}

QuotientSpace make_quotient(const Field& f, Mat relations_rows) {
    QuotientSpace qs;
    qs.n = relations_rows.cols;
    int r = rref(f, relations_rows, &qs.pivot_cols);
    qs.rrefm = Mat(r, qs.n);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < qs.n; ++j) qs.rrefm.at(i, j) = relations_rows.at(i, j);
    std::vector<char> is_pivot(qs.n, 0);
    for (int c : qs.pivot_cols) is_pivot[c] = 1;
    for (int c = 0; c < qs.n; ++c)
        if (!is_pivot[c]) qs.free_cols.push_back(c);
    qs.dim = static_cast<int>(qs.free_cols.size());
    return qs;
}

}  // namespace brauerlab
