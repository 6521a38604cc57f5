#include "gmmp/linalg.hpp"

#include "gmmp/errors.hpp"

namespace gmmp {

void QMatrix::append_row(const QVec& row) {
    require_internal(cols_ == 0 || row.size() == cols_, "append_row: width mismatch");
    if (cols_ == 0) cols_ = row.size();
    data_.insert(data_.end(), row.begin(), row.end());
    ++rows_;
}

QVec QMatrix::row(std::size_t i) const {
    return QVec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

std::vector<std::size_t> QMatrix::rref() {
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        std::size_t p = r;
        while (p < rows_ && at(p, c).is_zero()) ++p;
        if (p == rows_) continue;
        if (p != r)
            for (std::size_t j = 0; j < cols_; ++j) std::swap(at(p, j), at(r, j));
        const Rational inv = at(r, c).inverse();
        for (std::size_t j = c; j < cols_; ++j) at(r, j) *= inv;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == r || at(i, c).is_zero()) continue;
            const Rational f = at(i, c);
            for (std::size_t j = c; j < cols_; ++j) at(i, j) -= f * at(r, j);
        }
        pivot_cols.push_back(c);
        ++r;
    }
    return pivot_cols;
}

std::size_t QMatrix::rank() const {
    QMatrix copy = *this;
    return copy.rref().size();
}

QMatrix::KernelBasis QMatrix::kernel() const {
    QMatrix m = *this;
    const auto pivots = m.rref();
    KernelBasis out;
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : pivots) is_pivot[c] = true;
    for (std::size_t c = 0; c < cols_; ++c)
        if (!is_pivot[c]) out.free_cols.push_back(c);
    for (auto f : out.free_cols) {
        QVec v(cols_);
        v[f] = Rational(1);
        for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m.at(k, f);
        out.vectors.push_back(std::move(v));
    }
    return out;
}

QVec qvec_scaled(const QVec& v, const Rational& c) {
    QVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] * c;
    return r;
}

void qvec_axpy(QVec& y, const Rational& c, const QVec& x) {
    require_internal(y.size() == x.size(), "axpy: size mismatch");
    if (c.is_zero()) return;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!x[i].is_zero()) y[i] += c * x[i];
    }
}

bool qvec_is_zero(const QVec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

RowSpaceSolver::RowSpaceSolver(const std::vector<QVec>& rows, std::size_t dim)
    : dim_(dim), nrows_(rows.size()) {
    for (std::size_t k = 0; k < rows.size(); ++k) {
        require_internal(rows[k].size() == dim, "RowSpaceSolver: width mismatch");
        QVec v = rows[k];
        QVec op(nrows_);
        op[k] = Rational(1);
        // eliminate against existing echelon rows
        for (std::size_t i = 0; i < rref_.size(); ++i) {
            const Rational c = v[pivots_[i]];
            if (c.is_zero()) continue;
            qvec_axpy(v, -c, rref_[i]);
            qvec_axpy(op, -c, ops_[i]);
        }
        std::size_t p = 0;
        while (p < dim_ && v[p].is_zero()) ++p;
        if (p == dim_) continue; // dependent row
        const Rational inv = v[p].inverse();
        v = qvec_scaled(v, inv);
        op = qvec_scaled(op, inv);
        // back-eliminate to keep a reduced echelon
        for (std::size_t i = 0; i < rref_.size(); ++i) {
            const Rational c = rref_[i][p];
            if (c.is_zero()) continue;
            qvec_axpy(rref_[i], -c, v);
            qvec_axpy(ops_[i], -c, op);
        }
        // insert keeping pivot order
        std::size_t pos = 0;
        while (pos < pivots_.size() && pivots_[pos] < p) ++pos;
        rref_.insert(rref_.begin() + pos, std::move(v));
        ops_.insert(ops_.begin() + pos, std::move(op));
        pivots_.insert(pivots_.begin() + pos, p);
    }
}

QVec RowSpaceSolver::reduce(const QVec& v) const {
    require_internal(v.size() == dim_, "RowSpaceSolver::reduce: width mismatch");
    QVec r = v;
    for (std::size_t i = 0; i < rref_.size(); ++i) {
        const Rational c = r[pivots_[i]];
        if (c.is_zero()) continue;
        qvec_axpy(r, -c, rref_[i]);
    }
    return r;
}

bool RowSpaceSolver::contains(const QVec& v) const { return qvec_is_zero(reduce(v)); }

std::optional<QVec> RowSpaceSolver::solve(const QVec& v) const {
    require_internal(v.size() == dim_, "RowSpaceSolver::solve: width mismatch");
    QVec r = v;
    QVec z(nrows_);
    for (std::size_t i = 0; i < rref_.size(); ++i) {
        const Rational c = r[pivots_[i]];
        if (c.is_zero()) continue;
        qvec_axpy(r, -c, rref_[i]);
        qvec_axpy(z, c, ops_[i]);
    }
    if (!qvec_is_zero(r)) return std::nullopt;
    return z;
}

QVec SpanBuilder::reduced(const QVec& v) const {
    QVec r = v;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Rational c = r[pivots_[i]];
        if (c.is_zero()) continue;
        qvec_axpy(r, -c, rows_[i]);
    }
    return r;
}

bool SpanBuilder::contains(const QVec& v) const { return qvec_is_zero(reduced(v)); }

bool SpanBuilder::try_add(const QVec& v) {
    require_internal(v.size() == dim_, "SpanBuilder: width mismatch");
    QVec r = reduced(v);
    std::size_t p = 0;
    while (p < dim_ && r[p].is_zero()) ++p;
    if (p == dim_) return false;
    r = qvec_scaled(r, r[p].inverse());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Rational c = rows_[i][p];
        if (!c.is_zero()) qvec_axpy(rows_[i], -c, r);
    }
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < p) ++pos;
    rows_.insert(rows_.begin() + pos, std::move(r));
    pivots_.insert(pivots_.begin() + pos, p);
    return true;
}

void SpanBuilder::add_span(const std::vector<QVec>& rows) {
    for (const auto& r : rows) try_add(r);
}

} // namespace gmmp
