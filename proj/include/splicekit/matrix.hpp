#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "splicekit/numbers.hpp"

namespace splicekit {

// Dense matrix of exact integers. Graph-facing code only ever produces
// square symmetric matrices; the rectangular case is used internally for
// kernel/solve computations on lattice maps.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, Int(0)) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    }
    explicit IntMatrix(int n) : IntMatrix(n, n) {}

    static IntMatrix identity(int n) {
        IntMatrix m(n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Int& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Int& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    bool symmetric() const {
        if (!square()) return false;
        for (int i = 0; i < rows_; ++i)
            for (int j = i + 1; j < cols_; ++j)
                if (at(i, j) != at(j, i)) return false;
        return true;
    }

    IntMatrix operator*(const IntMatrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
        IntMatrix r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const Int& aik = at(i, k);
                if (aik == 0) continue;
                for (int j = 0; j < o.cols_; ++j) r.at(i, j) += aik * o.at(k, j);
            }
        return r;
    }

    IntMatrix operator-() const {
        IntMatrix r(rows_, cols_);
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = -a_[i];
        return r;
    }

    bool operator==(const IntMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

    std::string str() const {
        std::string s;
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) {
                s += at(i, j).get_str();
                s += (j + 1 == cols_) ? "" : " ";
            }
            s += "\n";
        }
        return s;
    }

private:
    int rows_, cols_;
    std::vector<Int> a_;
};

// Exact determinant via fraction-free (Bareiss) elimination.
inline Int determinant(const IntMatrix& m) {
    if (!m.square()) throw std::invalid_argument("determinant of non-square matrix");
    const int n = m.rows();
    if (n == 0) return 1;
    IntMatrix w = m;
    int sign = 1;
    Int prev = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (w.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (w.at(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j)
                w.at(i, j) = divexact(w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j), prev);
            w.at(i, k) = 0;
        }
        prev = w.at(k, k);
    }
    return sign < 0 ? Int(-w.at(n - 1, n - 1)) : w.at(n - 1, n - 1);
}

inline IntMatrix minor_matrix(const IntMatrix& m, int drop_row, int drop_col) {
    IntMatrix r(m.rows() - 1, m.cols() - 1);
    for (int i = 0, ri = 0; i < m.rows(); ++i) {
        if (i == drop_row) continue;
        for (int j = 0, rj = 0; j < m.cols(); ++j) {
            if (j == drop_col) continue;
            r.at(ri, rj) = m.at(i, j);
            ++rj;
        }
        ++ri;
    }
    return r;
}

// Adjugate: m * adjugate(m) == determinant(m) * I, exactly.
inline IntMatrix adjugate(const IntMatrix& m) {
    if (!m.square()) throw std::invalid_argument("adjugate of non-square matrix");
    const int n = m.rows();
    IntMatrix adj(n);
    if (n == 0) return adj;
    if (n == 1) {
        adj.at(0, 0) = 1;
        return adj;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Int c = determinant(minor_matrix(m, i, j));
            adj.at(j, i) = ((i + j) % 2 == 0) ? c : Int(-c);
        }
    return adj;
}

// Sylvester's criterion on -m: every leading principal minor positive.
inline bool is_negative_definite(const IntMatrix& m) {
    if (!m.square() || !m.symmetric()) throw std::invalid_argument("definiteness test requires a symmetric matrix");
    const int n = m.rows();
    IntMatrix neg = -m;
    for (int k = 1; k <= n; ++k) {
        IntMatrix lead(k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) lead.at(i, j) = neg.at(i, j);
        if (determinant(lead) <= 0) return false;
    }
    return true;
}

struct SmithNormalForm {
    IntMatrix u;  // rows x rows, unimodular
    IntMatrix s;  // rows x cols, diagonal, s_i >= 0, s_i | s_{i+1}
    IntMatrix v;  // cols x cols, unimodular
    int rank = 0;
};

// U * M * V = S with U, V unimodular and S in Smith normal form.
inline SmithNormalForm smith_normal_form(const IntMatrix& m) {
    const int rows = m.rows(), cols = m.cols();
    SmithNormalForm f;
    f.u = IntMatrix::identity(rows);
    f.v = IntMatrix::identity(cols);
    f.s = m;
    IntMatrix& s = f.s;
    IntMatrix& u = f.u;
    IntMatrix& v = f.v;

    auto swap_rows = [&](int a, int b) {
        if (a == b) return;
        for (int j = 0; j < cols; ++j) std::swap(s.at(a, j), s.at(b, j));
        for (int j = 0; j < rows; ++j) std::swap(u.at(a, j), u.at(b, j));
    };
    auto swap_cols = [&](int a, int b) {
        if (a == b) return;
        for (int i = 0; i < rows; ++i) std::swap(s.at(i, a), s.at(i, b));
        for (int i = 0; i < cols; ++i) std::swap(v.at(i, a), v.at(i, b));
    };
    auto add_row = [&](int dst, int src, const Int& c) {  // row dst += c * row src
        for (int j = 0; j < cols; ++j) s.at(dst, j) += c * s.at(src, j);
        for (int j = 0; j < rows; ++j) u.at(dst, j) += c * u.at(src, j);
    };
    auto add_col = [&](int dst, int src, const Int& c) {
        for (int i = 0; i < rows; ++i) s.at(i, dst) += c * s.at(i, src);
        for (int i = 0; i < cols; ++i) v.at(i, dst) += c * v.at(i, src);
    };
    auto negate_row = [&](int a) {
        for (int j = 0; j < cols; ++j) s.at(a, j) = -s.at(a, j);
        for (int j = 0; j < rows; ++j) u.at(a, j) = -u.at(a, j);
    };

    const int nmin = std::min(rows, cols);
    int t = 0;
    while (t < nmin) {
        // pivot: smallest nonzero absolute value in the trailing block
        int pi = -1, pj = -1;
        Int best = 0;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j) {
                if (s.at(i, j) == 0) continue;
                Int a = abs(s.at(i, j));
                if (pi < 0 || a < best) { best = a; pi = i; pj = j; }
            }
        if (pi < 0) break;  // trailing block zero
        swap_rows(t, pi);
        swap_cols(t, pj);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = t + 1; i < rows; ++i) {
                if (s.at(i, t) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), s.at(i, t).get_mpz_t(), s.at(t, t).get_mpz_t());
                add_row(i, t, -q);
                if (s.at(i, t) != 0) {  // remainder became the smaller pivot
                    swap_rows(t, i);
                    clean = false;
                }
            }
            for (int j = t + 1; j < cols; ++j) {
                if (s.at(t, j) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), s.at(t, j).get_mpz_t(), s.at(t, t).get_mpz_t());
                add_col(j, t, -q);
                if (s.at(t, j) != 0) {
                    swap_cols(t, j);
                    clean = false;
                }
            }
        }
        if (s.at(t, t) < 0) negate_row(t);

        // divisibility: pivot must divide the whole trailing block
        bool repeat = false;
        for (int i = t + 1; i < rows && !repeat; ++i)
            for (int j = t + 1; j < cols && !repeat; ++j)
                if (mod_floor(s.at(i, j), s.at(t, t)) != 0) {
                    add_row(t, i, 1);
                    repeat = true;
                }
        if (repeat) continue;
        ++t;
    }
    f.rank = t;
    return f;
}

// Basis of the integer kernel {x : M x = 0}, as columns.
inline std::vector<std::vector<Int>> kernel_basis(const IntMatrix& m) {
    SmithNormalForm f = smith_normal_form(m);
    std::vector<std::vector<Int>> basis;
    for (int j = f.rank; j < m.cols(); ++j) {
        std::vector<Int> col(m.cols());
        for (int i = 0; i < m.cols(); ++i) col[i] = f.v.at(i, j);
        basis.push_back(std::move(col));
    }
    return basis;
}

// One integer solution of M x = b, if any.
inline std::optional<std::vector<Int>> solve_integer(const IntMatrix& m, const std::vector<Int>& b) {
    if (static_cast<int>(b.size()) != m.rows()) throw std::invalid_argument("solve: rhs size mismatch");
    SmithNormalForm f = smith_normal_form(m);
    std::vector<Int> ub(m.rows(), Int(0));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.rows(); ++j) ub[i] += f.u.at(i, j) * b[j];
    std::vector<Int> y(m.cols(), Int(0));
    for (int i = 0; i < m.rows(); ++i) {
        if (i < f.rank) {
            if (mod_floor(ub[i], f.s.at(i, i)) != 0) return std::nullopt;
            y[i] = divexact(ub[i], f.s.at(i, i));
        } else if (ub[i] != 0) {
            return std::nullopt;
        }
    }
    std::vector<Int> x(m.cols(), Int(0));
    for (int i = 0; i < m.cols(); ++i)
        for (int j = 0; j < m.cols(); ++j) x[i] += f.v.at(i, j) * y[j];
    return x;
}

}  // namespace splicekit
