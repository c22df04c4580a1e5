#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "chainft/numeric.hpp"

namespace chainft {

using IntVector = std::vector<Int>;

// Sparse integer matrix with exact arbitrary-precision entries. Absent
// entries are zero; stored entries are never zero. Iteration order over
// entries is row-major, which keeps every downstream computation
// deterministic.
class IntMatrix {
public:
    using Key = std::pair<Index, Index>;
    using EntryMap = std::map<Key, Int>;

    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(Index rows, Index cols) : rows_(rows), cols_(cols) {}

    static IntMatrix identity(Index n) {
        IntMatrix m(n, n);
        for (Index i = 0; i < n; ++i) m.entries_.emplace(Key{i, i}, 1);
        return m;
    }

    Index rows() const { return rows_; }
    Index cols() const { return cols_; }
    const EntryMap& entries() const { return entries_; }

    Int get(Index i, Index j) const {
        check_index(i, j);
        const auto it = entries_.find({i, j});
        return it == entries_.end() ? Int(0) : it->second;
    }

    void set(Index i, Index j, Int value) {
        check_index(i, j);
        if (value == 0)
            entries_.erase({i, j});
        else
            entries_.insert_or_assign(Key{i, j}, std::move(value));
    }

    void add(Index i, Index j, const Int& value) {
        check_index(i, j);
        if (value == 0) return;
        auto [it, inserted] = entries_.try_emplace({i, j}, value);
        if (!inserted) {
            it->second += value;
            if (it->second == 0) entries_.erase(it);
        }
    }

    bool is_zero() const { return entries_.empty(); }

    IntMatrix transposed() const {
        IntMatrix t(cols_, rows_);
        for (const auto& [key, value] : entries_) t.entries_.emplace(Key{key.second, key.first}, value);
        return t;
    }

    IntVector apply(const IntVector& x) const {
        if (x.size() != cols_) throw std::invalid_argument("IntMatrix::apply: dimension mismatch");
        IntVector y(rows_, Int(0));
        for (const auto& [key, value] : entries_) y[key.first] += value * x[key.second];
        return y;
    }

    IntVector column(Index j) const {
        if (j >= cols_) throw std::out_of_range("IntMatrix::column: index out of range");
        IntVector c(rows_, Int(0));
        for (auto it = entries_.lower_bound({0, 0}); it != entries_.end(); ++it)
            if (it->first.second == j) c[it->first.first] = it->second;
        return c;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
        IntMatrix out(a.rows_, b.cols_);
        for (const auto& [ak, av] : a.entries_) {
            const Index k = ak.second;
            for (auto it = b.entries_.lower_bound({k, 0});
                 it != b.entries_.end() && it->first.first == k; ++it)
                out.add(ak.first, it->first.second, av * it->second);
        }
        return out;
    }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

    friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
        os << m.rows_ << "x" << m.cols_ << " [";
        for (const auto& [key, value] : m.entries_)
            os << " (" << key.first << "," << key.second << ")=" << value;
        os << " ]";
        return os;
    }

private:
    void check_index(Index i, Index j) const {
        if (i >= rows_ || j >= cols_) throw std::out_of_range("IntMatrix: index out of range");
    }

    Index rows_, cols_;
    EntryMap entries_;
};

// U * M * V = D with U, V unimodular and D diagonal, d1 | d2 | ..., di >= 0.
// u_inv and v_inv are maintained alongside so changes of basis are a lookup,
// not another elimination.
struct SnfDecomposition {
    IntMatrix u, d, v;
    IntMatrix u_inv, v_inv;
    std::vector<Int> diagonal;  // min(rows, cols) entries of d
    Index rank = 0;             // number of nonzero diagonal entries
};

namespace detail {

using DenseMatrix = std::vector<IntVector>;

inline DenseMatrix dense_identity(Index n) {
    DenseMatrix m(n, IntVector(n, Int(0)));
    for (Index i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline IntMatrix sparse_from_dense(const DenseMatrix& d, Index rows, Index cols) {
    IntMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j)
            if (d[i][j] != 0) m.set(i, j, d[i][j]);
    return m;
}

inline DenseMatrix dense_from_sparse(const IntMatrix& m) {
    DenseMatrix d(m.rows(), IntVector(m.cols(), Int(0)));
    for (const auto& [key, value] : m.entries()) d[key.first][key.second] = value;
    return d;
}

// Row and column operations applied simultaneously to the working matrix and
// the four change-of-basis matrices.
struct SnfWork {
    Index rows, cols;
    DenseMatrix r, u, uinv, v, vinv;

    explicit SnfWork(const IntMatrix& m)
        : rows(m.rows()),
          cols(m.cols()),
          r(dense_from_sparse(m)),
          u(dense_identity(rows)),
          uinv(dense_identity(rows)),
          v(dense_identity(cols)),
          vinv(dense_identity(cols)) {}

    void swap_rows(Index a, Index b) {
        std::swap(r[a], r[b]);
        std::swap(u[a], u[b]);
        for (Index i = 0; i < rows; ++i) std::swap(uinv[i][a], uinv[i][b]);
    }

    void swap_cols(Index a, Index b) {
        for (Index i = 0; i < rows; ++i) std::swap(r[i][a], r[i][b]);
        for (Index i = 0; i < cols; ++i) std::swap(v[i][a], v[i][b]);
        std::swap(vinv[a], vinv[b]);
    }

    // row[dst] += q * row[src]
    void add_row(Index dst, Index src, const Int& q) {
        for (Index j = 0; j < cols; ++j) r[dst][j] += q * r[src][j];
        for (Index j = 0; j < rows; ++j) u[dst][j] += q * u[src][j];
        for (Index i = 0; i < rows; ++i) uinv[i][src] -= q * uinv[i][dst];
    }

    // col[dst] += q * col[src]
    void add_col(Index dst, Index src, const Int& q) {
        for (Index i = 0; i < rows; ++i) r[i][dst] += q * r[i][src];
        for (Index i = 0; i < cols; ++i) v[i][dst] += q * v[i][src];
        for (Index j = 0; j < cols; ++j) vinv[src][j] -= q * vinv[dst][j];
    }

    void negate_row(Index a) {
        for (Index j = 0; j < cols; ++j) r[a][j] = -r[a][j];
        for (Index j = 0; j < rows; ++j) u[a][j] = -u[a][j];
        for (Index i = 0; i < rows; ++i) uinv[i][a] = -uinv[i][a];
    }
};

}  // namespace detail

// Smith normal form with deterministic pivoting: the pivot is the nonzero
// entry of smallest absolute value in the remaining submatrix, ties broken by
// lowest (row, col). The same input always yields the same decomposition.
inline SnfDecomposition snf(const IntMatrix& m) {
    detail::SnfWork w(m);
    const Index limit = std::min(w.rows, w.cols);
    Index t = 0;
    for (; t < limit; ++t) {
        // locate the first pivot for this position; stop when the submatrix
        // is entirely zero
        const auto find_pivot = [&](Index from) -> std::optional<std::pair<Index, Index>> {
            std::optional<std::pair<Index, Index>> best;
            Int best_abs = 0;
            for (Index i = from; i < w.rows; ++i)
                for (Index j = from; j < w.cols; ++j) {
                    if (w.r[i][j] == 0) continue;
                    Int a = abs(w.r[i][j]);
                    if (!best || a < best_abs) {
                        best = {i, j};
                        best_abs = std::move(a);
                    }
                }
            return best;
        };

        auto pivot = find_pivot(t);
        if (!pivot) break;
        for (;;) {
            if (pivot->first != t) w.swap_rows(t, pivot->first);
            if (pivot->second != t) w.swap_cols(t, pivot->second);

            bool dirty = false;
            for (Index i = t + 1; i < w.rows; ++i) {
                if (w.r[i][t] == 0) continue;
                const Int q = w.r[i][t] / w.r[t][t];
                if (q != 0) w.add_row(i, t, -q);
                if (w.r[i][t] != 0) dirty = true;
            }
            if (!dirty) {
                for (Index j = t + 1; j < w.cols; ++j) {
                    if (w.r[t][j] == 0) continue;
                    const Int q = w.r[t][j] / w.r[t][t];
                    if (q != 0) w.add_col(j, t, -q);
                    if (w.r[t][j] != 0) dirty = true;
                }
            }
            if (!dirty) {
                // pivot must divide the rest of the submatrix, or the
                // divisibility chain d1 | d2 | ... would fail later
                bool fixed = false;
                for (Index i = t + 1; i < w.rows && !fixed; ++i)
                    for (Index j = t + 1; j < w.cols && !fixed; ++j)
                        if (w.r[i][j] % w.r[t][t] != 0) {
                            w.add_row(t, i, 1);
                            fixed = true;
                        }
                if (!fixed) break;
            }
            pivot = find_pivot(t);
        }
        if (w.r[t][t] < 0) w.negate_row(t);
    }

    SnfDecomposition out;
    out.rank = t;
    out.diagonal.reserve(limit);
    for (Index i = 0; i < limit; ++i) out.diagonal.push_back(i < t ? w.r[i][i] : Int(0));
    out.d = IntMatrix(w.rows, w.cols);
    for (Index i = 0; i < t; ++i) out.d.set(i, i, w.r[i][i]);
    out.u = detail::sparse_from_dense(w.u, w.rows, w.rows);
    out.u_inv = detail::sparse_from_dense(w.uinv, w.rows, w.rows);
    out.v = detail::sparse_from_dense(w.v, w.cols, w.cols);
    out.v_inv = detail::sparse_from_dense(w.vinv, w.cols, w.cols);
    return out;
}

// Basis of {x : Mx = 0} as a free abelian group: the columns of V whose
// diagonal entry vanishes, in ascending column order.
inline std::vector<IntVector> kernel_basis_of(const SnfDecomposition& s) {
    std::vector<IntVector> basis;
    for (Index j = s.rank; j < s.v.cols(); ++j) basis.push_back(s.v.column(j));
    return basis;
}

inline std::vector<IntVector> kernel_basis(const IntMatrix& m) { return kernel_basis_of(snf(m)); }

// Integer solution of Mx = b via the SNF change of basis, when one exists.
inline std::optional<IntVector> solve_with(const SnfDecomposition& s, const IntVector& b) {
    if (b.size() != s.u.cols()) throw std::invalid_argument("solve: dimension mismatch");
    const IntVector y = s.u.apply(b);
    IntVector z(s.v.rows(), Int(0));
    for (Index i = 0; i < y.size(); ++i) {
        if (i < s.rank) {
            if (y[i] % s.diagonal[i] != 0) return std::nullopt;
            z[i] = y[i] / s.diagonal[i];
        } else if (y[i] != 0) {
            return std::nullopt;
        }
    }
    return s.v.apply(z);
}

inline std::optional<IntVector> solve(const IntMatrix& m, const IntVector& b) {
    return solve_with(snf(m), b);
}

// coker(M) = Z^free_rank + sum of Z/torsion_i
struct CokernelStructure {
    Index free_rank = 0;
    std::vector<Int> torsion;  // diagonal entries > 1, in divisibility order
};

inline CokernelStructure cokernel(const IntMatrix& m) {
    const SnfDecomposition s = snf(m);
    CokernelStructure out;
    out.free_rank = m.rows() - s.rank;
    for (Index i = 0; i < s.rank; ++i)
        if (s.diagonal[i] > 1) out.torsion.push_back(s.diagonal[i]);
    return out;
}

// Splitting of the domain as span(K) + span(W) with K a kernel basis and M
// injective on span(W). Both parts together are the columns of V, so the
// splitting extends to a basis of the domain.
struct KernelSplit {
    std::vector<IntVector> kernel;      // K
    std::vector<IntVector> complement;  // W
};

inline KernelSplit split_kernel(const IntMatrix& m) {
    const SnfDecomposition s = snf(m);
    KernelSplit out;
    for (Index j = 0; j < s.rank; ++j) out.complement.push_back(s.v.column(j));
    out.kernel = kernel_basis_of(s);
    return out;
}

// Coordinates in a finitely generated abelian group presented as
// Z^free + sum Z/torsion_i; torsion residues are reduced into [0, d_i).
struct QuotientClass {
    IntVector free_part;
    IntVector torsion_part;

    bool is_zero() const {
        const auto zero = [](const Int& x) { return x == 0; };
        return std::all_of(free_part.begin(), free_part.end(), zero) &&
               std::all_of(torsion_part.begin(), torsion_part.end(), zero);
    }

    friend bool operator==(const QuotientClass&, const QuotientClass&) = default;

    friend std::ostream& operator<<(std::ostream& os, const QuotientClass& c) {
        os << "free(";
        for (const Int& x : c.free_part) os << " " << x;
        os << " ) torsion(";
        for (const Int& x : c.torsion_part) os << " " << x;
        os << " )";
        return os;
    }
};

// The lattice ker(M) with integer coordinates relative to its SNF basis.
class KernelLattice {
public:
    explicit KernelLattice(const IntMatrix& m) : snf_(snf(m)), ambient_(m.cols()) {
        basis_ = kernel_basis_of(snf_);
    }

    Index ambient_dimension() const { return ambient_; }
    Index dimension() const { return basis_.size(); }
    const std::vector<IntVector>& basis() const { return basis_; }
    const SnfDecomposition& decomposition() const { return snf_; }

    // Unique integer coordinates of a kernel element in the SNF basis;
    // nullopt when x is not in the kernel.
    std::optional<IntVector> coordinates(const IntVector& x) const {
        if (x.size() != ambient_) throw std::invalid_argument("KernelLattice: dimension mismatch");
        const IntVector y = snf_.v_inv.apply(x);
        for (Index i = 0; i < snf_.rank; ++i)
            if (y[i] != 0) return std::nullopt;
        return IntVector(y.begin() + static_cast<std::ptrdiff_t>(snf_.rank), y.end());
    }

    IntVector from_coordinates(const IntVector& coords) const {
        if (coords.size() != dimension())
            throw std::invalid_argument("KernelLattice: coordinate dimension mismatch");
        IntVector x(ambient_, Int(0));
        for (Index j = 0; j < coords.size(); ++j)
            for (Index i = 0; i < ambient_; ++i) x[i] += coords[j] * basis_[j][i];
        return x;
    }

private:
    SnfDecomposition snf_;
    Index ambient_;
    std::vector<IntVector> basis_;
};

// Structure of ker(M1) / im(M2) for a composable pair with M1 * M2 = 0.
// Beyond the isomorphism type (betti, torsion) this keeps an adapted basis
// {w_j} of ker(M1) with invariants d_j such that {d_j * w_j : d_j != 0} is a
// basis of im(M2), together with preimages: domain vectors p_j of M2 with
// M2 * p_j = d_j * w_j. That adapted data is what character lifting, witness
// construction and flat classification all consume.
class LatticeQuotient {
public:
    LatticeQuotient(const IntMatrix& m1, const IntMatrix& m2) : kernel_(m1) {
        if (m1.cols() != m2.rows()) throw std::invalid_argument("LatticeQuotient: dimension mismatch");
        const Index z = kernel_.dimension();
        IntMatrix rel(z, m2.cols());
        for (Index j = 0; j < m2.cols(); ++j) {
            const auto coords = kernel_.coordinates(m2.column(j));
            if (!coords) throw std::invalid_argument("LatticeQuotient: im(M2) not contained in ker(M1)");
            for (Index i = 0; i < z; ++i) rel.set(i, j, (*coords)[i]);
        }
        rel_snf_ = snf(rel);
        invariants_.assign(z, Int(0));
        for (Index i = 0; i < rel_snf_.diagonal.size(); ++i) invariants_[i] = rel_snf_.diagonal[i];
        for (Index i = 0; i < rel_snf_.rank; ++i)
            if (invariants_[i] > 1) torsion_.push_back(invariants_[i]);
        betti_ = z - rel_snf_.rank;
        preimages_.reserve(rel_snf_.rank);
        for (Index j = 0; j < rel_snf_.rank; ++j) preimages_.push_back(rel_snf_.v.column(j));
    }

    const KernelLattice& kernel() const { return kernel_; }
    Index betti() const { return betti_; }
    const std::vector<Int>& torsion() const { return torsion_; }

    // invariants d_j of the adapted basis, padded with zeros; d_j = 0 means
    // w_j generates a free factor of the quotient
    const std::vector<Int>& invariants() const { return invariants_; }
    Index relation_rank() const { return rel_snf_.rank; }

    // w_j in kernel coordinates: column j of U^{-1}
    IntVector adapted_basis_vector(Index j) const { return rel_snf_.u_inv.column(j); }

    // preimage p_j (in the domain of M2) with M2 * p_j = d_j * w_j
    const std::vector<IntVector>& preimages() const { return preimages_; }

    // kernel coordinates -> adapted coordinates (apply U)
    IntVector to_adapted(const IntVector& kernel_coords) const {
        return rel_snf_.u.apply(kernel_coords);
    }

    // adapted coordinates -> kernel coordinates (apply U^{-1})
    IntVector from_adapted(const IntVector& adapted_coords) const {
        return rel_snf_.u_inv.apply(adapted_coords);
    }

    QuotientClass class_of(const IntVector& kernel_coords) const {
        const IntVector w = to_adapted(kernel_coords);
        QuotientClass out;
        for (Index i = 0; i < rel_snf_.rank; ++i)
            if (invariants_[i] > 1) out.torsion_part.push_back(mod_positive(w[i], invariants_[i]));
        out.free_part.assign(w.begin() + static_cast<std::ptrdiff_t>(rel_snf_.rank), w.end());
        return out;
    }

private:
    KernelLattice kernel_;
    SnfDecomposition rel_snf_;
    std::vector<Int> invariants_;
    std::vector<Int> torsion_;
    Index betti_ = 0;
    std::vector<IntVector> preimages_;
};

}  // namespace chainft
