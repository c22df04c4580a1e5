#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "chainft/chains.hpp"
#include "chainft/complex.hpp"

namespace chainft {

// Element of U(1) written additively: a rational reduced into [0, 1),
// standing for exp(2*pi*i*value). The group law is addition mod 1.
class Phase {
public:
    Phase() : value_(0) {}
    explicit Phase(const Rat& r) : value_(mod_one(r)) {}

    const Rat& value() const { return value_; }
    bool is_zero() const { return value_ == 0; }

    Phase operator-() const { return Phase(-value_); }
    Phase& operator+=(const Phase& other) {
        value_ = mod_one(value_ + other.value_);
        return *this;
    }
    Phase& operator-=(const Phase& other) {
        value_ = mod_one(value_ - other.value_);
        return *this;
    }
    friend Phase operator+(Phase a, const Phase& b) { return a += b; }
    friend Phase operator-(Phase a, const Phase& b) { return a -= b; }
    friend Phase operator*(const Int& n, const Phase& p) { return Phase(Rat(n) * p.value_); }

    friend bool operator==(const Phase&, const Phase&) = default;

    friend std::ostream& operator<<(std::ostream& os, const Phase& p) {
        return os << to_fraction_string(p.value_);
    }

private:
    Rat value_;  // reduced representative in [0, 1)
};

// Rational-valued cochain of one degree: the discrete stand-in for a
// differential form. Values are sparse; absent cells carry zero.
class RationalCochain {
public:
    RationalCochain(const Complex& complex, Index degree)
        : complex_(&complex), degree_(degree) {}

    const Complex& complex() const { return *complex_; }
    Index degree() const { return degree_; }
    const std::map<Index, Rat>& values() const { return values_; }
    bool is_zero() const { return values_.empty(); }

    Rat value(Index cell) const {
        const auto it = values_.find(cell);
        return it == values_.end() ? Rat(0) : it->second;
    }

    Rat value(const std::string& label) const { return value(resolve(label)); }

    void set(Index cell, Rat v) {
        if (cell >= complex_->cell_count(degree_))
            throw std::invalid_argument("RationalCochain: no cell with index " +
                                        std::to_string(cell) + " in degree " +
                                        std::to_string(degree_));
        if (v == 0)
            values_.erase(cell);
        else
            values_.insert_or_assign(cell, std::move(v));
    }

    void set(const std::string& label, Rat v) { set(resolve(label), std::move(v)); }

    void add(Index cell, const Rat& v) { set(cell, value(cell) + v); }

    RationalCochain operator-() const {
        RationalCochain w(*complex_, degree_);
        for (const auto& [cell, v] : values_) w.values_.emplace(cell, -v);
        return w;
    }

    RationalCochain& operator+=(const RationalCochain& other) {
        require_compatible(other);
        for (const auto& [cell, v] : other.values_) add(cell, v);
        return *this;
    }

    RationalCochain& operator-=(const RationalCochain& other) {
        require_compatible(other);
        for (const auto& [cell, v] : other.values_) add(cell, -v);
        return *this;
    }

    RationalCochain& operator*=(const Rat& scalar) {
        if (scalar == 0) {
            values_.clear();
        } else {
            for (auto& [cell, v] : values_) v *= scalar;
        }
        return *this;
    }

    friend RationalCochain operator+(RationalCochain a, const RationalCochain& b) { return a += b; }
    friend RationalCochain operator-(RationalCochain a, const RationalCochain& b) { return a -= b; }
    friend RationalCochain operator*(const Rat& s, RationalCochain w) { return w *= s; }

    friend bool operator==(const RationalCochain& a, const RationalCochain& b) {
        return a.degree_ == b.degree_ && a.values_ == b.values_ &&
               (a.complex_ == b.complex_ || *a.complex_ == *b.complex_);
    }

    friend std::ostream& operator<<(std::ostream& os, const RationalCochain& w) {
        os << "[deg " << w.degree_ << "]";
        for (const auto& [cell, v] : w.values_)
            os << " " << w.complex_->label(w.degree_, cell) << "=" << to_fraction_string(v);
        return os;
    }

private:
    Index resolve(const std::string& label) const {
        const auto idx = complex_->cell_index(degree_, label);
        if (!idx)
            throw std::invalid_argument("RationalCochain: no cell labeled \"" + label +
                                        "\" in degree " + std::to_string(degree_));
        return *idx;
    }

    void require_compatible(const RationalCochain& other) const {
        if (degree_ != other.degree_ ||
            (complex_ != other.complex_ && !(*complex_ == *other.complex_)))
            throw std::invalid_argument(
                "RationalCochain: operands live on different complexes or degrees");
    }

    const Complex* complex_;
    Index degree_;
    std::map<Index, Rat> values_;
};

// (dw)(cell) = w(boundary of cell), one value per cell of the next degree.
// Above the top dimension there are no cells and the result is empty.
inline RationalCochain coboundary(const RationalCochain& w) {
    RationalCochain out(w.complex(), w.degree() + 1);
    const IntMatrix d = w.complex().boundary_matrix(w.degree() + 1);
    for (const auto& [key, coeff] : d.entries()) {
        const Rat v = w.value(key.first);
        if (v != 0) out.add(key.second, Rat(coeff) * v);
    }
    return out;
}

// The integration pairing: sum of chain coefficients times cochain values.
inline Rat integrate(const RationalCochain& w, const Chain& sigma) {
    if (w.degree() != sigma.degree() || !(w.complex() == sigma.complex()))
        throw std::invalid_argument("integrate: cochain and chain do not pair");
    Rat total = 0;
    for (const auto& [cell, coeff] : sigma.coeffs()) total += Rat(coeff) * w.value(cell);
    return total;
}

inline bool is_closed(const RationalCochain& w) { return coboundary(w).is_zero(); }

// basis of the full cycle group Z_k, in the deterministic order every other
// module quotes
inline std::vector<Chain> cycle_basis(const Complex& complex, Index degree) {
    const KernelLattice lattice(complex.boundary_matrix(degree));
    std::vector<Chain> basis;
    for (const IntVector& z : lattice.basis())
        basis.push_back(Chain::from_vector(complex, degree, z));
    return basis;
}

inline bool integer_periods(const RationalCochain& w) {
    if (!is_closed(w)) return false;
    for (const Chain& z : cycle_basis(w.complex(), w.degree()))
        if (!is_integer(integrate(w, z))) return false;
    return true;
}

inline Phase exp_pairing(const RationalCochain& w, const Chain& sigma) {
    return Phase(integrate(w, sigma));
}

}  // namespace chainft
