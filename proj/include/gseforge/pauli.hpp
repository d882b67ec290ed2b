#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "gseforge/bits.hpp"

namespace gsef {

using cplx = std::complex<double>;

struct PauliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Phase-tracked Pauli string stored in symplectic form:
//
//     term = i^k * X^x * Z^z
//
// with k in {0,1,2,3}. A qubit with (x,z) = (1,1) prints as Y; since
// Y = i*X*Z, the printed phase is i^(k - #Y).
class PauliTerm {
public:
    PauliTerm() = default;
    explicit PauliTerm(std::size_t n) : n_(n), x_(n), z_(n), k_(0) {}

    static PauliTerm identity(std::size_t n) { return PauliTerm(n); }

    // Single letter at qubit q, letter in {'I','X','Y','Z'}; printed phase +1.
    static PauliTerm single(std::size_t n, std::size_t q, char letter);

    std::size_t n_qubits() const { return n_; }
    const BitVec& x_bits() const { return x_; }
    const BitVec& z_bits() const { return z_; }

    bool x_bit(std::size_t q) const { return x_.get(q); }
    bool z_bit(std::size_t q) const { return z_.get(q); }

    char letter(std::size_t q) const {
        bool x = x_.get(q), z = z_.get(q);
        return x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
    }

    void set_letter(std::size_t q, char letter);

    std::size_t weight() const {
        std::size_t c = 0;
        for (std::size_t i = 0; i < x_.words().size(); ++i)
            c += std::popcount(x_.words()[i] | z_.words()[i]);
        return c;
    }

    bool is_identity() const { return !x_.any() && !z_.any(); }
    bool is_z_only() const { return !x_.any(); }

    // Exponent e with printed value i^e, e in {0,1,2,3}.
    int phase_exponent() const {
        std::size_t y = and_count(x_, z_);
        return int((k_ + 3 * (y & 3)) & 3);
    }

    cplx phase() const {
        static const cplx tab[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        return tab[phase_exponent()];
    }

    bool is_hermitian() const { return (phase_exponent() & 1) == 0; }

    // Raw i^k exponent (internal representation).
    int raw_phase_exponent() const { return k_; }
    void mul_phase_i(int steps) { k_ = std::uint8_t((k_ + steps) & 3); }

    // Strips the phase: same letters, printed phase +1.
    PauliTerm unsigned_form() const {
        PauliTerm t = *this;
        t.k_ = std::uint8_t(and_count(x_, z_) & 3);
        return t;
    }

    PauliTerm adjoint() const {
        PauliTerm t = *this;
        std::size_t overlap = and_count(x_, z_);
        t.k_ = std::uint8_t((4 - k_ + 2 * (overlap & 1)) & 3);
        return t;
    }

    PauliTerm operator*(const PauliTerm& o) const;
    PauliTerm& operator*=(const PauliTerm& o) { return *this = *this * o; }

    friend bool commutes(const PauliTerm& a, const PauliTerm& b) {
        if (a.n_ != b.n_) throw PauliError("commutes: qubit count mismatch");
        return ((and_count(a.x_, b.z_) + and_count(a.z_, b.x_)) & 1) == 0;
    }

    bool operator==(const PauliTerm& o) const {
        return n_ == o.n_ && k_ == o.k_ && x_ == o.x_ && z_ == o.z_;
    }

    bool same_letters(const PauliTerm& o) const { return x_ == o.x_ && z_ == o.z_; }

    // Lexicographic on (z_bits, x_bits), then phase.
    friend int compare(const PauliTerm& a, const PauliTerm& b) {
        int c = lex_compare(a.z_, b.z_);
        if (c) return c;
        c = lex_compare(a.x_, b.x_);
        if (c) return c;
        return int(a.phase_exponent()) - int(b.phase_exponent());
    }

    std::size_t letters_hash() const { return x_.hash() * 0x9e3779b97f4a7c15ull + z_.hash(); }

    // Text form: optional leading phase (+, -, i, -i) then one letter per
    // qubit, qubit 0 leftmost, e.g. "-iXYZI".
    std::string str() const;
    static PauliTerm parse(const std::string& text);

    // Mutable access for the tableau engine.
    BitVec& x_ref() { return x_; }
    BitVec& z_ref() { return z_; }

private:
    std::size_t n_ = 0;
    BitVec x_, z_;
    std::uint8_t k_ = 0;
};

// Sum of coefficient-weighted Pauli terms. Terms are stored with printed
// phase +1 (phases folded into coefficients) and no two entries share a
// letter pattern. In-memory order is insertion order, which downstream
// circuit synthesis relies on; file output is sorted lexicographically.
class WeightedPauliSum {
public:
    WeightedPauliSum() = default;
    explicit WeightedPauliSum(std::size_t n) : n_(n) {}

    std::size_t n_qubits() const { return n_; }
    std::size_t size() const { return terms_.size(); }

    const std::vector<std::pair<cplx, PauliTerm>>& terms() const { return terms_; }

    void add(cplx coeff, const PauliTerm& term);
    void add_sum(const WeightedPauliSum& o, cplx scale = 1.0);

    // Drops terms with |coeff| < tol (cancellation residue).
    void compress(double tol = 1e-12);

    WeightedPauliSum sorted() const;

    // Product of two sums (operator order: this * o).
    WeightedPauliSum operator*(const WeightedPauliSum& o) const;

    WeightedPauliSum adjoint() const;
    bool is_hermitian(double tol = 1e-10) const;

    double average_weight() const;
    std::size_t max_weight() const;

    // Coefficient of the identity term (0 if absent).
    cplx identity_coefficient() const;
    // Removes the identity term and returns its coefficient.
    cplx extract_identity();

    // One term per line: "<re> <im> <string>". '#' comments, blank lines ok.
    std::string to_text() const;
    static WeightedPauliSum from_text(const std::string& text);

private:
    std::size_t n_ = 0;
    std::vector<std::pair<cplx, PauliTerm>> terms_;
    std::unordered_map<std::size_t, std::vector<std::size_t>> index_;
};

}  // namespace gsef
