#include "gseforge/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace gsef {

PauliTerm PauliTerm::single(std::size_t n, std::size_t q, char letter) {
    PauliTerm t(n);
    t.set_letter(q, letter);
    return t;
}

void PauliTerm::set_letter(std::size_t q, char letter) {
    if (q >= n_) throw PauliError("qubit index out of range");
    bool had_y = x_.get(q) && z_.get(q);
    switch (letter) {
        case 'I': x_.set(q, false); z_.set(q, false); break;
        case 'X': x_.set(q, true);  z_.set(q, false); break;
        case 'Z': x_.set(q, false); z_.set(q, true);  break;
        case 'Y': x_.set(q, true);  z_.set(q, true);  break;
        default: throw PauliError(std::string("illegal Pauli letter '") + letter + "'");
    }
    bool has_y = x_.get(q) && z_.get(q);
    // keep the printed phase fixed while editing letters
    if (has_y && !had_y) k_ = std::uint8_t((k_ + 1) & 3);
    if (had_y && !has_y) k_ = std::uint8_t((k_ + 3) & 3);
}

PauliTerm PauliTerm::operator*(const PauliTerm& o) const {
    if (n_ != o.n_) throw PauliError("multiply: qubit count mismatch");
    PauliTerm r(n_);
    // (i^ka X^xa Z^za)(i^kb X^xb Z^zb) = i^(ka+kb) (-1)^|za&xb| X^(xa^xb) Z^(za^zb)
    std::size_t cross = and_count(z_, o.x_);
    r.k_ = std::uint8_t((k_ + o.k_ + 2 * (cross & 1)) & 3);
    r.x_ = x_;
    r.x_ ^= o.x_;
    r.z_ = z_;
    r.z_ ^= o.z_;
    return r;
}

std::string PauliTerm::str() const {
    static const char* prefix[4] = {"", "i", "-", "-i"};
    std::string s = prefix[phase_exponent()];
    s.reserve(s.size() + n_);
    for (std::size_t q = 0; q < n_; ++q) s += letter(q);
    return s;
}

PauliTerm PauliTerm::parse(const std::string& text) {
    std::size_t pos = 0;
    int extra = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        if (text[pos] == '-') extra = 2;
        ++pos;
    }
    if (pos < text.size() && text[pos] == 'i') {
        extra = (extra + 1) & 3;
        ++pos;
    }
    std::string letters = text.substr(pos);
    if (letters.empty()) throw PauliError("parse: empty Pauli string");
    PauliTerm t(letters.size());
    for (std::size_t q = 0; q < letters.size(); ++q) t.set_letter(q, letters[q]);
    t.mul_phase_i(extra);
    return t;
}

void WeightedPauliSum::add(cplx coeff, const PauliTerm& term) {
    if (n_ == 0) n_ = term.n_qubits();
    if (term.n_qubits() != n_) throw PauliError("sum: qubit count mismatch");
    cplx c = coeff * term.phase();
    PauliTerm t = term.unsigned_form();
    std::size_t h = t.letters_hash();
    auto it = index_.find(h);
    if (it != index_.end()) {
        for (std::size_t idx : it->second) {
            if (terms_[idx].second.same_letters(t)) {
                terms_[idx].first += c;
                return;
            }
        }
    }
    index_[h].push_back(terms_.size());
    terms_.emplace_back(c, std::move(t));
}

void WeightedPauliSum::add_sum(const WeightedPauliSum& o, cplx scale) {
    for (const auto& [c, t] : o.terms_) add(c * scale, t);
}

void WeightedPauliSum::compress(double tol) {
    std::vector<std::pair<cplx, PauliTerm>> kept;
    kept.reserve(terms_.size());
    for (auto& e : terms_)
        if (std::abs(e.first) >= tol) kept.push_back(std::move(e));
    terms_ = std::move(kept);
    index_.clear();
    for (std::size_t i = 0; i < terms_.size(); ++i)
        index_[terms_[i].second.letters_hash()].push_back(i);
}

WeightedPauliSum WeightedPauliSum::sorted() const {
    WeightedPauliSum s(n_);
    std::vector<std::size_t> order(terms_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return compare(terms_[a].second, terms_[b].second) < 0;
    });
    for (std::size_t i : order) s.add(terms_[i].first, terms_[i].second);
    return s;
}

WeightedPauliSum WeightedPauliSum::operator*(const WeightedPauliSum& o) const {
    WeightedPauliSum r(n_);
    for (const auto& [ca, ta] : terms_)
        for (const auto& [cb, tb] : o.terms_) r.add(ca * cb, ta * tb);
    r.compress();
    return r;
}

WeightedPauliSum WeightedPauliSum::adjoint() const {
    WeightedPauliSum r(n_);
    for (const auto& [c, t] : terms_) r.add(std::conj(c), t.adjoint());
    return r;
}

bool WeightedPauliSum::is_hermitian(double tol) const {
    for (const auto& [c, t] : terms_)
        if (std::abs(c.imag()) > tol) return false;  // terms stored phase-free
    return true;
}

double WeightedPauliSum::average_weight() const {
    if (terms_.empty()) return 0.0;
    double s = 0;
    for (const auto& [c, t] : terms_) s += double(t.weight());
    return s / double(terms_.size());
}

std::size_t WeightedPauliSum::max_weight() const {
    std::size_t m = 0;
    for (const auto& [c, t] : terms_) m = std::max(m, t.weight());
    return m;
}

cplx WeightedPauliSum::identity_coefficient() const {
    for (const auto& [c, t] : terms_)
        if (t.is_identity()) return c;
    return 0.0;
}

cplx WeightedPauliSum::extract_identity() {
    cplx c0 = 0.0;
    std::vector<std::pair<cplx, PauliTerm>> kept;
    for (auto& e : terms_) {
        if (e.second.is_identity())
            c0 += e.first;
        else
            kept.push_back(std::move(e));
    }
    terms_ = std::move(kept);
    index_.clear();
    for (std::size_t i = 0; i < terms_.size(); ++i)
        index_[terms_[i].second.letters_hash()].push_back(i);
    return c0;
}

std::string WeightedPauliSum::to_text() const {
    WeightedPauliSum s = sorted();
    std::ostringstream out;
    char buf[64];
    for (const auto& [c, t] : s.terms_) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g ", c.real(), c.imag());
        out << buf << t.unsigned_form().str() << '\n';
    }
    return out.str();
}

WeightedPauliSum WeightedPauliSum::from_text(const std::string& text) {
    WeightedPauliSum s;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        double re, im;
        std::string pauli;
        if (!(ls >> re)) continue;  // blank
        if (!(ls >> im >> pauli)) throw PauliError("bad pauli-sum line: " + line);
        s.add(cplx(re, im), PauliTerm::parse(pauli));
    }
    return s;
}

}  // namespace gsef
