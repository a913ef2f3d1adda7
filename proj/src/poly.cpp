// SPDX-License-Identifier: MIT
#include "brank/poly.hpp"

#include <algorithm>
#include <sstream>

namespace brank {

Monomial::Monomial(std::vector<Factor> factors) {
    std::sort(factors.begin(), factors.end(), [](const Factor& a, const Factor& b) { return a.first > b.first; });
    for (auto& f : factors) {
        if (f.second == 0) continue;
        if (!factors_.empty() && factors_.back().first == f.first) factors_.back().second += f.second;
        else factors_.push_back(std::move(f));
    }
}

unsigned Monomial::degree() const {
    unsigned d = 0;
    for (const auto& f : factors_) d += f.second;
    return d;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    std::vector<Monomial::Factor> all = a.factors_;
    all.insert(all.end(), b.factors_.begin(), b.factors_.end());
    return Monomial(std::move(all));
}

bool MonomialLess::operator()(const Monomial& a, const Monomial& b) const {
    const unsigned da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    for (std::size_t i = 0; i < std::min(fa.size(), fb.size()); ++i) {
        if (fa[i].first != fb[i].first) return fa[i].first < fb[i].first;
        if (fa[i].second != fb[i].second) return fa[i].second < fb[i].second;
    }
    return fa.size() < fb.size();
}

SparsePoly SparsePoly::constant(const Rational& c, unsigned alphabet) {
    SparsePoly p(alphabet);
    p.add_term(Monomial(), c);
    return p;
}

SparsePoly SparsePoly::variable(const Word& w) {
    SparsePoly p(w.alphabet());
    p.add_term(Monomial::variable(w), Rational(1));
    return p;
}

int SparsePoly::degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.degree()));
    return d;
}

bool SparsePoly::is_homogeneous() const {
    if (terms_.empty()) return true;
    const unsigned d = terms_.begin()->first.degree();
    return std::all_of(terms_.begin(), terms_.end(), [d](const auto& t) { return t.first.degree() == d; });
}

void SparsePoly::add_term(const Monomial& m, const Rational& c) {
    if (sgn(c) == 0) return;
    for (const auto& f : m.factors())
        if (f.first.alphabet() != n_) throw std::invalid_argument("monomial alphabet does not match the polynomial");
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

std::string SparsePoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        Rational mag = abs(c);
        if (first) os << (sgn(c) < 0 ? "-" : "");
        else os << (sgn(c) < 0 ? " - " : " + ");
        first = false;
        const bool unit = mag == 1 && !m.factors().empty();
        if (!unit) os << brank::to_string(mag) << (m.factors().empty() ? "" : "*");
        for (std::size_t i = 0; i < m.factors().size(); ++i) {
            const auto& [w, e] = m.factors()[i];
            std::string digits = w.alphabet() <= 10 ? w.to_digits() : std::string();
            if (w.alphabet() > 10) {
                for (const auto& [pos, sym] : w.entries()) digits += "[" + std::to_string(pos) + ":" + std::to_string(sym) + "]";
            }
            os << (i ? "*" : "") << "x_" << (digits.empty() ? "0" : digits);
            if (e > 1) os << "^" << e;
        }
    }
    return os.str();
}

SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("polynomial alphabets differ");
    SparsePoly out = a;
    for (const auto& [m, c] : b.terms_) out.add_term(m, c);
    return out;
}

SparsePoly operator-(const SparsePoly& a) {
    SparsePoly out(a.n_);
    for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, -c);
    return out;
}

SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) { return a + (-b); }

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("polynomial alphabets differ");
    SparsePoly out(a.n_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    return out;
}

SparsePoly operator*(const Rational& c, const SparsePoly& a) {
    SparsePoly out(a.n_);
    for (const auto& [m, x] : a.terms_) out.add_term(m, c * x);
    return out;
}

namespace {

template <class T>
T eval_impl(const SparsePoly& f, const BasicTensor<T>& t) {
    T total(0);
    for (const auto& [m, c] : f.terms()) {
        T term = from_int<T>(1);
        if constexpr (is_exact_v<T>) term = c;
        else term = c.get_d();
        for (const auto& [w, e] : m.factors()) {
            if (w.alphabet() != f.alphabet()) throw std::invalid_argument("eval_poly: alphabet mismatch");
            const T x = coord(t, w);
            for (unsigned i = 0; i < e; ++i) term *= x;
        }
        total += term;
    }
    return total;
}

}  // namespace

Rational eval_poly(const SparsePoly& f, const QTensor& t) { return eval_impl(f, t); }
double eval_poly(const SparsePoly& f, const FTensor& t) { return eval_impl(f, t); }

SparsePoly subs_act_poly(const SubsElement& sigma, const SparsePoly& f) {
    SparsePoly out(f.alphabet());
    for (const auto& [m, c] : f.terms()) {
        std::vector<Monomial::Factor> image;
        for (const auto& [w, e] : m.factors()) image.emplace_back(subs_act(sigma, w), e);
        out.add_term(Monomial(std::move(image)), c);
    }
    return out;
}

}  // namespace brank
