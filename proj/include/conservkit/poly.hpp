#pragma once

#include "conservkit/errors.hpp"
#include "conservkit/linalg.hpp"
#include "conservkit/rational.hpp"

#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace conservkit {

template <class Exponent>
using Monomial = std::vector<Exponent>;

// Graded lexicographic order with x1 < x2 < ... < xn: compare total degree
// first, then the exponent of the highest-index variable, then the next.
struct GradLexLess {
    template <class Exponent>
    bool operator()(const Monomial<Exponent>& a, const Monomial<Exponent>& b) const {
        const long da = std::accumulate(a.begin(), a.end(), 0L);
        const long db = std::accumulate(b.begin(), b.end(), 0L);
        if (da != db) return da < db;
        for (std::size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }
};

// Sparse multivariate polynomial over the rationals. Exponent = unsigned gives
// ordinary polynomials; a signed exponent type admits negative powers
// (Laurent polynomials). Zero coefficients are never stored.
template <class Exponent>
class BasicPoly {
public:
    using monomial_type = Monomial<Exponent>;
    using term_map = std::map<monomial_type, Rational, GradLexLess>;
    static constexpr bool is_laurent = std::is_signed_v<Exponent>;

    explicit BasicPoly(std::size_t nvars) : nvars_(nvars) {}

    static BasicPoly constant(std::size_t nvars, const Rational& c) {
        BasicPoly p(nvars);
        p.add_term(monomial_type(nvars, 0), c);
        return p;
    }

    // x_{index} raised to `power` (0-based index).
    static BasicPoly variable(std::size_t nvars, std::size_t index, Exponent power = 1) {
        if (index >= nvars) throw InputError("variable index out of range");
        monomial_type m(nvars, 0);
        m[index] = power;
        BasicPoly p(nvars);
        p.add_term(std::move(m), Rational(1));
        return p;
    }

    static BasicPoly term(monomial_type m, const Rational& c) {
        BasicPoly p(m.size());
        p.add_term(std::move(m), c);
        return p;
    }

    std::size_t nvars() const noexcept { return nvars_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }
    const term_map& terms() const noexcept { return terms_; }

    void add_term(monomial_type m, const Rational& c) {
        if (m.size() != nvars_) throw InputError("monomial length does not match variable count");
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(std::move(m), c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    // All nonzero terms in ascending graded-lexicographic order.
    std::vector<std::pair<monomial_type, Rational>> coefficients() const {
        return {terms_.begin(), terms_.end()};
    }

    Rational coefficient(const monomial_type& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    // Throws InputError on dimension mismatch and DomainError when a zero
    // coordinate meets a negative exponent.
    Rational evaluate(const Vector& point) const {
        if (point.dim() != nvars_) throw InputError("evaluation point has wrong dimension");
        Rational total(0);
        for (const auto& [m, c] : terms_) {
            Rational value = c;
            for (std::size_t i = 0; i < nvars_; ++i) {
                if (m[i] == 0) continue;
                if constexpr (is_laurent) {
                    if (m[i] < 0 && point[i].is_zero())
                        throw DomainError("pole: x" + std::to_string(i + 1) +
                                          " = 0 substituted into a negative power");
                }
                value *= point[i].pow(static_cast<int>(m[i]));
            }
            total += value;
        }
        return total;
    }

    BasicPoly operator-() const {
        BasicPoly out(nvars_);
        for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
        return out;
    }

    BasicPoly& operator+=(const BasicPoly& rhs) {
        check_compatible(rhs);
        for (const auto& [m, c] : rhs.terms_) add_term(m, c);
        return *this;
    }

    BasicPoly& operator-=(const BasicPoly& rhs) {
        check_compatible(rhs);
        for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
        return *this;
    }

    BasicPoly& operator*=(const Rational& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& entry : terms_) entry.second *= s;
        return *this;
    }

    friend BasicPoly operator+(BasicPoly lhs, const BasicPoly& rhs) { return lhs += rhs; }
    friend BasicPoly operator-(BasicPoly lhs, const BasicPoly& rhs) { return lhs -= rhs; }
    friend BasicPoly operator*(const Rational& s, BasicPoly p) { return p *= s; }

    friend BasicPoly operator*(const BasicPoly& lhs, const BasicPoly& rhs) {
        lhs.check_compatible(rhs);
        BasicPoly out(lhs.nvars_);
        monomial_type m(lhs.nvars_);
        for (const auto& [ma, ca] : lhs.terms_)
            for (const auto& [mb, cb] : rhs.terms_) {
                for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
                out.add_term(m, ca * cb);
            }
        return out;
    }

    BasicPoly& operator*=(const BasicPoly& rhs) { return *this = *this * rhs; }

    friend bool operator==(const BasicPoly& a, const BasicPoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    // Human-readable form using the given variable names, e.g. "3*a^2*b^-1 - 1".
    std::string str(const std::vector<std::string>& names) const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [m, c] = *it;
            const bool negative = c.sign() < 0;
            const Rational mag = negative ? -c : c;
            if (out.empty())
                out += negative ? "-" : "";
            else
                out += negative ? " - " : " + ";
            std::string factors;
            for (std::size_t i = 0; i < nvars_; ++i) {
                if (m[i] == 0) continue;
                if (!factors.empty()) factors += "*";
                factors += i < names.size() ? names[i] : "x" + std::to_string(i + 1);
                if (m[i] != 1) factors += "^" + std::to_string(m[i]);
            }
            if (factors.empty())
                out += mag.str();
            else if (mag == Rational(1))
                out += factors;
            else
                out += mag.str() + "*" + factors;
        }
        return out;
    }

private:
    void check_compatible(const BasicPoly& rhs) const {
        if (rhs.nvars_ != nvars_)
            throw InputError("polynomial variable-count mismatch (" + std::to_string(nvars_) + " vs " +
                             std::to_string(rhs.nvars_) + ")");
    }

    std::size_t nvars_;
    term_map terms_;
};

using MultiPoly = BasicPoly<unsigned>;
using LaurentPoly = BasicPoly<int>;

}  // namespace conservkit
