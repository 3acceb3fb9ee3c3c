#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kstab {

/** @brief Raised when an operation is called outside its mathematical domain. */
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/**
 * @brief Exact rational number in lowest terms with positive denominator.
 *
 * Thin value wrapper over GMP's mpq_class that canonicalizes after every
 * operation and rejects division by zero.
 */
class Rat {
public:
    Rat() = default;
    Rat(long v) : q_(v) {}
    Rat(int v) : q_(v) {}
    Rat(long num, long den) {
        if (den == 0) throw DomainError("rational with zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }
    explicit Rat(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    /** @brief Parse "p", "-p" or "p/q" (whitespace not allowed). */
    static Rat parse(const std::string& s) {
        if (s.empty()) throw std::invalid_argument("empty rational literal");
        auto slash = s.find('/');
        auto check_int = [&](const std::string& t) {
            std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
            if (i >= t.size()) throw std::invalid_argument("malformed rational: " + s);
            for (; i < t.size(); ++i)
                if (t[i] < '0' || t[i] > '9') throw std::invalid_argument("malformed rational: " + s);
        };
        mpq_class q;
        if (slash == std::string::npos) {
            check_int(s);
            q = mpq_class(mpz_class(s[0] == '+' ? s.substr(1) : s, 10));
        } else {
            std::string n = s.substr(0, slash), d = s.substr(slash + 1);
            check_int(n);
            check_int(d);
            mpz_class dz(d[0] == '+' ? d.substr(1) : d, 10);
            if (dz == 0) throw DomainError("rational with zero denominator: " + s);
            q = mpq_class(mpz_class(n[0] == '+' ? n.substr(1) : n, 10), dz);
        }
        return Rat(q);
    }

    const mpq_class& raw() const { return q_; }
    mpz_class num() const { return q_.get_num(); }
    mpz_class den() const { return q_.get_den(); }
    int sign() const { return sgn(q_); }
    bool is_zero() const { return sgn(q_) == 0; }
    double to_double() const { return q_.get_d(); }

    /** @brief Canonical text form: "p" for integers, "p/q" otherwise. */
    std::string str() const { return q_.get_den() == 1 ? q_.get_num().get_str() : q_.get_str(); }

    Rat operator-() const { return Rat(mpq_class(-q_)); }
    Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
    Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
    Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.is_zero()) throw DomainError("division by zero");
        q_ /= o.q_;
        return *this;
    }
    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
    friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
    friend auto operator<=>(const Rat& a, const Rat& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

private:
    mpq_class q_{0};
};

inline Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }
inline Rat pow(const Rat& r, unsigned e) {
    Rat out(1);
    for (unsigned i = 0; i < e; ++i) out *= r;
    return out;
}

/**
 * @brief Dense univariate polynomial over a field F, coefficients indexed by exponent.
 *
 * Trailing zeros are trimmed so the zero polynomial has degree -1.
 */
template <typename F>
class Poly {
public:
    Poly() = default;
    Poly(F c) : c_{std::move(c)} { trim(); }
    explicit Poly(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }

    /** @brief The monomial x. */
    static Poly x() { return Poly(std::vector<F>{F(0), F(1)}); }
    /** @brief The affine polynomial c0 + c1 x. */
    static Poly affine(const F& c0, const F& c1) { return Poly(std::vector<F>{c0, c1}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<F>& coeffs() const { return c_; }
    F coeff(std::size_t i) const { return i < c_.size() ? c_[i] : F(0); }
    bool is_zero() const { return c_.empty(); }

    F operator()(const F& t) const {
        F acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
        return acc;
    }

    /** @brief Antiderivative vanishing at 0. */
    Poly antiderivative() const {
        std::vector<F> out(c_.size() + 1, F(0));
        for (std::size_t i = 0; i < c_.size(); ++i) out[i + 1] = c_[i] / F(static_cast<long>(i + 1));
        return Poly(std::move(out));
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<F> out(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * F(static_cast<long>(i));
        return Poly(std::move(out));
    }

    /** @brief Exact definite integral over [lo, hi]. */
    F integrate(const F& lo, const F& hi) const {
        auto A = antiderivative();
        return A(hi) - A(lo);
    }

    /** @brief Composition p(q(x)). */
    Poly compose(const Poly& q) const {
        Poly acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + Poly(*it);
        return acc;
    }

    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) { return *this += -o; }
    Poly operator-() const {
        Poly r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.c_.empty() || b.c_.empty()) return Poly();
        std::vector<F> out(a.c_.size() + b.c_.size() - 1, F(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(out));
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    std::string str(const std::string& var = "x") const {
        if (c_.empty()) return "0";
        std::string out;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i] == F(0)) continue;
            if (!out.empty()) out += " + ";
            out += "(" + c_[i].str() + ")";
            if (i >= 1) out += "*" + var;
            if (i >= 2) out += "^" + std::to_string(i);
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == F(0)) c_.pop_back();
    }
    std::vector<F> c_;
};

/**
 * @brief Lagrange interpolation through (xs[i], ys[i]) with distinct nodes.
 */
template <typename F>
Poly<F> interpolate(const std::vector<F>& xs, const std::vector<F>& ys) {
    if (xs.size() != ys.size() || xs.empty()) throw std::invalid_argument("interpolate: size mismatch");
    Poly<F> acc;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        Poly<F> basis(F(1));
        F denom(1);
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (j == i) continue;
            basis = basis * Poly<F>::affine(-xs[j], F(1));
            denom *= xs[i] - xs[j];
        }
        acc += basis * Poly<F>(ys[i] / denom);
    }
    return acc;
}

/**
 * @brief Piecewise polynomial on [breaks.front(), breaks.back()].
 *
 * pieces[i] is valid on [breaks[i], breaks[i+1]]; zero-length intervals are
 * collapsed on construction.
 */
template <typename F>
class PiecewisePoly {
public:
    PiecewisePoly() = default;
    PiecewisePoly(std::vector<F> breaks, std::vector<Poly<F>> pieces) {
        if (breaks.size() != pieces.size() + 1)
            throw std::invalid_argument("PiecewisePoly: need one more breakpoint than pieces");
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            if (breaks[i + 1] < breaks[i])
                throw std::invalid_argument("PiecewisePoly: breakpoints must be increasing");
            if (breaks[i + 1] == breaks[i]) continue;
            if (breaks_.empty()) breaks_.push_back(breaks[i]);
            breaks_.push_back(breaks[i + 1]);
            pieces_.push_back(std::move(pieces[i]));
        }
        if (breaks_.empty() && !breaks.empty()) breaks_.push_back(breaks.front());
    }

    const std::vector<F>& breaks() const { return breaks_; }
    const std::vector<Poly<F>>& pieces() const { return pieces_; }
    F lo() const { return breaks_.front(); }
    F hi() const { return breaks_.back(); }

    /** @brief Evaluate; at an interior breakpoint the right piece is used. */
    F operator()(const F& t) const {
        if (breaks_.empty() || t < lo() || t > hi()) throw DomainError("PiecewisePoly: point outside domain");
        for (std::size_t i = 0; i < pieces_.size(); ++i)
            if (t < breaks_[i + 1] || i + 1 == pieces_.size()) return pieces_[i](t);
        return F(0);
    }

    /** @brief Left and right limits at every interior breakpoint agree. */
    bool is_continuous() const {
        for (std::size_t i = 1; i < pieces_.size(); ++i)
            if (pieces_[i - 1](breaks_[i]) != pieces_[i](breaks_[i])) return false;
        return true;
    }

private:
    std::vector<F> breaks_;
    std::vector<Poly<F>> pieces_;
};

/** @brief Exact integral of a piecewise polynomial over [lo, hi]. */
template <typename F>
F integrate(const PiecewisePoly<F>& f, const F& lo, const F& hi) {
    if (hi < lo) throw DomainError("integrate: lo > hi");
    if (f.breaks().empty() || lo < f.lo() || hi > f.hi()) throw DomainError("integrate: interval outside domain");
    F acc(0);
    const auto& b = f.breaks();
    for (std::size_t i = 0; i < f.pieces().size(); ++i) {
        F l = std::max(lo, b[i]), h = std::min(hi, b[i + 1]);
        if (l < h) acc += f.pieces()[i].integrate(l, h);
    }
    return acc;
}

/**
 * @brief Polynomial identity test by evaluation at `samples` distinct rationals.
 *
 * Sound when samples exceeds both degrees.
 */
template <typename F>
bool poly_identity_check(const Poly<F>& p, const Poly<F>& q, int samples) {
    if (samples <= std::max(p.degree(), q.degree()))
        throw std::invalid_argument("poly_identity_check: samples must exceed both degrees");
    for (int i = 0; i < samples; ++i) {
        F t = F(2 * i + 1) / F(7);
        if (p(t) != q(t)) return false;
    }
    return true;
}

/**
 * @brief Identity test for black-box univariate functions known to be
 * polynomials of degree at most `degree` (rational functions are fine when
 * the caller clears denominators).
 */
template <typename F>
bool function_identity_check(const std::function<F(const F&)>& f, const std::function<F(const F&)>& g,
                             const std::vector<F>& nodes) {
    for (const auto& t : nodes)
        if (f(t) != g(t)) return false;
    return true;
}

/** @brief Composite Simpson rule; exact for piecewise cubics when steps align with breakpoints. */
template <typename F, typename Fn>
F simpson(const Fn& f, const F& lo, const F& hi) {
    F mid = (lo + hi) / F(2);
    return (hi - lo) / F(6) * (f(lo) + F(4) * f(mid) + f(hi));
}

/**
 * @brief Exact integral of a function that is a polynomial of degree <= 3 on
 * each interval between consecutive `breaks` (sorted, duplicates allowed).
 *
 * Each piece is integrated by Simpson's rule and cross-checked against two
 * half-width Simpson steps; disagreement means a breakpoint is missing and
 * raises DomainError instead of returning an approximation.
 */
template <typename F, typename Fn>
F integrate_piecewise_cubic(const Fn& f, const std::vector<F>& breaks) {
    F acc(0);
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const F& lo = breaks[i];
        const F& hi = breaks[i + 1];
        if (!(lo < hi)) continue;
        F whole = simpson<F>(f, lo, hi);
        F mid = (lo + hi) / F(2);
        if (simpson<F>(f, lo, mid) + simpson<F>(f, mid, hi) != whole)
            throw DomainError("integrate_piecewise_cubic: integrand is not a cubic on a piece (missing breakpoint)");
        acc += whole;
    }
    return acc;
}

}  // namespace kstab
