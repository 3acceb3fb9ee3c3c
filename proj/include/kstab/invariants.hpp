#pragma once

#include "kstab/arith.hpp"
#include "kstab/geom.hpp"
#include "kstab/zariski.hpp"

#include <string>
#include <vector>

namespace kstab {

/** @brief A labelled divisor class on a threefold. */
struct LabeledClass {
    std::string label;
    NumericalClass cls;
};

/**
 * @brief (X, D = sum c_i D_i) with coefficients in [0, 1).
 *
 * `extra_primes` lists further prime divisors (test divisors not in the
 * boundary) whose log discrepancy is 1.
 */
struct LogPair {
    Threefold X;
    std::vector<LabeledClass> boundary;
    std::vector<Rat> coeffs;
    std::vector<LabeledClass> extra_primes;

    /** @brief L = -K_X - D. */
    NumericalClass polarization() const {
        if (coeffs.size() != boundary.size()) throw std::invalid_argument("coefficient count mismatch");
        NumericalClass L = -X.canonical;
        for (std::size_t i = 0; i < boundary.size(); ++i) L -= coeffs[i] * boundary[i].cls;
        return L;
    }
    /** @brief Delta = sum D_i (all coefficients one). */
    NumericalClass reduced_boundary() const {
        NumericalClass d = NumericalClass::zero(X.rho());
        for (const auto& b : boundary) d += b.cls;
        return d;
    }
};

inline bool coefficients_in_range(const std::vector<Rat>& c) {
    for (const auto& x : c)
        if (x.sign() < 0 || x >= Rat(1)) return false;
    return true;
}

/** @brief Coefficients in [0,1) and -K_X - D ample. */
inline bool is_log_fano(const LogPair& p) {
    return coefficients_in_range(p.coeffs) && is_ample(p.X, p.polarization());
}

/** @brief A(E) = 1 - coeff of E in D for a prime divisor known to the pair. */
inline Rat log_discrepancy(const LogPair& p, const std::string& label) {
    for (std::size_t i = 0; i < p.boundary.size(); ++i)
        if (p.boundary[i].label == label) return Rat(1) - p.coeffs.at(i);
    for (const auto& e : p.X.eff_primes)
        if (e.label == label) return Rat(1);
    for (const auto& e : p.extra_primes)
        if (e.label == label) return Rat(1);
    throw DomainError("unknown prime divisor label " + label);
}

enum class Sign { negative, zero, positive };

inline Sign sign_of(const Rat& r) { return r.sign() < 0 ? Sign::negative : (r.sign() == 0 ? Sign::zero : Sign::positive); }
inline std::string to_string(Sign s) {
    return s == Sign::negative ? "negative" : (s == Sign::zero ? "zero" : "positive");
}

/** @brief All invariants entering beta' of one divisor. */
struct BetaReport {
    std::string divisor_label;
    Rat A;
    Rat tau;
    Rat eps;
    Rat S_prime;
    Rat L_cubed;
    Rat beta_prime;
    Sign verdict = Sign::zero;
};

/**
 * @brief beta'(E) = A(E) L^3 - S'(E), S'(E) = integral_0^tau vol(L - xE) dx.
 */
inline BetaReport beta_prime(const LogPair& p, const NumericalClass& E, const std::string& label) {
    if (!coefficients_in_range(p.coeffs)) throw DomainError("outside body of ample angles: coefficients must lie in [0,1)");
    NumericalClass L = p.polarization();
    if (!is_ample(p.X, L)) throw DomainError("outside body of ample angles: -K_X - D is not ample");
    auto rd = decompose_ray(p.X, L, E);
    BetaReport r;
    r.divisor_label = label;
    r.A = log_discrepancy(p, label);
    r.tau = rd.tau;
    r.eps = rd.eps;
    r.S_prime = rd.integral();
    r.L_cubed = cube(p.X, L);
    r.beta_prime = r.A * r.L_cubed - r.S_prime;
    r.verdict = sign_of(r.beta_prime);
    return r;
}

enum class DivisorialStatus { divisorially_unstable, divisorially_semistable, divisorially_stable };

inline std::string to_string(DivisorialStatus s) {
    switch (s) {
        case DivisorialStatus::divisorially_unstable: return "divisorially_unstable";
        case DivisorialStatus::divisorially_semistable: return "divisorially_semistable";
        case DivisorialStatus::divisorially_stable: return "divisorially_stable";
    }
    return "?";
}

struct DivisorialVerdict {
    std::vector<BetaReport> reports;
    DivisorialStatus overall = DivisorialStatus::divisorially_stable;
};

/** @brief beta' over a list of test divisors; unstable iff some beta' < 0, stable iff all > 0. */
inline DivisorialVerdict divisorial_verdict(const LogPair& p, const std::vector<LabeledClass>& tests) {
    DivisorialVerdict v;
    bool neg = false, all_pos = true;
    for (const auto& t : tests) {
        v.reports.push_back(beta_prime(p, t.cls, t.label));
        if (v.reports.back().verdict == Sign::negative) neg = true;
        if (v.reports.back().verdict != Sign::positive) all_pos = false;
    }
    v.overall = neg ? DivisorialStatus::divisorially_unstable
                    : (all_pos ? DivisorialStatus::divisorially_stable : DivisorialStatus::divisorially_semistable);
    return v;
}

}  // namespace kstab
