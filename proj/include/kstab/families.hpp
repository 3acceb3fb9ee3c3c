#pragma once

#include "kstab/arith.hpp"
#include "kstab/geom.hpp"

#include <string>
#include <vector>

/**
 * @file
 * @brief Intersection tables and cone data generated from closed-form rules
 * for each variety type occurring in the catalog.
 */

namespace kstab::families {

inline Rat R(long v) { return Rat(v); }

/** @brief Keep only the candidate curves spanning extremal rays. */
inline std::vector<CurveFunctional> extremal_curves(const std::vector<CurveFunctional>& cand, std::size_t rho) {
    std::vector<Vec> g;
    for (const auto& c : cand) g.push_back(c.pairing);
    std::vector<CurveFunctional> out;
    for (auto i : cone::extremal_indices(g, rho)) out.push_back(cand[i]);
    return out;
}

inline void finish(Threefold& X) { X.nef_gens = dual_nef_generators(X); }

/** @brief P^3 (basis H). */
inline Threefold projective_space() {
    Threefold X({"H"});
    X.set_triple(0, 0, 0, R(1));
    X.canonical = NumericalClass{R(-4)};
    X.mori = {{"line", {R(1)}}};
    X.eff_primes = {{"H", NumericalClass{R(1)}}};
    X.mov_eq_nef = true;
    finish(X);
    return X;
}

/** @brief Smooth quadric threefold (basis H, H^3 = 2). */
inline Threefold quadric() {
    Threefold X({"H"});
    X.set_triple(0, 0, 0, R(2));
    X.canonical = NumericalClass{R(-3)};
    X.mori = {{"line", {R(1)}}};
    X.eff_primes = {{"H", NumericalClass{R(1)}}};
    X.mov_eq_nef = true;
    finish(X);
    return X;
}

/**
 * @brief P(O + O(k) + O(n)) over P^1 with k <= n (basis H, F).
 * H^3 = k + n, H^2 F = 1; the minimal section sigma has H.sigma = 0.
 */
inline Threefold p2_bundle(long k, long n) {
    if (k > n) std::swap(k, n);
    Threefold X({"H", "F"});
    X.set_triple(0, 0, 0, R(k + n));
    X.set_triple(0, 0, 1, R(1));
    X.canonical = NumericalClass{R(-3), R(k + n - 2)};
    X.mori = {{"l", {R(1), R(0)}}, {"sigma", {R(0), R(1)}}};
    X.eff_primes = {{"H-" + std::to_string(n) + "F", NumericalClass{R(1), R(-n)}}, {"F", NumericalClass{R(0), R(1)}}};
    X.mov_eq_nef = (k == 0);
    finish(X);
    return X;
}

/**
 * @brief P(O + O(k)) over P^2 in the basis (xi, F), xi = H - kF the negative section.
 */
inline Threefold p1_bundle_over_p2(long k) {
    Threefold X({"xi", "F"});
    X.set_triple(0, 0, 0, R(k * k));
    X.set_triple(0, 0, 1, R(-k));
    X.set_triple(0, 1, 1, R(1));
    X.canonical = NumericalClass{R(-2), R(-3 - k)};
    X.mori = extremal_curves({{"l", {R(1), R(0)}}, {"lambda", {R(-k), R(1)}}}, 2);
    X.eff_primes = {{"xi", NumericalClass{R(1), R(0)}}, {"F", NumericalClass{R(0), R(1)}}};
    X.mov_eq_nef = true;
    finish(X);
    return X;
}

/**
 * @brief P^1-bundle over F_n with section H1 of normal class -ks-(kn+m)f
 * (basis H1, Fs, Ff).  `split` adds the second section H0 = H1 + kFs + (kn+m)Ff.
 */
inline Threefold p1_bundle_over_fn(long k, long n, long m, bool split) {
    Threefold X({"H1", "Fs", "Ff"});
    X.set_triple(0, 0, 0, R(n * k * k + 2 * k * m));
    X.set_triple(0, 0, 1, R(-m));
    X.set_triple(0, 0, 2, R(-k));
    X.set_triple(0, 1, 2, R(1));
    X.set_triple(0, 1, 1, R(-n));
    X.canonical = NumericalClass{R(-2), R(-2 - k), R(-2 - n - k * n - m)};
    std::vector<CurveFunctional> cand{{"l", {R(1), R(0), R(0)}},
                                      {"f_H1", {R(-k), R(1), R(0)}},
                                      {"s_H1", {R(-m), R(-n), R(1)}}};
    if (split) {
        cand.push_back({"s+nf_H1", {R(-(k * n + m)), R(0), R(1)}});
        cand.push_back({"f_H0", {R(0), R(1), R(0)}});
        cand.push_back({"s_H0", {R(0), R(-n), R(1)}});
        cand.push_back({"s+nf_H0", {R(0), R(0), R(1)}});
    }
    X.mori = extremal_curves(cand, 3);
    X.eff_primes = {{"H1", NumericalClass{R(1), R(0), R(0)}},
                    {"Fs", NumericalClass{R(0), R(1), R(0)}},
                    {"Ff", NumericalClass{R(0), R(0), R(1)}}};
    if (split && m < 0) X.eff_primes.push_back({"H0", NumericalClass{R(1), R(k), R(k * n + m)}});
    // The section curve of Fs is rigid (a flipping curve) exactly when Fs = F_|m| with m != 0,
    // n > 0 and the bundle splits; otherwise every extremal contraction is divisorial or of fibre type.
    X.mov_eq_nef = !split || m == 0 || n == 0;
    finish(X);
    return X;
}

/** @brief Divisor of bidegree (1,1) in P^2 x P^2 (basis H1, H2). */
inline Threefold flag_threefold() {
    Threefold X({"H1", "H2"});
    X.set_triple(0, 0, 1, R(1));
    X.set_triple(0, 1, 1, R(1));
    X.canonical = NumericalClass{R(-2), R(-2)};
    X.mori = {{"l1", {R(0), R(1)}}, {"l2", {R(1), R(0)}}};
    X.eff_primes = {{"H1", NumericalClass{R(1), R(0)}}, {"H2", NumericalClass{R(0), R(1)}}};
    X.mov_eq_nef = true;
    finish(X);
    return X;
}

/**
 * @brief Divisor of class F + E + H in F_1 x P^2 (basis E, F, H).
 * E^2 H = -1, E F H = 1, F H^2 = 1.
 */
inline Threefold divisor_in_f1_x_p2() {
    Threefold X({"E", "F", "H"});
    X.set_triple(0, 0, 2, R(-1));
    X.set_triple(0, 1, 2, R(1));
    X.set_triple(1, 2, 2, R(1));
    X.canonical = NumericalClass{R(-1), R(-2), R(-2)};
    X.mori = {{"l1", {R(1), R(0), R(0)}}, {"l2", {R(-1), R(1), R(0)}}, {"l3", {R(0), R(0), R(1)}}};
    X.eff_primes = {{"H-E", NumericalClass{R(-1), R(0), R(1)}},
                    {"E", NumericalClass{R(1), R(0), R(0)}},
                    {"F", NumericalClass{R(0), R(1), R(0)}}};
    X.mov_eq_nef = true;
    finish(X);
    return X;
}

/** @brief Blow-up of the quadric threefold in a point (basis D1 = E, D2 = strict transform of a tangent hyperplane section). */
inline Threefold blowup_quadric_point() {
    Threefold X({"D1", "D2"});
    X.set_triple(0, 0, 0, R(1));
    X.set_triple(0, 0, 1, R(-2));
    X.set_triple(0, 1, 1, R(4));
    X.set_triple(1, 1, 1, R(-6));
    X.canonical = NumericalClass{R(-4), R(-3)};
    X.mori = {{"l1", {R(-1), R(2)}}, {"l2", {R(1), R(-1)}}};
    X.eff_primes = {{"D1", NumericalClass{R(1), R(0)}}, {"D2", NumericalClass{R(0), R(1)}}};
    X.mov_eq_nef = true;
    finish(X);
    return X;
}

/**
 * @brief Blow-up of P(O + O + O(n)) over P^1 in a point off the negative
 * divisor (basis D1 = strict transform of the fibre through the point,
 * D2 = strict transform of H - nF, E = exceptional plane).
 */
inline Threefold blowup_p2_bundle_point(long n) {
    Threefold X({"D1", "D2", "E"});
    X.set_triple(0, 0, 0, R(-1));
    X.set_triple(0, 1, 1, R(1));
    X.set_triple(1, 1, 1, R(-2 * n));
    X.set_triple(2, 2, 2, R(1));
    X.set_triple(0, 2, 2, R(-1));
    X.set_triple(0, 0, 2, R(1));
    X.canonical = NumericalClass{R(-2 - 2 * n), R(-3), R(-2 * n)};
    X.mori = {{"f1", {R(1), R(0), R(-1)}}, {"f2", {R(-1), R(1), R(1)}}, {"f3", {R(1), R(-n), R(0)}}};
    X.eff_primes = {{"D1", NumericalClass{R(1), R(0), R(0)}},
                    {"D2", NumericalClass{R(0), R(1), R(0)}},
                    {"E", NumericalClass{R(0), R(0), R(1)}}};
    X.mov_eq_nef = true;
    finish(X);
    return X;
}

/**
 * @brief Quadric bundle X in |2H| on P(O+O+O+O(m)) over P^1, basis (E, F)
 * with E = H - mF: E^3 = -4m, E^2 F = 2.
 */
inline Threefold quadric_bundle(long m) {
    Threefold X({"E", "F"});
    X.set_triple(0, 0, 0, R(-4 * m));
    X.set_triple(0, 0, 1, R(2));
    X.canonical = NumericalClass{R(-2), R(-2 * m - 1)};
    X.mori = {{"l", {R(1), R(0)}}, {"s", {R(-m), R(1)}}};
    X.eff_primes = {{"E", NumericalClass{R(1), R(0)}}, {"F", NumericalClass{R(0), R(1)}}};
    X.mov_eq_nef = true;
    finish(X);
    return X;
}

}  // namespace kstab::families
