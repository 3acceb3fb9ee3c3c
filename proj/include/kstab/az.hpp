#pragma once

#include "kstab/arith.hpp"
#include "kstab/geom.hpp"
#include "kstab/invariants.hpp"
#include "kstab/surface.hpp"
#include "kstab/zariski.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace kstab {

/** @brief c0 + sum_i c_i * coeff_i, an affine function of the boundary coefficients. */
struct AffineForm {
    Rat constant;
    std::vector<Rat> linear;

    Rat operator()(const std::vector<Rat>& coeffs) const {
        Rat r = constant;
        for (std::size_t i = 0; i < linear.size() && i < coeffs.size(); ++i) r += linear[i] * coeffs[i];
        return r;
    }
};

/**
 * @brief A flag Y > Z: the surface Y (a prime divisor of X), its numerical
 * model, the restriction map, the curve Z on Y and its log discrepancy.
 */
struct CenterSpec {
    std::string label;
    std::string y_label;
    NumericalClass y_class;
    SurfaceModel surface;
    /** @brief restriction[i] . (ambient coords) = i-th surface coordinate of D|_Y. */
    std::vector<Vec> restriction;
    Vec z_class;
    AffineForm A_Z;
    /** @brief ord_Z(Gamma|_Y) for eff prime labels Gamma; missing labels mean 0. */
    std::vector<std::pair<std::string, Rat>> z_order;

    Vec restrict(const NumericalClass& c) const {
        Vec out;
        for (const auto& row : restriction) out.push_back(dot(row, c.coords));
        return out;
    }
    Rat order_of(const std::string& gamma) const {
        for (const auto& [l, v] : z_order)
            if (l == gamma) return v;
        return Rat(0);
    }
};

namespace detail {

/** @brief Affine function a0 + u a1. */
struct Lin {
    Rat a0;
    Rat a1;
};

}  // namespace detail

/** @brief Components of the refined invariant S(W^Y; Z). */
struct SWReport {
    Rat negative_term;   ///< 3/L^3 * integral (P^2.Y) ord_Z(N|_Y) du
    Rat volume_term;     ///< 3/L^3 * double integral of vol_Y(P|_Y - vZ)
    Rat value;           ///< sum of the two
    std::vector<Rat> u_breaks;
};

/**
 * @brief S(W^Y; Z) from the positive part P(u) of L - uY (u in [0, tau]) and
 * the volumes of P(u)|_Y - vZ on the surface Y.
 */
inline SWReport S_W_report(const LogPair& p, const CenterSpec& c) {
    if (!p.X.mov_eq_nef) throw DomainError("Mov = Nef hypothesis not certified for this variety");
    if (!is_log_fano(p)) throw DomainError("outside body of ample angles");
    if (c.restriction.size() != c.surface.rank() || c.z_class.size() != c.surface.rank())
        throw ConfigError("center " + c.label + ": restriction/Z rank does not match the surface");
    const NumericalClass L = p.polarization();
    const Rat L3 = cube(p.X, L);
    auto rd = decompose_ray(p.X, L, c.y_class);

    SWReport rep;
    Rat I1(0), I2(0);
    const auto walls = c.surface.pseff_walls();
    const auto vwalls = c.surface.volume_walls();
    for (const auto& seg : rd.segments) {
        Vec r0 = c.restrict(seg.positive.at0), r1 = c.restrict(seg.positive.slope);
        // v-candidates: 0 and every wall crossing along the inner ray, affine in u.
        std::vector<detail::Lin> vs{{Rat(0), Rat(0)}};
        std::vector<detail::Lin> zeros;
        auto consider = [&](const Vec& w) {
            Rat wz = dot(w, c.z_class);
            if (wz.is_zero())
                zeros.push_back({dot(w, r0), dot(w, r1)});
            else
                vs.push_back({dot(w, r0) / wz, dot(w, r1) / wz});
        };
        for (const auto& w : walls) consider(w);
        for (const auto& w : vwalls) consider(w);
        std::vector<Rat> br{seg.x0, seg.x1};
        auto add_root = [&](const Rat& a0, const Rat& a1) {
            if (a1.is_zero()) return;
            Rat r = -a0 / a1;
            if (seg.x0 < r && r < seg.x1) br.push_back(r);
        };
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t j = i + 1; j < vs.size(); ++j) add_root(vs[i].a0 - vs[j].a0, vs[i].a1 - vs[j].a1);
        for (const auto& z : zeros) add_root(z.a0, z.a1);
        std::sort(br.begin(), br.end());
        br.erase(std::unique(br.begin(), br.end()), br.end());
        for (std::size_t i = 0; i + 1 < br.size(); ++i) rep.u_breaks.push_back(br[i]);

        auto inner = [&](const Rat& u) {
            Vec cu(r0.size());
            for (std::size_t k = 0; k < cu.size(); ++k) cu[k] = r0[k] + u * r1[k];
            return surface_ray_integral(c.surface, cu, c.z_class);
        };
        auto first = [&](const Rat& u) {
            Rat ord(0);
            for (const auto& n : seg.negative) ord += n(u) * c.order_of(n.label);
            if (ord.is_zero()) return Rat(0);
            NumericalClass P = seg.positive(u);
            return triple_product(p.X, P, P, c.y_class) * ord;
        };
        I2 += integrate_piecewise_cubic<Rat>(inner, br);
        I1 += integrate_piecewise_cubic<Rat>(first, br);
    }
    rep.u_breaks.push_back(rd.tau);
    rep.negative_term = Rat(3) * I1 / L3;
    rep.volume_term = Rat(3) * I2 / L3;
    rep.value = rep.negative_term + rep.volume_term;
    return rep;
}

inline Rat S_W(const LogPair& p, const CenterSpec& c) { return S_W_report(p, c).value; }

/** @brief The two quantities whose minimum bounds delta_Z from below. */
struct DeltaBound {
    Rat divisorial;   ///< A_X(Y) / S_X(Y)
    Rat refined;      ///< A_Z / S(W^Y; Z)
    Rat bound;        ///< min of the two
};

inline DeltaBound delta_Z_bound(const LogPair& p, const CenterSpec& c) {
    auto rep = beta_prime(p, c.y_class, c.y_label);
    Rat sw = S_W(p, c);
    if (rep.S_prime.sign() <= 0 || sw.sign() <= 0) throw DomainError("degenerate expected vanishing order");
    DeltaBound d;
    d.divisorial = rep.A * rep.L_cubed / rep.S_prime;
    d.refined = c.A_Z(p.coeffs) / sw;
    d.bound = std::min(d.divisorial, d.refined);
    return d;
}

enum class AzStatus { unstable, undecided, semistable_certified, polystable_certified };

inline std::string to_string(AzStatus s) {
    switch (s) {
        case AzStatus::unstable: return "unstable";
        case AzStatus::undecided: return "undecided";
        case AzStatus::semistable_certified: return "semistable_certified";
        case AzStatus::polystable_certified: return "polystable_certified";
    }
    return "?";
}

/**
 * @brief Combine beta' over the test divisors with delta_Z bounds over the
 * invariant centers: strict inequalities certify polystability, non-strict
 * ones semistability, a negative beta' destabilizes.
 */
inline AzStatus polystable_verdict(const LogPair& p, const std::vector<LabeledClass>& tests,
                                   const std::vector<CenterSpec>& centers) {
    if (centers.empty()) throw DomainError("polystable_verdict: no invariant centers recorded for this case");
    auto dv = divisorial_verdict(p, tests);
    if (dv.overall == DivisorialStatus::divisorially_unstable) return AzStatus::unstable;
    bool strict = dv.overall == DivisorialStatus::divisorially_stable;
    for (const auto& c : centers) {
        Rat b = delta_Z_bound(p, c).bound;
        if (b < Rat(1)) return AzStatus::undecided;
        if (b == Rat(1)) strict = false;
    }
    return strict ? AzStatus::polystable_certified : AzStatus::semistable_certified;
}

}  // namespace kstab
