#pragma once

#include "kstab/arith.hpp"
#include "kstab/az.hpp"
#include "kstab/catalog.hpp"
#include "kstab/invariants.hpp"
#include "kstab/surface.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace kstab {

/** @brief Classification of one point of coefficient space. */
enum class PointStatus { not_log_fano, unstable, semistable_certified, polystable_certified, undecided };

inline std::string to_string(PointStatus s) {
    switch (s) {
        case PointStatus::not_log_fano: return "not_log_fano";
        case PointStatus::unstable: return "unstable";
        case PointStatus::semistable_certified: return "semistable_certified";
        case PointStatus::polystable_certified: return "polystable_certified";
        case PointStatus::undecided: return "undecided";
    }
    return "?";
}

/** @brief Semistable or polystable certified. */
inline bool is_semistable(PointStatus s) {
    return s == PointStatus::semistable_certified || s == PointStatus::polystable_certified;
}

struct ScanPoint {
    std::vector<Rat> coeffs;
    PointStatus status = PointStatus::undecided;
};

struct RegionScan {
    std::string case_id;
    Rat grid_step;
    std::vector<ScanPoint> points;

    std::size_t count(PointStatus s) const {
        return static_cast<std::size_t>(
            std::count_if(points.begin(), points.end(), [&](const ScanPoint& p) { return p.status == s; }));
    }
};

/**
 * @brief Classify one coefficient vector: log Fano test, then the product rule
 * for product cases, the Abban-Zhuang verdict for cases with invariant
 * centers, and the divisorial verdict otherwise (unstable or undecided).
 */
inline PointStatus classify(const CatalogCase& c, const std::vector<Rat>& coeffs) {
    LogPair p = c.pair(coeffs);
    if (!is_log_fano(p)) return PointStatus::not_log_fano;
    if (c.is_product()) {
        std::vector<Verdict> vs;
        for (const auto& f : c.factors(coeffs)) vs.push_back(factor_verdict(f));
        switch (product_rule(vs)) {
            case Verdict::unstable: return PointStatus::unstable;
            case Verdict::semistable: return PointStatus::semistable_certified;
            case Verdict::polystable: return PointStatus::polystable_certified;
        }
    }
    if (!c.centers.empty()) {
        switch (polystable_verdict(p, c.tests, c.centers)) {
            case AzStatus::unstable: return PointStatus::unstable;
            case AzStatus::undecided: return PointStatus::undecided;
            case AzStatus::semistable_certified: return PointStatus::semistable_certified;
            case AzStatus::polystable_certified: return PointStatus::polystable_certified;
        }
    }
    auto dv = divisorial_verdict(p, c.tests);
    return dv.overall == DivisorialStatus::divisorially_unstable ? PointStatus::unstable : PointStatus::undecided;
}

/** @brief Grid values 0, step, 2 step, ... below 1. */
inline std::vector<Rat> grid_values(const Rat& step) {
    std::vector<Rat> out;
    for (Rat x(0); x < Rat(1); x += step) out.push_back(x);
    return out;
}

/**
 * @brief Classify every point of the grid step*Z^dim inside [0,1)^dim.
 *
 * Points are ordered lexicographically (a outermost); evaluation runs on
 * `threads` workers (0 = hardware concurrency) and the result does not depend
 * on the thread count.
 */
inline RegionScan scan(const CatalogCase& c, const Rat& step, unsigned threads = 0) {
    if (step.sign() <= 0 || step > Rat(1, 4)) throw DomainError("scan step must lie in (0, 1/4]");
    RegionScan out{c.id, step, {}};
    const auto vals = grid_values(step);
    std::vector<std::vector<Rat>> coords{{}};
    for (std::size_t d = 0; d < c.dim(); ++d) {
        std::vector<std::vector<Rat>> next;
        for (const auto& pre : coords)
            for (const auto& v : vals) {
                auto q = pre;
                q.push_back(v);
                next.push_back(std::move(q));
            }
        coords = std::move(next);
    }
    out.points.resize(coords.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, coords.size())));
    std::vector<std::string> errors(threads);
    auto work = [&](unsigned t) {
        try {
            for (std::size_t i = t; i < coords.size(); i += threads)
                out.points[i] = ScanPoint{coords[i], classify(c, coords[i])};
        } catch (const std::exception& e) {
            errors[t] = e.what();
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    for (const auto& e : errors)
        if (!e.empty()) throw DomainError(c.id + ": " + e);
    return out;
}

/** @brief Grid points where the scan and a closed-form region disagree. */
struct RegionDiscrepancy {
    std::vector<ScanPoint> points;
    std::size_t compared = 0;
    bool empty() const { return points.empty(); }
};

/**
 * @brief Compare certified (semi)stability with a closed-form region over the
 * log Fano points of a two-coefficient scan.
 */
inline RegionDiscrepancy compare_region(const RegionScan& s, const std::function<bool(const Rat&, const Rat&)>& region) {
    RegionDiscrepancy d;
    for (const auto& p : s.points) {
        if (p.status == PointStatus::not_log_fano) continue;
        if (p.coeffs.size() != 2) throw DomainError("compare_region needs a two-coefficient scan");
        ++d.compared;
        if (is_semistable(p.status) != region(p.coeffs[0], p.coeffs[1])) d.points.push_back(p);
    }
    return d;
}

/** @brief CSV with header a,b[,c],status; rationals as p/q. */
inline std::string to_csv(const RegionScan& s) {
    static const char* names[] = {"a", "b", "c"};
    std::ostringstream os;
    std::size_t dim = s.points.empty() ? 0 : s.points.front().coeffs.size();
    for (std::size_t i = 0; i < dim; ++i) os << names[i] << ',';
    os << "status\n";
    for (const auto& p : s.points) {
        for (const auto& x : p.coeffs) os << x.str() << ',';
        os << to_string(p.status) << '\n';
    }
    return os.str();
}

inline std::string status_color(PointStatus s) {
    switch (s) {
        case PointStatus::not_log_fano: return "#d9d9d9";
        case PointStatus::unstable: return "#e6550d";
        case PointStatus::semistable_certified: return "#74c476";
        case PointStatus::polystable_certified: return "#238b45";
        case PointStatus::undecided: return "#fdd0a2";
    }
    return "#000000";
}

/**
 * @brief SVG 1.1 region map: one unit-square panel per value of the third
 * coefficient (a single panel for two coefficients), one rect per grid cell,
 * and the closed-form region boundary (if given) as an overlay path.
 */
inline std::string to_svg(const RegionScan& s, const std::function<bool(const Rat&, const Rat&)>& region = nullptr) {
    const double px = 400.0, margin = 40.0, legend = 120.0;
    std::size_t dim = s.points.empty() ? 2 : s.points.front().coeffs.size();
    std::vector<Rat> slices{Rat(0)};
    if (dim == 3) slices = grid_values(s.grid_step);
    const double cell = px * s.grid_step.to_double();
    const std::size_t cols = std::min<std::size_t>(slices.size(), 5);
    const std::size_t rows = (slices.size() + cols - 1) / cols;
    const double pw = px + 2 * margin;
    const double W = pw * static_cast<double>(cols) + legend, H = pw * static_cast<double>(rows);

    std::ostringstream os;
    os << std::fixed << std::setprecision(3);
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
    os << "<title>" << s.case_id << " step " << s.grid_step.str() << "</title>\n";
    for (std::size_t k = 0; k < slices.size(); ++k) {
        double ox = margin + pw * static_cast<double>(k % cols), oy = margin + pw * static_cast<double>(k / cols);
        os << "<g>\n";
        for (const auto& p : s.points) {
            if (dim == 3 && p.coeffs[2] != slices[k]) continue;
            double x = ox + px * p.coeffs[0].to_double();
            double y = oy + px - px * p.coeffs[1].to_double() - cell;
            os << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell << "\" height=\"" << cell
               << "\" fill=\"" << status_color(p.status) << "\"/>\n";
        }
        // Axes and labels.
        os << "<rect x=\"" << ox << "\" y=\"" << oy << "\" width=\"" << px << "\" height=\"" << px
           << "\" fill=\"none\" stroke=\"#000000\"/>\n";
        os << "<text x=\"" << ox + px / 2 << "\" y=\"" << oy + px + 28 << "\" font-size=\"14\">a</text>\n";
        os << "<text x=\"" << ox - 28 << "\" y=\"" << oy + px / 2 << "\" font-size=\"14\">b</text>\n";
        os << "<text x=\"" << ox - 8 << "\" y=\"" << oy + px + 14 << "\" font-size=\"10\">0</text>\n";
        os << "<text x=\"" << ox + px - 4 << "\" y=\"" << oy + px + 14 << "\" font-size=\"10\">1</text>\n";
        os << "<text x=\"" << ox - 12 << "\" y=\"" << oy + 4 << "\" font-size=\"10\">1</text>\n";
        if (dim == 3)
            os << "<text x=\"" << ox << "\" y=\"" << oy - 8 << "\" font-size=\"12\">c = " << slices[k].str() << "</text>\n";
        if (region && dim == 2) {
            // Boundary of the closed form: edges between fine cells where the predicate changes.
            const int N = 200;
            std::vector<char> in((N + 1) * (N + 1));
            for (int i = 0; i <= N; ++i)
                for (int j = 0; j <= N; ++j) in[i * (N + 1) + j] = region(Rat(i, N), Rat(j, N)) ? 1 : 0;
            const double h = px / N;
            os << "<path fill=\"none\" stroke=\"#08306b\" stroke-width=\"1.5\" d=\"";
            for (int i = 0; i <= N; ++i)
                for (int j = 0; j <= N; ++j) {
                    double x = ox + h * i, y = oy + px - h * j;
                    if (i < N && in[i * (N + 1) + j] != in[(i + 1) * (N + 1) + j])
                        os << 'M' << x + h / 2 << ' ' << y - h / 2 << 'L' << x + h / 2 << ' ' << y + h / 2;
                    if (j < N && in[i * (N + 1) + j] != in[i * (N + 1) + j + 1])
                        os << 'M' << x - h / 2 << ' ' << y - h / 2 << 'L' << x + h / 2 << ' ' << y - h / 2;
                }
            os << "\"/>\n";
        }
        os << "</g>\n";
    }
    const PointStatus all[] = {PointStatus::not_log_fano, PointStatus::unstable, PointStatus::undecided,
                               PointStatus::semistable_certified, PointStatus::polystable_certified};
    double lx = W - legend + 4;
    for (int i = 0; i < 5; ++i) {
        double ly = margin + 20.0 * i;
        os << "<rect x=\"" << lx << "\" y=\"" << ly << "\" width=\"12\" height=\"12\" fill=\"" << status_color(all[i])
           << "\"/>\n";
        os << "<text x=\"" << lx + 16 << "\" y=\"" << ly + 10 << "\" font-size=\"9\">" << to_string(all[i]) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace kstab
