#include "hyperband/render.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <fmt/format.h>

namespace hyperband {

complex cayley(const HPoint& z) {
    const complex w = z.z();
    return (w - complex(0.0, 1.0)) / (w + complex(0.0, 1.0));
}

namespace {

// Geodesics whose orthogonal circle is larger than this are drawn as chords.
constexpr double kMaxArcRadius = 1e4;

struct SvgPoint {
    double x;
    double y;
};

// SVG's y axis points down; flip so the picture keeps the disk orientation.
SvgPoint to_svg(complex w) {
    return {w.real(), -w.imag()};
}

std::string geodesic_segment(SvgPoint p, SvgPoint q) {
    // Circle orthogonal to the unit circle through p and q: c·p = (|p|²+1)/2, c·q = (|q|²+1)/2.
    const double det = p.x * q.y - p.y * q.x;
    if (std::abs(det) > 1e-12) {
        const double rp = 0.5 * (p.x * p.x + p.y * p.y + 1.0);
        const double rq = 0.5 * (q.x * q.x + q.y * q.y + 1.0);
        const double cx = (rp * q.y - rq * p.y) / det;
        const double cy = (p.x * rq - q.x * rp) / det;
        const double r2 = cx * cx + cy * cy - 1.0;
        if (r2 > 0.0 && std::sqrt(r2) <= kMaxArcRadius) {
            const double r = std::sqrt(r2);
            const double cross = (p.x - cx) * (q.y - cy) - (p.y - cy) * (q.x - cx);
            return fmt::format(" A {:.6f} {:.6f} 0 0 {} {:.6f} {:.6f}", r, r, cross > 0.0 ? 1 : 0, q.x, q.y);
        }
    }
    return fmt::format(" L {:.6f} {:.6f}", q.x, q.y);
}

}  // namespace

std::string tiling_svg(const FundamentalDomain& dom, const std::vector<Tile>& tiles) {
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out +=
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
        "viewBox=\"-1.05 -1.05 2.1 2.1\" width=\"800\" height=\"800\">\n";
    out += "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"black\" stroke-width=\"0.004\"/>\n";
    out += "<g fill=\"none\" stroke=\"#1f4e8c\" stroke-width=\"0.002\">\n";
    for (const Tile& tile : tiles) {
        std::vector<SvgPoint> pts;
        pts.reserve(dom.vertices.size());
        for (const HPoint& v : dom.vertices) pts.push_back(to_svg(cayley(moebius_act(tile.element, v))));
        std::string d = fmt::format("M {:.6f} {:.6f}", pts.back().x, pts.back().y);
        SvgPoint prev = pts.back();
        for (const SvgPoint& p : pts) {
            d += geodesic_segment(prev, p);
            prev = p;
        }
        out += "<path d=\"" + d + " Z\"/>\n";
    }
    out += "</g>\n</svg>\n";
    return out;
}

std::string butterfly_csv(const std::vector<SpectrumSample>& samples) {
    std::vector<std::pair<double, double>> rows;
    for (const auto& s : samples) {
        for (double e : s.eigenvalues) rows.emplace_back(s.phi, e);
    }
    std::sort(rows.begin(), rows.end());
    std::string out = "phi,energy\n";
    out.reserve(out.size() + rows.size() * 32);
    for (const auto& [phi, e] : rows) out += fmt::format("{:.10g},{:.12g}\n", phi, e);
    return out;
}

}  // namespace hyperband
