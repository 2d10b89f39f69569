#include "assouad/fullshift.hpp"

#include "assouad/error.hpp"

#include <algorithm>
#include <cmath>

namespace assouad {

namespace {

void check_scales(double r, double rho) {
    if (!(rho > 0.0) || !(rho < r)) {
        throw Error(ErrorKind::ScaleOrder, "need 0 < rho < r");
    }
}

// Points of the alphabet inside [x - r, x + r].
std::pair<std::size_t, std::size_t> ball(const RealAlphabet& alphabet, double x, double r) {
    const auto& p = alphabet.points;
    auto lo = std::lower_bound(p.begin(), p.end(), x - r);
    auto hi = std::upper_bound(lo, p.end(), x + r);
    return {static_cast<std::size_t>(lo - p.begin()), static_cast<std::size_t>(hi - p.begin())};
}

}  // namespace

RealAlphabet make_alphabet(std::vector<double> points, std::string label) {
    if (points.empty()) throw Error(ErrorKind::InvalidArgument, "alphabet must be nonempty");
    std::sort(points.begin(), points.end());
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!(points[i] >= 0.0 && points[i] <= 1.0)) {
            throw Error(ErrorKind::InvalidArgument, "alphabet points must lie in [0,1]");
        }
        if (i > 0 && points[i] == points[i - 1]) {
            throw Error(ErrorKind::InvalidArgument, "duplicate alphabet point");
        }
    }
    RealAlphabet out;
    out.label = std::move(label);
    double gap = 1.0;
    for (std::size_t i = 1; i < points.size(); ++i) gap = std::min(gap, points[i] - points[i - 1]);
    out.window_floor = points.size() > 1 ? gap : 1.0;
    out.points = std::move(points);
    return out;
}

RealAlphabet f_lambda_alphabet(double lambda, std::size_t n_max) {
    if (!(lambda > 0.0) || n_max == 0) {
        throw Error(ErrorKind::InvalidArgument, "f_lambda needs lambda > 0 and n_max >= 1");
    }
    std::vector<double> pts{0.0};
    for (std::size_t n = 1; n <= n_max; ++n) pts.push_back(std::pow(static_cast<double>(n), -lambda));
    auto out = make_alphabet(std::move(pts), "f_lambda");
    out.lambda = lambda;
    out.n_max = n_max;
    out.window_floor = std::pow(static_cast<double>(n_max + 1), -lambda);
    return out;
}

std::uint64_t interval_cover_count(const RealAlphabet& alphabet, double x, double r, double rho) {
    check_scales(r, rho);
    const auto [lo, hi] = ball(alphabet, x, r);
    const auto& p = alphabet.points;
    std::uint64_t count = 0;
    for (std::size_t i = lo; i < hi;) {
        const double left = p[i];
        ++count;
        while (i < hi && p[i] - left <= rho) ++i;
    }
    return count;
}

std::uint64_t interval_pack_count(const RealAlphabet& alphabet, double x, double r, double rho) {
    check_scales(r, rho);
    const auto [lo, hi] = ball(alphabet, x, r);
    const auto& p = alphabet.points;
    if (lo == hi) return 0;
    std::uint64_t count = 1;
    double last = p[lo];
    for (std::size_t i = lo + 1; i < hi; ++i) {
        if (p[i] - last > rho) {
            ++count;
            last = p[i];
        }
    }
    return count;
}

ProductBounds product_cover_bounds(const RealAlphabet& alphabet, double x, double r, double rho, std::size_t n) {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "N must be at least 1");
    return {pow_big(BigInt(interval_pack_count(alphabet, x, r, rho)), n),
            pow_big(BigInt(interval_cover_count(alphabet, x, r, rho)), n)};
}

std::vector<double> default_sinfty_r_list(const RealAlphabet& alphabet, double theta) {
    if (!(theta > 0.0 && theta < 1.0)) throw Error(ErrorKind::ThetaOutOfRange, "theta must lie in (0, 1)");
    const double stop = theta * std::log(alphabet.window_floor);
    std::vector<double> out;
    for (int i = 1;; ++i) {
        const double lr = -0.02 * i;
        if (lr < stop) break;
        out.push_back(std::exp(lr));
    }
    return out;
}

std::vector<SinftyPoint> sinfty_curve(const RealAlphabet& alphabet, double theta, const std::vector<double>& r_list,
                                      std::size_t n) {
    if (!(theta > 0.0 && theta < 1.0)) throw Error(ErrorKind::ThetaOutOfRange, "theta must lie in (0, 1)");
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "N must be at least 1");
    std::vector<SinftyPoint> out;
    out.reserve(r_list.size());
    for (double r : r_list) {
        if (!(r > 0.0 && r <= 1.0)) throw Error(ErrorKind::InvalidScale, "scale must lie in (0, 1]");
        SinftyPoint pt;
        pt.r = r;
        pt.rho = std::pow(r, 1.0 / theta);
        pt.log_ratio = std::log(r / pt.rho);
        pt.in_window = pt.rho >= alphabet.window_floor;
        std::uint64_t best_cover = 0;
        std::uint64_t best_pack = 0;
        for (double x : alphabet.points) {
            best_cover = std::max(best_cover, interval_cover_count(alphabet, x, r, pt.rho));
            best_pack = std::max(best_pack, interval_pack_count(alphabet, x, r, pt.rho));
        }
        const auto nn = static_cast<double>(n);
        pt.upper = static_cast<double>(log_big(pow_big(BigInt(best_cover), n))) / nn;
        pt.lower = static_cast<double>(log_big(pow_big(BigInt(best_pack), n))) / nn;
        out.push_back(pt);
    }
    return out;
}

double f_lambda_spectrum(double lambda, double theta) {
    return std::min(1.0 / ((1.0 + lambda) * (1.0 - theta)), 1.0);
}

}  // namespace assouad
