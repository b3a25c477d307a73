#include "pdextremal/piecewise_linear.hpp"

#include "pdextremal/errors.hpp"

#include <algorithm>

namespace pdextremal {

const char* to_string(Side side) {
    switch (side) {
        case Side::left: return "left";
        case Side::point: return "point";
        case Side::right: return "right";
    }
    return "?";
}

PiecewiseLinearFn::PiecewiseLinearFn(std::vector<Knot> knots) : knots_(std::move(knots)) {
    canonicalize();
}

PiecewiseLinearFn PiecewiseLinearFn::from_knots(std::vector<Knot> knots) {
    for (std::size_t i = 1; i < knots.size(); ++i) {
        if (!(knots[i - 1].x < knots[i].x)) throw DomainError("knot abscissae must be strictly increasing");
    }
    if (!knots.empty() && (knots.front().left.sign() != 0 || knots.back().right.sign() != 0)) {
        throw DomainError("piecewise-linear function must vanish outside its first and last knot");
    }
    return PiecewiseLinearFn(std::move(knots));
}

namespace {

Rational slope_between(const Knot& a, const Knot& b) { return (b.left - a.right) / (b.x - a.x); }

bool continuous(const Knot& k) { return k.left == k.value && k.value == k.right; }

}  // namespace

void PiecewiseLinearFn::canonicalize() {
    bool changed = true;
    while (changed && !knots_.empty()) {
        changed = false;
        std::vector<Knot> out;
        out.reserve(knots_.size());
        const std::size_t n = knots_.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Knot& k = knots_[i];
            bool drop = false;
            const bool first = out.empty();
            const bool last = i + 1 == n;
            if (continuous(k)) {
                if (first && last) {
                    drop = k.value.sign() == 0;
                } else if (first) {
                    drop = k.value.sign() == 0 && knots_[i + 1].left.sign() == 0;
                } else if (last) {
                    drop = k.value.sign() == 0 && out.back().right.sign() == 0;
                } else {
                    drop = slope_between(out.back(), k) == slope_between(k, knots_[i + 1]);
                }
            }
            if (drop) {
                changed = true;
            } else {
                out.push_back(k);
            }
        }
        knots_ = std::move(out);
    }

    xd_.clear(); leftd_.clear(); valued_.clear(); rightd_.clear();
    for (const Knot& k : knots_) {
        xd_.push_back(k.x.to_double());
        leftd_.push_back(k.left.to_double());
        valued_.push_back(k.value.to_double());
        rightd_.push_back(k.right.to_double());
    }
}

Segment PiecewiseLinearFn::segment(std::size_t i) const {
    const Knot& a = knots_.at(i);
    const Knot& b = knots_.at(i + 1);
    const Rational slope = slope_between(a, b);
    return {a.x, b.x, slope, a.right - slope * a.x};
}

std::optional<std::pair<Rational, Rational>> PiecewiseLinearFn::support() const {
    if (knots_.empty()) return std::nullopt;
    return std::make_pair(knots_.front().x, knots_.back().x);
}

Rational PiecewiseLinearFn::at(const Rational& x, Side side) const {
    const auto it = std::lower_bound(knots_.begin(), knots_.end(), x,
                                     [](const Knot& k, const Rational& v) { return k.x < v; });
    if (it != knots_.end() && it->x == x) {
        switch (side) {
            case Side::left: return it->left;
            case Side::point: return it->value;
            case Side::right: return it->right;
        }
    }
    if (it == knots_.begin() || it == knots_.end()) return Rational(0);
    const Knot& a = *(it - 1);
    const Knot& b = *it;
    return a.right + (b.left - a.right) * (x - a.x) / (b.x - a.x);
}

double PiecewiseLinearFn::eval(double x) const {
    const auto it = std::lower_bound(xd_.begin(), xd_.end(), x);
    if (it != xd_.end() && *it == x) return valued_[static_cast<std::size_t>(it - xd_.begin())];
    if (it == xd_.begin() || it == xd_.end()) return 0.0;
    const auto i = static_cast<std::size_t>(it - xd_.begin());
    const double t = (x - xd_[i - 1]) / (xd_[i] - xd_[i - 1]);
    return rightd_[i - 1] + (leftd_[i] - rightd_[i - 1]) * t;
}

PiecewiseLinearFn PiecewiseLinearFn::shifted(const Rational& t) const {
    std::vector<Knot> out = knots_;
    for (Knot& k : out) k.x += t;
    return PiecewiseLinearFn(std::move(out));
}

PiecewiseLinearFn PiecewiseLinearFn::scaled(const Rational& c) const {
    if (c.sign() == 0) return {};
    std::vector<Knot> out = knots_;
    for (Knot& k : out) {
        k.left *= c;
        k.value *= c;
        k.right *= c;
    }
    return PiecewiseLinearFn(std::move(out));
}

PiecewiseLinearFn PiecewiseLinearFn::reflected() const {
    std::vector<Knot> out;
    out.reserve(knots_.size());
    for (auto it = knots_.rbegin(); it != knots_.rend(); ++it) {
        out.push_back({-it->x, it->right, it->value, it->left});
    }
    return PiecewiseLinearFn(std::move(out));
}

PiecewiseLinearFn pl_indicator(const Rational& lo, const Rational& hi) {
    if (!(lo < hi)) throw InvalidIntervalError("indicator needs lo < hi, got [" + lo.str() + ", " + hi.str() + "]");
    return PiecewiseLinearFn::from_knots({{lo, 0, 1, 1}, {hi, 1, 1, 0}});
}

PiecewiseLinearFn pl_triangle(const Rational& center, const Rational& width) {
    if (width.sign() <= 0) throw DomainError("triangle width must be positive");
    return PiecewiseLinearFn::from_knots({{center - width, 0, 0, 0}, {center, 1, 1, 1}, {center + width, 0, 0, 0}});
}

PiecewiseLinearFn pl_combine(std::span<const std::pair<Rational, PiecewiseLinearFn>> terms) {
    std::vector<Rational> xs;
    for (const auto& [c, f] : terms) {
        if (c.sign() == 0) continue;
        for (const Knot& k : f.knots()) xs.push_back(k.x);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    std::vector<Knot> knots;
    knots.reserve(xs.size());
    for (const Rational& x : xs) {
        Knot k{x, 0, 0, 0};
        for (const auto& [c, f] : terms) {
            if (c.sign() == 0) continue;
            k.left += c * f.left_limit(x);
            k.value += c * f(x);
            k.right += c * f.right_limit(x);
        }
        knots.push_back(std::move(k));
    }
    return PiecewiseLinearFn::from_knots(std::move(knots));
}

PiecewiseLinearFn pl_combine(std::initializer_list<std::pair<Rational, PiecewiseLinearFn>> terms) {
    return pl_combine(std::span<const std::pair<Rational, PiecewiseLinearFn>>(terms.begin(), terms.size()));
}

PiecewiseLinearFn convolve_indicators(const Rational& lo1, const Rational& hi1,
                                      const Rational& lo2, const Rational& hi2) {
    if (!(lo1 < hi1) || !(lo2 < hi2)) throw InvalidIntervalError("convolution of empty intervals");
    const Rational short_len = min(hi1 - lo1, hi2 - lo2);
    const Rational long_len = max(hi1 - lo1, hi2 - lo2);
    const Rational start = lo1 + lo2;
    std::vector<Knot> knots{{start, 0, 0, 0}, {start + short_len, short_len, short_len, short_len}};
    if (long_len > short_len) knots.push_back({start + long_len, short_len, short_len, short_len});
    knots.push_back({hi1 + hi2, 0, 0, 0});
    return PiecewiseLinearFn::from_knots(std::move(knots));
}

PiecewiseLinearFn convolve_steps(std::span<const WeightedInterval> u, std::span<const WeightedInterval> v) {
    std::vector<std::pair<Rational, PiecewiseLinearFn>> terms;
    for (const auto& a : u) {
        for (const auto& b : v) {
            terms.emplace_back(a.weight * b.weight, convolve_indicators(a.lo, a.hi, b.lo, b.hi));
        }
    }
    return pl_combine(terms);
}

LeResult pl_le(const PiecewiseLinearFn& f, const PiecewiseLinearFn& g, Comparison mode) {
    const PiecewiseLinearFn gap = pl_combine({{Rational(1), g}, {Rational(-1), f}});
    for (const Knot& k : gap.knots()) {
        if (k.left.sign() < 0) return {false, LeWitness{k.x, Side::left}};
        if (mode == Comparison::everywhere && k.value.sign() < 0) return {false, LeWitness{k.x, Side::point}};
        if (k.right.sign() < 0) return {false, LeWitness{k.x, Side::right}};
    }
    return {};
}

Rational integrate_pl(const PiecewiseLinearFn& f, const std::optional<Rational>& lo,
                      const std::optional<Rational>& hi) {
    if (lo && hi && *hi < *lo) throw InvalidIntervalError("integration bounds reversed");
    Rational total;
    for (std::size_t i = 0; i < f.segment_count(); ++i) {
        const Segment s = f.segment(i);
        const Rational a = lo ? max(s.lo, *lo) : s.lo;
        const Rational b = hi ? min(s.hi, *hi) : s.hi;
        if (!(a < b)) continue;
        const Rational ya = s.slope * a + s.intercept;
        const Rational yb = s.slope * b + s.intercept;
        total += (ya + yb) * (b - a) / Rational(2);
    }
    return total;
}

}  // namespace pdextremal
