#include "divsmooth/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "divsmooth/error.hpp"

namespace divsmooth {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool near(double x, double y, double rel)
{
    if (std::isinf(x) || std::isinf(y)) return x == y;
    return std::abs(x - y) <= rel * std::max({1.0, std::abs(x), std::abs(y)});
}

std::vector<double> prefix_sums(std::span<const double> x)
{
    std::vector<double> s(x.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s[i] = (acc += x[i]);
    return s;
}

/// Largest l in [1, d] maximizing (P_l - eps) / l.
std::pair<double, std::size_t> upper_level(const std::vector<double>& ps, double eps)
{
    double best = -kInf;
    for (std::size_t l = 1; l <= ps.size(); ++l) best = std::max(best, (ps[l - 1] - eps) / static_cast<double>(l));
    std::size_t k = 1;
    for (std::size_t l = ps.size(); l >= 1; --l) {
        if ((ps[l - 1] - eps) / static_cast<double>(l) >= best - kOrderSlack) {
            k = l;
            break;
        }
    }
    return {best, k};
}

/// Smallest l in [1, d-1] minimizing (mass - P_l + eps) / (d - l).
std::pair<double, std::size_t> lower_level(const std::vector<double>& ps, double mass, double eps)
{
    const std::size_t d = ps.size();
    double best = kInf;
    for (std::size_t l = 1; l < d; ++l) best = std::min(best, (mass - ps[l - 1] + eps) / static_cast<double>(d - l));
    std::size_t m = d - 1;
    for (std::size_t l = 1; l < d; ++l) {
        if ((mass - ps[l - 1] + eps) / static_cast<double>(d - l) <= best + kOrderSlack) {
            m = l;
            break;
        }
    }
    return {best, m};
}

}  // namespace

void require_sorted(const ProbVec& p, const char* op)
{
    if (!is_sorted_desc(p.span())) throw Error(Errc::NotSorted, std::string(op) + ": input must be sorted non-increasing");
}

void require_eps(double eps, const char* op)
{
    if (!(eps >= 0.0 && eps <= 1.0)) throw Error(Errc::InvalidArgument, std::string(op) + ": eps must lie in [0,1]");
}

ClipParams clip_params(std::span<const double> sorted, double eps)
{
    const std::size_t d = sorted.size();
    if (d == 1) return ClipParams{1.0, 1.0, 0, 0};
    const std::vector<double> ps = prefix_sums(sorted);
    const auto [a, k] = upper_level(ps, eps);
    const auto [b, m] = lower_level(ps, 1.0, eps);
    return ClipParams{a, b, k, m};
}

Flattest flattest(const ProbVec& p, double eps)
{
    require_sorted(p, "flattest");
    require_eps(eps, "flattest");
    const std::size_t d = p.dim();
    const ProbVec u = ProbVec::uniform(d);
    if (tv_distance(p, u) <= eps) {
        const double lvl = 1.0 / static_cast<double>(d);
        return Flattest{u, ClipParams{lvl, lvl, 0, 0}, true};
    }
    const ClipParams cp = clip_params(p.span(), eps);
    if (cp.k > cp.m) throw Error(Errc::InfeasibleClip, "flattest: k > m outside the degenerate case");
    std::vector<double> x(d);
    for (std::size_t i = 0; i < d; ++i) x[i] = std::max(cp.b, std::min(cp.a, p[i]));
    return Flattest{ProbVec::validate(x), cp, false};
}

ProbVec steepest(const ProbVec& p, double eps)
{
    require_sorted(p, "steepest");
    require_eps(eps, "steepest");
    const std::size_t d = p.dim();
    if (1.0 - p[0] <= eps) return ProbVec::e1(d);
    const std::vector<double> ps = prefix_sums(p.span());
    std::size_t k = 0;
    for (std::size_t l = 1; l <= d; ++l)
        if (ps[l - 1] <= 1.0 - eps + kOrderSlack) k = l;
    if (k >= d) return p;
    std::vector<double> x(d, 0.0);
    x[0] = p[0] + eps;
    for (std::size_t i = 1; i < k; ++i) x[i] = p[i];
    x[k] = std::max(0.0, 1.0 - eps - ps[k - 1]);
    return ProbVec::validate(x);
}

DmaxCutoffs dmax_cutoffs(const PairOrdering& pair, double eps)
{
    require_eps(eps, "dmax_cutoffs");
    const ProbVec& p = pair.p;
    const ProbVec& q = pair.q;
    double m_inf = 0.0;
    std::vector<std::size_t> fin;  // finite-ratio indices, ratio descending
    for (std::size_t x : pair.perm) {
        if (q[x] > 0.0) fin.push_back(x);
        else m_inf += p[x];
    }
    const std::size_t n = fin.size();

    ExtReal a;
    if (m_inf > eps) {
        a = ExtReal::pos_inf();
    } else {
        double pj = m_inf, qj = 0.0, t = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            pj += p[fin[j]];
            qj += q[fin[j]];
            const double lower = j + 1 < n ? pair.ratios[fin[j + 1]] : 0.0;
            if (pj - lower * qj >= eps) {
                t = (pj - eps) / qj;
                break;
            }
        }
        a = ExtReal(std::max(t, 0.0));
    }

    double sj = 0.0, tj = 0.0, b = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t x = fin[n - 1 - j];
        sj += p[x];
        tj += q[x];
        const double upper = j + 1 < n ? pair.ratios[fin[n - 2 - j]] : kInf;
        if (upper == kInf || upper * tj - sj >= eps) {
            b = (sj + eps) / tj;
            break;
        }
    }
    return DmaxCutoffs{a, ExtReal(b)};
}

DmaxScan dmax_cutoffs_scan(const PairOrdering& pair, double eps)
{
    require_eps(eps, "dmax_cutoffs_scan");
    const ProbVec& p = pair.p;
    const ProbVec& q = pair.q;
    const std::size_t d = p.dim();
    std::vector<double> pp(d), qq(d);
    for (std::size_t i = 0; i < d; ++i) {
        pp[i] = p[pair.perm[i]];
        qq[i] = q[pair.perm[i]];
    }
    const std::vector<double> P = prefix_sums(pp), Q = prefix_sums(qq);

    auto a_term = [&](std::size_t m) {
        if (Q[m - 1] > 0.0) return (P[m - 1] - eps) / Q[m - 1];
        return P[m - 1] > eps ? kInf : -kInf;
    };
    double a = -kInf;
    for (std::size_t m = 1; m <= d; ++m) a = std::max(a, a_term(m));
    std::size_t k = 0;
    for (std::size_t m = d; m >= 1; --m) {
        const double v = a_term(m);
        if (v == a || (std::isfinite(a) && v >= a - kOrderSlack * std::max(1.0, std::abs(a)))) {
            k = m;
            break;
        }
    }

    // Suffix sums starting at 1-based position l.
    std::vector<double> S(d + 1, 0.0), T(d + 1, 0.0);
    for (std::size_t l = d; l >= 1; --l) {
        S[l - 1] = S[l] + pp[l - 1];
        T[l - 1] = T[l] + qq[l - 1];
    }
    auto b_term = [&](std::size_t l) { return T[l - 1] > 0.0 ? (S[l - 1] + eps) / T[l - 1] : kInf; };
    double b = kInf;
    for (std::size_t l = 1; l <= d; ++l) b = std::min(b, b_term(l));
    std::size_t m = 0;
    for (std::size_t l = 1; l <= d; ++l) {
        if (b_term(l) <= b + kOrderSlack * std::max(1.0, std::abs(b))) {
            m = l - 1;
            break;
        }
    }
    return DmaxScan{ExtReal(std::max(a, 0.0)), ExtReal(b), k, m};
}

RelativeClip relative_clip(const ProbVec& p, const ProbVec& q, double eps)
{
    require_eps(eps, "relative_clip");
    if (p.dim() != q.dim()) throw Error(Errc::DimensionMismatch, "relative_clip: dimension mismatch");
    if (eps >= tv_distance(p, q)) return RelativeClip{q, ExtReal(1.0), ExtReal(1.0), 0, 0, true, false};

    const PairOrdering pair = ratio_order(p, q);
    const DmaxCutoffs cut = dmax_cutoffs(pair, eps);
    const DmaxScan scan = dmax_cutoffs_scan(pair, eps);
    if (!near(cut.a.value(), scan.a.value(), 1e-7) || !near(cut.b.value(), scan.b.value(), 1e-7))
        throw Error(Errc::InfeasibleClip, "relative_clip: implicit and scanned cutoffs disagree");

    const double a = cut.a.value(), b = cut.b.value();
    if (a < b - 1e-9 * std::max(1.0, b)) throw Error(Errc::InfeasibleClip, "relative_clip: upper cutoff below lower cutoff");
    const bool boundary = std::isfinite(a) && near(a, b, 1e-9);

    double m_inf = 0.0;
    for (std::size_t x = 0; x < p.dim(); ++x)
        if (q[x] == 0.0) m_inf += p[x];
    std::vector<double> out(p.dim(), 0.0);
    for (std::size_t x = 0; x < p.dim(); ++x) {
        if (q[x] > 0.0) out[x] = q[x] * std::max(b, std::min(a, pair.ratios[x]));
        else if (!std::isfinite(a)) out[x] = p[x] * (m_inf - eps) / m_inf;  // mass outside supp(q) exceeds eps
    }
    return RelativeClip{ProbVec::validate(out), cut.a, cut.b, scan.k, scan.m, false, boundary};
}

ProbVec relative_flattest(const ProbVec& p, const ProbVec& q, double eps) { return relative_clip(p, q, eps).vec; }

double gamma_min(const ProbVec& p, double eps) { return std::min(1.0, gamma_threshold(p, eps)); }

double gamma_threshold(const ProbVec& p, double eps)
{
    require_eps(eps, "gamma_threshold");
    if (eps >= 1.0) return 0.0;
    std::vector<double> s = p.entries();
    std::sort(s.begin(), s.end(), std::greater<>());
    const std::size_t d = s.size();
    const double dd = static_cast<double>(d);
    double pj = 0.0;
    for (std::size_t j = 1; j <= d; ++j) {
        pj += s[j - 1];
        const double lower = j < d ? dd * s[j] : 0.0;
        // On [lower, d * s_j] the positive part equals P_j - j c / d.
        if (pj - static_cast<double>(j) * lower / dd >= eps) {
            const double c = dd * (pj - eps) / static_cast<double>(j);
            return std::max(c, 0.0);
        }
    }
    return 0.0;
}

GammaClip clip_gamma(const ProbVec& p, double eps, double gamma)
{
    require_sorted(p, "clip_gamma");
    require_eps(eps, "clip_gamma");
    if (gamma < 1.0 - eps - kOrderSlack || gamma > 1.0 + kOrderSlack)
        throw Error(Errc::GammaOutOfRange, "clip_gamma: gamma must lie in [1 - eps, 1]");
    gamma = std::clamp(gamma, 0.0, 1.0);
    const std::size_t d = p.dim();
    const double dd = static_cast<double>(d);
    const double cp = gamma_threshold(p, eps);
    if (gamma >= cp - kOrderSlack || d == 1) {
        std::vector<double> x(d, gamma / dd);
        return GammaClip{SubProbVec::validate(x), GammaClipParams{gamma / dd, gamma / dd, 0, 0, gamma}, true};
    }
    const std::vector<double> ps = prefix_sums(p.span());
    const auto [a, k] = upper_level(ps, eps);
    const auto [b, m] = lower_level(ps, gamma, eps);
    if (k > m) throw Error(Errc::InfeasibleClip, "clip_gamma: k > m below gamma_min");
    std::vector<double> x(d);
    for (std::size_t i = 0; i < d; ++i) x[i] = i < k ? a : (i < m ? p[i] : b);
    return GammaClip{SubProbVec::validate(x), GammaClipParams{a, b, k, m, gamma}, false};
}

}  // namespace divsmooth
