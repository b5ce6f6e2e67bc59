#pragma once

#include <cstddef>
#include <vector>

#include "divsmooth/ext_real.hpp"
#include "divsmooth/prob.hpp"

namespace divsmooth {

/// Clip levels and block sizes. k counts the top-clipped entries and m the entries
/// above the bottom block, both in sorted (or ratio) order. Degenerate clips use k = m = 0.
struct ClipParams {
    double a = 0.0;
    double b = 0.0;
    std::size_t k = 0;
    std::size_t m = 0;
};

struct GammaClipParams {
    double a = 0.0;
    double b_gamma = 0.0;
    std::size_t k = 0;
    std::size_t m = 0;
    double gamma = 1.0;
};

struct Flattest {
    ProbVec vec;
    ClipParams params;
    bool degenerate = false;  // the ball contains the uniform vector
};

/// Majorization-minimal member of the eps-ball around a sorted p.
Flattest flattest(const ProbVec& p, double eps);

/// Clip parameters of a sorted vector (a over [d], b over [d-1]); no degeneracy check.
ClipParams clip_params(std::span<const double> sorted, double eps);

/// Majorization-maximal member of the eps-ball around a sorted p.
ProbVec steepest(const ProbVec& p, double eps);

/// Ratio-level cutoffs; a is +inf when the mass of p outside supp(q) exceeds eps.
struct DmaxCutoffs {
    ExtReal a;
    ExtReal b;
};

/// Cutoffs from the piecewise-linear equations sum (p - a q)_+ = eps and sum (b q - p)_+ = eps.
DmaxCutoffs dmax_cutoffs(const PairOrdering& pair, double eps);

/// Same cutoffs by prefix/suffix scan over the ratio order; k and m follow the
/// largest-maximizer / smallest-minimizer rules.
struct DmaxScan {
    ExtReal a;
    ExtReal b;
    std::size_t k = 0;
    std::size_t m = 0;
};
DmaxScan dmax_cutoffs_scan(const PairOrdering& pair, double eps);

struct RelativeClip {
    ProbVec vec;
    ExtReal a;
    ExtReal b;
    std::size_t k = 0;
    std::size_t m = 0;
    bool degenerate = false;  // eps >= tv(p, q); vec is q
    bool boundary = false;    // a and b coincide within tolerance
};

/// Entries q_x * clamp(r_x, b, a); returns q when the ball contains q.
RelativeClip relative_clip(const ProbVec& p, const ProbVec& q, double eps);
ProbVec relative_flattest(const ProbVec& p, const ProbVec& q, double eps);

/// Smallest c >= 0 with || p - c u ||_+ <= eps (not capped; may exceed 1).
double gamma_threshold(const ProbVec& p, double eps);

/// min(1, gamma_threshold(p, eps)).
double gamma_min(const ProbVec& p, double eps);

struct GammaClip {
    SubProbVec vec;
    GammaClipParams params;
    bool flat = false;  // gamma * u lies in the ball and is returned
};

/// (eps, gamma)-clipped vector of a sorted p, uniform reference, 1 - eps <= gamma <= 1.
GammaClip clip_gamma(const ProbVec& p, double eps, double gamma);

void require_sorted(const ProbVec& p, const char* op);
void require_eps(double eps, const char* op);

}  // namespace divsmooth
