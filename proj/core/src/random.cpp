#include "divsmooth/random.hpp"

#include <cmath>

#include "divsmooth/error.hpp"

namespace divsmooth {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Rng Rng::for_instance(std::uint64_t seed, std::uint64_t i)
{
    return Rng(splitmix64(splitmix64(seed) ^ splitmix64(i + 0x5851f42d4c957f2dULL)));
}

double Rng::uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::uniform_open()
{
    double u;
    do u = uniform();
    while (u == 0.0);
    return u;
}

std::size_t Rng::index(std::size_t n)
{
    if (n == 0) throw Error(Errc::InvalidArgument, "Rng::index: empty range");
    return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
}

double Rng::normal()
{
    // Marsaglia polar method; the spare variate is discarded to keep the stream stateless.
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    return u * std::sqrt(-2.0 * std::log(s) / s);
}

double Rng::gamma(double shape)
{
    if (!(shape > 0.0)) throw Error(Errc::InvalidArgument, "gamma shape must be positive");
    if (shape < 1.0) {
        // Boost: G(a) = G(a+1) * U^(1/a).
        const double g = gamma(shape + 1.0);
        return g * std::pow(uniform_open(), 1.0 / shape);
    }
    // Marsaglia-Tsang.
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform_open();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

std::vector<double> Rng::dirichlet(std::size_t d, double concentration)
{
    std::vector<double> x(d);
    double s = 0.0;
    for (;;) {
        s = 0.0;
        for (double& v : x) {
            v = gamma(concentration);
            s += v;
        }
        if (s > 0.0 && std::isfinite(s)) break;
    }
    for (double& v : x) v /= s;
    return x;
}

ProbVec Rng::dirichlet_vec(std::size_t d, double concentration)
{
    return ProbVec::validate(dirichlet(d, concentration));
}

}  // namespace divsmooth
