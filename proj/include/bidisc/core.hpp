#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace bidisc {

using Complex = std::complex<double>;

/// Raised when an input violates the domain of an operation
/// (off-disc point, non-finite value, malformed parameter, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Inputs with |z| >= 1 - kBoundaryTol are treated as boundary points and rejected.
inline constexpr double kBoundaryTol = 1e-9;

/// Default sampling radius for all model domains.
inline constexpr double kDefaultRmax = 0.95;

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_finite(Complex z, const char* what);
void require_in_disc(Complex z, const char* what);

/// A point of the open unit disc.
class DiscPoint {
public:
    explicit DiscPoint(Complex value);
    Complex value() const { return value_; }

private:
    Complex value_;
};

/// A point of the bidisc D x D.
struct BidiscPoint {
    Complex z1;
    Complex z2;

    /// Checked construction; throws DomainError outside the open bidisc.
    static BidiscPoint make(Complex z1, Complex z2);

    BidiscPoint swapped() const { return {z2, z1}; }
};

/// A point of the unit ball B2 in C^2.
struct BallPoint {
    Complex u;
    Complex v;

    static BallPoint make(Complex u, Complex v);

    double norm2() const { return std::norm(u) + std::norm(v); }
};

/// Disc automorphism z -> e^{i theta} (z - a) / (1 - conj(a) z).
class MobiusMap {
public:
    MobiusMap() = default;
    MobiusMap(double theta, Complex a);

    static MobiusMap identity() { return {}; }

    double theta() const { return theta_; }
    Complex a() const { return a_; }

    Complex operator()(Complex z) const { return apply(z); }
    Complex apply(Complex z) const;

    /// Unchecked evaluation for interior points already validated by the caller.
    Complex apply_unchecked(Complex z) const;

    /// Image of the origin, e^{i theta} (-a).
    Complex image_of_origin() const;

private:
    double theta_ = 0.0;
    Complex a_{0.0, 0.0};
};

/// Returns the map z -> outer(inner(z)).
MobiusMap compose(const MobiusMap& outer, const MobiusMap& inner);
MobiusMap inverse(const MobiusMap& m);

/// Pseudo-hyperbolic distance |(z1 - z2) / (1 - conj(z1) z2)|.
double pseudo_hyperbolic(Complex z1, Complex z2);
inline double pseudo_hyperbolic(const BidiscPoint& p) { return pseudo_hyperbolic(p.z1, p.z2); }

/// Seedable, splittable random source.
///
/// The engine is std::mt19937_64 initialised through std::seed_seq with the
/// four 32-bit words (seed lo, seed hi, stream lo, stream hi). Both are fully
/// specified by the C++ standard, and doubles are produced from the top 53 bits
/// of each draw, so sequences are identical on every conforming platform.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform on [0, 1).
    double uniform();
    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
};

/// Uniform (area measure) on the closed disc of radius rmax, by rejection from the square.
DiscPoint sample_disc(RngStream& rng, double rmax = kDefaultRmax);
BidiscPoint sample_bidisc(RngStream& rng, double rmax = kDefaultRmax);
/// Uniform (volume measure) on the ball of radius rmax in C^2.
BallPoint sample_ball(RngStream& rng, double rmax = kDefaultRmax);
/// theta uniform on [0, 2 pi), a from sample_disc.
MobiusMap sample_mobius(RngStream& rng, double rmax = kDefaultRmax);

std::string to_string(Complex z);

}  // namespace bidisc
