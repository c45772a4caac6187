#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <utility>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fclt/rng.hpp"
#include "fclt/stable.hpp"

namespace fclt {

// Input distributions with a known stable domain of attraction.
namespace family {

struct Exponential {
    double rate = 1.0;
};

// x_m * U^{-1/tail_index} + shift. Tail index in (1, 2) attracts to a
// totally skewed stable law; above 2 the variance is finite.
struct Pareto {
    double tail_index = 1.5;
    double scale = 1.0;
    double shift = 0.0;
};

struct ExactStable {
    StableParams params;
};

// Symmetrised unit Pareto: +Y with probability `asymmetry`, -Y otherwise,
// Y = U^{-1/tail_index}, tail index in (1, 2).
struct TwoSidedPareto {
    double tail_index = 1.5;
    double asymmetry = 0.5;
};

// Point mass; no fluctuation at all. Useful as a degenerate control.
struct Constant {
    double value = 1.0;
};

}  // namespace family

using Family = std::variant<family::Exponential, family::Pareto, family::ExactStable,
                            family::TwoSidedPareto, family::Constant>;

class DoaSpec {
  public:
    // Throws std::invalid_argument for parameters outside the family's range
    // or when E|X| is infinite.
    explicit DoaSpec(Family family);

    const Family& family() const noexcept { return family_; }
    double known_mu() const noexcept { return mu_; }
    double known_alpha() const noexcept { return alpha_; }
    double known_beta() const noexcept { return beta_; }
    bool positivity() const noexcept { return positive_; }

    // Short identifier, e.g. "exponential", "pareto".
    std::string name() const;

    // One draw of X.
    double draw(Philox4x32& rng) const;

  private:
    Family family_;
    double mu_ = 0.0;
    double alpha_ = 2.0;
    double beta_ = 0.0;
    bool positive_ = false;
};

std::vector<double> sample_doa(const DoaSpec& spec, Philox4x32& rng, std::size_t n);

// Right-continuous step function on [0, 1]. values[i] holds on
// [times[i], times[i+1]); the final value is the value at t = 1.
class SamplePath {
  public:
    // times strictly increasing from 0 to 1, values.size() == times.size().
    SamplePath(std::vector<double> times, std::vector<double> values);

    // Uniform grid j/m, j = 0..m, with m = values.size() - 1.
    static SamplePath uniform(std::vector<double> values);

    double operator()(double t) const;

    std::span<const double> times() const noexcept { return times_; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t cells() const noexcept { return times_.size() - 1; }

    // sup_t |this(t) - other(t)| over the common refinement of the two grids.
    double sup_distance(const SamplePath& other) const;

    // Header "t,value", one row per grid point.
    void write_csv(std::ostream& os) const;

  private:
    std::vector<double> times_;
    std::vector<double> values_;
};

// S_n(t) = (S_[nt] - [nt] mu) / a_n sampled at t = j / grid, j = 0..grid.
SamplePath partial_sum_process(std::span<const double> x, double mu, double a_n,
                               std::size_t grid);

// Standard (alpha, beta)-stable Levy motion on j / grid: independent
// increments S_alpha(1 / grid, beta, 0), L(0) = 0. alpha = 2 is Brownian motion.
SamplePath simulate_levy_path(double alpha, double beta, Philox4x32& rng, std::size_t grid);

// [n t] for t = j / m, in integer arithmetic (exact for m < 2^32, j <= m).
inline std::uint64_t floor_index(std::uint64_t n, std::uint64_t j, std::uint64_t m) noexcept
{
    return (n / m) * j + ((n % m) * j) / m;
}

// A sequence S_1, S_2, ... with declared centring and norming. The iid
// partial sums are one instance; anything satisfying the invariance
// principle and the first-moment bound qualifies.
class SequenceSource {
  public:
    virtual ~SequenceSource() = default;

    // S_1, ..., S_n.
    virtual std::vector<double> partial_sums(Philox4x32& rng, std::size_t n) const = 0;
    virtual double mu() const = 0;
    virtual double norming(std::size_t n) const = 0;
    virtual double alpha() const = 0;
    virtual double beta() const = 0;
    virtual bool positive() const = 0;
};

class IidSource final : public SequenceSource {
  public:
    explicit IidSource(DoaSpec spec) : spec_(std::move(spec)) {}

    std::vector<double> partial_sums(Philox4x32& rng, std::size_t n) const override;
    double mu() const override { return spec_.known_mu(); }
    double norming(std::size_t n) const override;
    double alpha() const override { return spec_.known_alpha(); }
    double beta() const override { return spec_.known_beta(); }
    bool positive() const override { return spec_.positivity(); }

    const DoaSpec& spec() const noexcept { return spec_; }

  private:
    DoaSpec spec_;
};

// X_k = (Z_k + Z_{k-1}) / 2 with Z iid from `spec`. Not iid, but its partial
// sums differ from those of Z by boundary terms only, so the centring and
// norming of Z carry over.
class MovingAverageSource final : public SequenceSource {
  public:
    explicit MovingAverageSource(DoaSpec spec) : spec_(std::move(spec)) {}

    std::vector<double> partial_sums(Philox4x32& rng, std::size_t n) const override;
    double mu() const override { return spec_.known_mu(); }
    double norming(std::size_t n) const override;
    double alpha() const override { return spec_.known_alpha(); }
    double beta() const override { return spec_.known_beta(); }
    bool positive() const override { return spec_.positivity(); }

  private:
    DoaSpec spec_;
};

}  // namespace fclt
