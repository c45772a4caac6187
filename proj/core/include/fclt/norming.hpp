#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fclt/paths.hpp"

namespace fclt {

struct NormingValues {
    double a_n;
    double b_n;
};

// Registered closed forms, b_n = n mu throughout:
//   exponential(rate)          a_n = sqrt(n) / rate
//   pareto, tail > 2           a_n = sigma sqrt(n)
//   pareto, tail in (1, 2)     a_n = (n x_m^tail / C_tail)^(1/tail)
//   two-sided pareto           a_n = (n / C_tail)^(1/tail)
//   exact stable               a_n = (n dispersion)^(1/alpha)
//   constant                   a_n = sqrt(n)  (nominal; nothing fluctuates)
// Pareto with tail index exactly 2 has no registered formula and throws
// std::domain_error.
NormingValues norming_sequence(const DoaSpec& spec, std::size_t n);

// C_alpha = (1 - alpha) / (Gamma(2 - alpha) cos(pi alpha / 2)): a variable
// with P(X > x) ~ c x^-alpha has (S_n - n mu) / (n c / C_alpha)^(1/alpha)
// converging to a unit-dispersion, totally skewed stable law.
double stable_tail_constant(double alpha);

// n -> (a_n, b_n) as a value type; also constructible from an arbitrary
// positive sequence for the Karamata checks.
class NormingSeq {
  public:
    using Sequence = std::function<double(std::size_t)>;

    NormingSeq(Sequence a, double mu, std::string label);
    static NormingSeq for_spec(const DoaSpec& spec);

    double a(std::size_t n) const;
    double b(std::size_t n) const { return static_cast<double>(n) * mu_; }
    const std::string& label() const noexcept { return label_; }

  private:
    Sequence a_;
    double mu_;
    std::string label_;
};

// sum_{k=1}^n a_k / k by direct summation.
double karamata_partial_sum(const NormingSeq& seq, std::size_t n);

struct MonteCarloEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t reps = 0;

    double upper(double z = 1.96) const { return mean + z * std_error; }
    double lower(double z = 1.96) const { return mean - z * std_error; }
};

// Monte Carlo estimate of E|S_k - k mu|; replicate r uses stream (seed, r).
MonteCarloEstimate mean_abs_deviation(const DoaSpec& spec, std::size_t k, std::size_t reps,
                                      std::uint64_t seed, unsigned threads = 0);

// For each n in ns (ascending), the estimate of
//   (sum_{k<=n} E|S_k - k mu| / k) / norm(n),
// all checkpoints read off the same simulated walks.
std::vector<MonteCarloEstimate> deviation_sum_ratios(const DoaSpec& spec,
                                                     std::span<const std::size_t> ns,
                                                     const NormingSeq& norm, std::size_t reps,
                                                     std::uint64_t seed, unsigned threads = 0);

// Header "n,a_n,b_n,family".
void write_norming_csv(std::ostream& os, const DoaSpec& spec, std::span<const std::size_t> ns);

}  // namespace fclt
