#include "fclt/norming.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>

#include "fclt/format.hpp"
#include "fclt/parallel.hpp"
#include "fclt/special.hpp"

namespace fclt {
namespace {

MonteCarloEstimate summarize(std::span<const double> values)
{
    MonteCarloEstimate est;
    est.reps = values.size();
    if (values.empty()) {
        return est;
    }
    double mean = 0.0;
    for (double v : values) {
        mean += v;
    }
    mean /= static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) {
        ss += (v - mean) * (v - mean);
    }
    est.mean = mean;
    if (values.size() > 1) {
        const double n = static_cast<double>(values.size());
        est.std_error = std::sqrt(ss / (n - 1.0) / n);
    }
    return est;
}

}  // namespace

double stable_tail_constant(double alpha)
{
    if (!(alpha > 0.0 && alpha < 2.0) || alpha == 1.0) {
        throw std::invalid_argument("stable_tail_constant: alpha must lie in (0, 1) or (1, 2)");
    }
    return (1.0 - alpha) / (gamma_fn(2.0 - alpha) * std::cos(0.5 * std::numbers::pi * alpha));
}

NormingValues norming_sequence(const DoaSpec& spec, std::size_t n)
{
    if (n == 0) {
        throw std::invalid_argument("norming_sequence: n must be at least 1");
    }
    const double nn = static_cast<double>(n);
    const double a_n = std::visit(
        [nn](const auto& f) -> double {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, family::Exponential>) {
                return std::sqrt(nn) / f.rate;
            } else if constexpr (std::is_same_v<F, family::Pareto>) {
                const double a = f.tail_index;
                if (a > 2.0) {
                    const double variance =
                        f.scale * f.scale * a / ((a - 1.0) * (a - 1.0) * (a - 2.0));
                    return std::sqrt(variance * nn);
                }
                if (a == 2.0) {
                    throw std::domain_error(
                        "norming_sequence: no registered norming for pareto with tail index 2");
                }
                return std::pow(nn * std::pow(f.scale, a) / stable_tail_constant(a), 1.0 / a);
            } else if constexpr (std::is_same_v<F, family::TwoSidedPareto>) {
                const double a = f.tail_index;
                return std::pow(nn / stable_tail_constant(a), 1.0 / a);
            } else if constexpr (std::is_same_v<F, family::ExactStable>) {
                return std::pow(nn * f.params.dispersion, 1.0 / f.params.alpha);
            } else {
                return std::sqrt(nn);
            }
        },
        spec.family());
    return {a_n, nn * spec.known_mu()};
}

NormingSeq::NormingSeq(Sequence a, double mu, std::string label)
    : a_(std::move(a)), mu_(mu), label_(std::move(label))
{
    if (!a_) {
        throw std::invalid_argument("NormingSeq: empty sequence");
    }
}

NormingSeq NormingSeq::for_spec(const DoaSpec& spec)
{
    return NormingSeq([spec](std::size_t n) { return norming_sequence(spec, n).a_n; },
                      spec.known_mu(), spec.name());
}

double NormingSeq::a(std::size_t n) const
{
    const double v = a_(n);
    if (!std::isfinite(v) || !(v > 0.0)) {
        throw std::domain_error("NormingSeq: a_n must be positive at n = " + std::to_string(n));
    }
    return v;
}

double karamata_partial_sum(const NormingSeq& seq, std::size_t n)
{
    if (n == 0) {
        throw std::invalid_argument("karamata_partial_sum: n must be at least 1");
    }
    double sum = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        sum += seq.a(k) / static_cast<double>(k);
    }
    return sum;
}

MonteCarloEstimate mean_abs_deviation(const DoaSpec& spec, std::size_t k, std::size_t reps,
                                      std::uint64_t seed, unsigned threads)
{
    if (k == 0 || reps == 0) {
        throw std::invalid_argument("mean_abs_deviation: k and reps must be at least 1");
    }
    const double mu = spec.known_mu();
    std::vector<double> deviations(reps);
    parallel_for(reps, threads, [&](std::size_t r) {
        Philox4x32 rng(seed, r);
        double centred = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            centred += spec.draw(rng) - mu;
        }
        deviations[r] = std::abs(centred);
    });
    return summarize(deviations);
}

std::vector<MonteCarloEstimate> deviation_sum_ratios(const DoaSpec& spec,
                                                     std::span<const std::size_t> ns,
                                                     const NormingSeq& norm, std::size_t reps,
                                                     std::uint64_t seed, unsigned threads)
{
    if (ns.empty() || reps == 0) {
        throw std::invalid_argument("deviation_sum_ratios: need checkpoints and reps >= 1");
    }
    if (ns.front() == 0 || !std::is_sorted(ns.begin(), ns.end())) {
        throw std::invalid_argument("deviation_sum_ratios: checkpoints must be ascending and >= 1");
    }
    const double mu = spec.known_mu();
    const std::size_t top = ns.back();
    std::vector<double> scale(ns.size());
    for (std::size_t i = 0; i < ns.size(); ++i) {
        scale[i] = norm.a(ns[i]);
    }
    // per[i * reps + r]
    std::vector<double> per(ns.size() * reps);
    parallel_for(reps, threads, [&](std::size_t r) {
        Philox4x32 rng(seed, r);
        double centred = 0.0;
        double acc = 0.0;
        std::size_t next = 0;
        for (std::size_t k = 1; k <= top; ++k) {
            centred += spec.draw(rng) - mu;
            acc += std::abs(centred) / static_cast<double>(k);
            while (next < ns.size() && ns[next] == k) {
                per[next * reps + r] = acc / scale[next];
                ++next;
            }
        }
    });
    std::vector<MonteCarloEstimate> out;
    out.reserve(ns.size());
    for (std::size_t i = 0; i < ns.size(); ++i) {
        out.push_back(summarize(std::span<const double>(per).subspan(i * reps, reps)));
    }
    return out;
}

void write_norming_csv(std::ostream& os, const DoaSpec& spec, std::span<const std::size_t> ns)
{
    os << "n,a_n,b_n,family\n";
    for (std::size_t n : ns) {
        const auto v = norming_sequence(spec, n);
        os << n << ',' << format_double(v.a_n) << ',' << format_double(v.b_n) << ','
           << spec.name() << '\n';
    }
}

}  // namespace fclt
