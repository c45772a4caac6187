#include "fclt/paths.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "fclt/format.hpp"
#include "fclt/norming.hpp"

namespace fclt {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const std::string& message)
{
    if (!ok) {
        throw std::invalid_argument(message);
    }
}

}  // namespace

DoaSpec::DoaSpec(Family family) : family_(std::move(family))
{
    std::visit(
        Overloaded{
            [this](const family::Exponential& f) {
                require(std::isfinite(f.rate) && f.rate > 0.0,
                        "exponential: rate must be positive");
                mu_ = 1.0 / f.rate;
                alpha_ = 2.0;
                beta_ = 0.0;
                positive_ = true;
            },
            [this](const family::Pareto& f) {
                require(std::isfinite(f.tail_index) && f.tail_index > 1.0,
                        "pareto: tail index must exceed 1 (finite mean)");
                require(std::isfinite(f.scale) && f.scale > 0.0, "pareto: scale must be positive");
                require(std::isfinite(f.shift) && f.shift >= 0.0,
                        "pareto: shift must be non-negative");
                mu_ = f.shift + f.tail_index * f.scale / (f.tail_index - 1.0);
                if (f.tail_index < 2.0) {
                    alpha_ = f.tail_index;
                    beta_ = 1.0;
                } else {
                    alpha_ = 2.0;
                    beta_ = 0.0;
                }
                positive_ = true;
            },
            [this](const family::ExactStable& f) {
                f.params.validate();
                require(f.params.alpha > 1.0,
                        "exact-stable: alpha must lie in (1, 2] for a finite mean");
                mu_ = f.params.location;
                alpha_ = f.params.alpha;
                beta_ = f.params.beta;
                positive_ = false;
            },
            [this](const family::TwoSidedPareto& f) {
                require(std::isfinite(f.tail_index) && f.tail_index > 1.0 && f.tail_index < 2.0,
                        "two-sided-pareto: tail index must lie in (1, 2)");
                require(f.asymmetry >= 0.0 && f.asymmetry <= 1.0,
                        "two-sided-pareto: asymmetry must lie in [0, 1]");
                const double skew = 2.0 * f.asymmetry - 1.0;
                mu_ = skew * f.tail_index / (f.tail_index - 1.0);
                alpha_ = f.tail_index;
                beta_ = skew;
                positive_ = false;
            },
            [this](const family::Constant& f) {
                require(std::isfinite(f.value), "constant: value must be finite");
                mu_ = f.value;
                alpha_ = 2.0;
                beta_ = 0.0;
                positive_ = f.value > 0.0;
            },
        },
        family_);
}

std::string DoaSpec::name() const
{
    return std::visit(Overloaded{
                          [](const family::Exponential&) { return std::string("exponential"); },
                          [](const family::Pareto&) { return std::string("pareto"); },
                          [](const family::ExactStable&) { return std::string("exact-stable"); },
                          [](const family::TwoSidedPareto&) {
                              return std::string("two-sided-pareto");
                          },
                          [](const family::Constant&) { return std::string("constant"); },
                      },
                      family_);
}

double DoaSpec::draw(Philox4x32& rng) const
{
    return std::visit(
        Overloaded{
            [&](const family::Exponential& f) { return standard_exponential(rng) / f.rate; },
            [&](const family::Pareto& f) {
                return f.shift + f.scale * std::pow(uniform_open01(rng), -1.0 / f.tail_index);
            },
            [&](const family::ExactStable& f) { return fclt::draw(f.params, rng); },
            [&](const family::TwoSidedPareto& f) {
                const bool upper = uniform_open01(rng) < f.asymmetry;
                const double y = std::pow(uniform_open01(rng), -1.0 / f.tail_index);
                return upper ? y : -y;
            },
            [&](const family::Constant& f) { return f.value; },
        },
        family_);
}

std::vector<double> sample_doa(const DoaSpec& spec, Philox4x32& rng, std::size_t n)
{
    if (n == 0) {
        throw std::invalid_argument("sample_doa: n must be at least 1");
    }
    std::vector<double> out(n);
    for (auto& x : out) {
        x = spec.draw(rng);
    }
    return out;
}

SamplePath::SamplePath(std::vector<double> times, std::vector<double> values)
    : times_(std::move(times)), values_(std::move(values))
{
    if (times_.size() < 2 || times_.size() != values_.size()) {
        throw std::invalid_argument("SamplePath: need matching times/values with at least 2 points");
    }
    if (times_.front() != 0.0 || times_.back() != 1.0) {
        throw std::invalid_argument("SamplePath: grid must start at 0 and end at 1");
    }
    for (std::size_t i = 1; i < times_.size(); ++i) {
        if (!(times_[i] > times_[i - 1])) {
            throw std::invalid_argument("SamplePath: times must be strictly increasing");
        }
    }
}

SamplePath SamplePath::uniform(std::vector<double> values)
{
    if (values.size() < 2) {
        throw std::invalid_argument("SamplePath::uniform: need at least one cell");
    }
    const std::size_t m = values.size() - 1;
    std::vector<double> times(m + 1);
    for (std::size_t j = 0; j <= m; ++j) {
        times[j] = static_cast<double>(j) / static_cast<double>(m);
    }
    return SamplePath(std::move(times), std::move(values));
}

double SamplePath::operator()(double t) const
{
    if (!(t >= 0.0 && t <= 1.0)) {
        throw std::out_of_range("SamplePath: t outside [0, 1]");
    }
    const auto it = std::upper_bound(times_.begin(), times_.end(), t);
    return values_[static_cast<std::size_t>(it - times_.begin()) - 1];
}

double SamplePath::sup_distance(const SamplePath& other) const
{
    std::vector<double> grid;
    grid.reserve(times_.size() + other.times_.size());
    std::merge(times_.begin(), times_.end(), other.times_.begin(), other.times_.end(),
               std::back_inserter(grid));
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    double sup = 0.0;
    for (double t : grid) {
        sup = std::max(sup, std::abs((*this)(t) - other(t)));
    }
    return sup;
}

void SamplePath::write_csv(std::ostream& os) const
{
    os << "t,value\n";
    for (std::size_t i = 0; i < times_.size(); ++i) {
        os << format_double(times_[i]) << ',' << format_double(values_[i]) << '\n';
    }
}

SamplePath partial_sum_process(std::span<const double> x, double mu, double a_n,
                               std::size_t grid)
{
    if (x.empty()) {
        throw std::invalid_argument("partial_sum_process: empty sequence");
    }
    if (!std::isfinite(a_n) || !(a_n > 0.0)) {
        throw std::invalid_argument("partial_sum_process: a_n must be positive");
    }
    if (grid == 0) {
        throw std::invalid_argument("partial_sum_process: grid must be at least 1");
    }
    const std::size_t n = x.size();
    std::vector<double> centred(n + 1, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        centred[k + 1] = centred[k] + (x[k] - mu);
    }
    std::vector<double> values(grid + 1);
    for (std::size_t j = 0; j <= grid; ++j) {
        values[j] = centred[floor_index(n, j, grid)] / a_n;
    }
    return SamplePath::uniform(std::move(values));
}

SamplePath simulate_levy_path(double alpha, double beta, Philox4x32& rng, std::size_t grid)
{
    if (grid == 0) {
        throw std::invalid_argument("simulate_levy_path: grid must be at least 1");
    }
    if (!(alpha > 1.0 && alpha <= 2.0)) {
        throw std::invalid_argument("simulate_levy_path: alpha must lie in (1, 2]");
    }
    const StableParams increment{alpha, beta, 1.0 / static_cast<double>(grid), 0.0};
    increment.validate();
    std::vector<double> values(grid + 1, 0.0);
    for (std::size_t j = 1; j <= grid; ++j) {
        values[j] = values[j - 1] + draw(increment, rng);
    }
    return SamplePath::uniform(std::move(values));
}

std::vector<double> IidSource::partial_sums(Philox4x32& rng, std::size_t n) const
{
    std::vector<double> s = sample_doa(spec_, rng, n);
    for (std::size_t k = 1; k < n; ++k) {
        s[k] += s[k - 1];
    }
    return s;
}

double IidSource::norming(std::size_t n) const { return norming_sequence(spec_, n).a_n; }

std::vector<double> MovingAverageSource::partial_sums(Philox4x32& rng, std::size_t n) const
{
    if (n == 0) {
        throw std::invalid_argument("MovingAverageSource: n must be at least 1");
    }
    double previous = spec_.draw(rng);
    std::vector<double> s(n);
    double running = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double current = spec_.draw(rng);
        running += 0.5 * (current + previous);
        s[k] = running;
        previous = current;
    }
    return s;
}

double MovingAverageSource::norming(std::size_t n) const
{
    return norming_sequence(spec_, n).a_n;
}

}  // namespace fclt
