#include "fclt/serialize.hpp"

#include <stdexcept>
#include <string>
#include <type_traits>

namespace fclt {

nlohmann::json to_json(const StableParams& p)
{
    return {{"alpha", p.alpha}, {"beta", p.beta}, {"dispersion", p.dispersion},
            {"location", p.location}};
}

StableParams stable_params_from_json(const nlohmann::json& j)
{
    StableParams p{j.at("alpha").get<double>(), j.value("beta", 0.0),
                   j.value("dispersion", 1.0), j.value("location", 0.0)};
    p.validate();
    return p;
}

nlohmann::json to_json(const DoaSpec& spec)
{
    nlohmann::json j = std::visit(
        [](const auto& f) -> nlohmann::json {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, family::Exponential>) {
                return {{"rate", f.rate}};
            } else if constexpr (std::is_same_v<F, family::Pareto>) {
                return {{"tail_index", f.tail_index}, {"scale", f.scale}, {"shift", f.shift}};
            } else if constexpr (std::is_same_v<F, family::ExactStable>) {
                return {{"stable", to_json(f.params)}};
            } else if constexpr (std::is_same_v<F, family::TwoSidedPareto>) {
                return {{"tail_index", f.tail_index}, {"asymmetry", f.asymmetry}};
            } else {
                return {{"value", f.value}};
            }
        },
        spec.family());
    j["family"] = spec.name();
    return j;
}

DoaSpec doa_spec_from_json(const nlohmann::json& j)
{
    const auto name = j.at("family").get<std::string>();
    if (name == "exponential") {
        return DoaSpec(family::Exponential{j.value("rate", 1.0)});
    }
    if (name == "pareto") {
        return DoaSpec(family::Pareto{j.at("tail_index").get<double>(), j.value("scale", 1.0),
                                      j.value("shift", 0.0)});
    }
    if (name == "exact-stable") {
        return DoaSpec(family::ExactStable{stable_params_from_json(j.at("stable"))});
    }
    if (name == "two-sided-pareto") {
        return DoaSpec(family::TwoSidedPareto{j.at("tail_index").get<double>(),
                                              j.value("asymmetry", 0.5)});
    }
    if (name == "constant") {
        return DoaSpec(family::Constant{j.at("value").get<double>()});
    }
    throw std::invalid_argument("unknown distribution family '" + name + "'");
}

}  // namespace fclt
