#pragma once
/**
 * @file model_json.hpp
 * @brief JSON descriptor for a model.
 *
 * Descriptor shape:
 *
 *   {
 *     "code":   "I+ID.ID",
 *     "orders": { "alpha": 0.35, "beta": 0.55, "nu": 0.4 },
 *     "a":      [0.05, 1.5, 0.45],
 *     "b":      [0.7, 0.95]
 *   }
 *
 * Unknown keys are ignored.  Malformed documents raise ParseError; a
 * well-formed document with invalid model content raises the usual
 * build_model errors.
 */

#include <string>
#include <vector>

#include <json.hpp>

#include "azvisco/errors.hpp"
#include "azvisco/models.hpp"

namespace azvisco {

inline ModelSpec model_from_json(const nlohmann::json& j) {
    try {
        if (!j.is_object()) throw Error(ErrorCode::ParseError, "model descriptor must be an object");
        if (!j.contains("code")) throw Error(ErrorCode::ParseError, "model descriptor lacks 'code'");
        const ModelCode code = model_code_from_string(j.at("code").get<std::string>());

        FractionalOrders orders;
        if (j.contains("orders")) {
            const auto& o = j.at("orders");
            if (!o.is_object()) throw Error(ErrorCode::ParseError, "'orders' must be an object");
            auto grab = [&](const char* key) -> std::optional<double> {
                if (o.contains(key)) return o.at(key).get<double>();
                return std::nullopt;
            };
            orders.alpha = grab("alpha");
            orders.beta = grab("beta");
            orders.gamma = grab("gamma");
            orders.mu = grab("mu");
            orders.nu = grab("nu");
            orders.eta = grab("eta");
        }

        std::vector<double> a, b;
        if (j.contains("a")) a = j.at("a").get<std::vector<double>>();
        if (j.contains("b")) b = j.at("b").get<std::vector<double>>();
        return build_model(code, orders, a, b);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("bad model descriptor: ") + e.what());
    }
}

inline ModelSpec model_from_json_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw Error(ErrorCode::ParseError, "model descriptor is not valid JSON");
    return model_from_json(j);
}

inline nlohmann::json model_to_json(const ModelSpec& m) {
    nlohmann::json o = nlohmann::json::object();
    auto put = [&](const char* key, const std::optional<double>& v) {
        if (v.has_value()) o[key] = *v;
    };
    put("alpha", m.orders.alpha);
    put("beta", m.orders.beta);
    put("gamma", m.orders.gamma);
    put("mu", m.orders.mu);
    put("nu", m.orders.nu);
    put("eta", m.orders.eta);

    std::vector<double> a, b;
    for (const auto& t : m.phi_sigma.terms()) a.push_back(t.coeff);
    for (const auto& t : m.phi_epsilon.terms()) b.push_back(t.coeff);

    nlohmann::json j;
    j["code"] = to_string(m.code);
    j["orders"] = o;
    j["a"] = a;
    j["b"] = b;
    return j;
}

}  // namespace azvisco
