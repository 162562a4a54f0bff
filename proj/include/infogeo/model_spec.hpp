// Copyright 2026 The InfoGeo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <memory>
#include <string>

#include "json.hpp"

#include "expfam.hpp"
#include "mixture.hpp"

namespace infogeo {

// JSON model descriptions, e.g.
//   {"family": "bernoulli", "theta": [0.3]}
//   {"family": "categorical", "k": 3, "theta": [0.1, -0.2]}
//   {"family": "gaussian_fixed_var", "sigma": 2.0, "theta": [1.0]}
//   {"family": "mixture",
//    "components": [{"kind": "gaussian", "mu": 0, "sigma": 1},
//                   {"kind": "laplace", "mu": 2, "b": 1},
//                   {"kind": "cauchy", "x0": -1, "gamma": 0.5}],
//    "theta": [0.25, 0.25]}
// Parse failures raise ParseError carrying the offending field name.

struct ParsedModel {
    std::shared_ptr<ExponentialFamily> expfam;  // one of the two is set
    std::shared_ptr<MixtureFamily> mixture;
    Vec theta;  // empty when the spec omits it
    std::string family_name;

    bool is_mixture() const { return static_cast<bool>(mixture); }
    int dim() const { return expfam ? expfam->dim() : mixture->dim(); }
};

namespace detail {

inline double json_number(const nlohmann::json& j, const std::string& field) {
    if (!j.contains(field)) throw ParseError(field, "missing");
    if (!j[field].is_number()) throw ParseError(field, "must be a number");
    return j[field].get<double>();
}

inline Vec json_vector(const nlohmann::json& j, const std::string& field) {
    if (!j.contains(field)) throw ParseError(field, "missing");
    const auto& a = j[field];
    if (!a.is_array()) throw ParseError(field, "must be an array of numbers");
    Vec v(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i].is_number())
            throw ParseError(field + "[" + std::to_string(i) + "]", "must be a number");
        v[static_cast<int>(i)] = a[i].get<double>();
    }
    return v;
}

inline ComponentDensity parse_component(const nlohmann::json& c, int index) {
    std::string where = "components[" + std::to_string(index) + "]";
    if (!c.is_object()) throw ParseError(where, "must be an object");
    if (!c.contains("kind")) throw ParseError(where + ".kind", "missing");
    std::string kind = c["kind"].get<std::string>();
    if (kind == "gaussian") {
        double sigma = json_number(c, "sigma");
        if (!(sigma > 0.0)) throw ParseError(where + ".sigma", "must be positive");
        return ComponentDensity::gaussian(json_number(c, "mu"), sigma);
    }
    if (kind == "laplace") {
        double b = json_number(c, "b");
        if (!(b > 0.0)) throw ParseError(where + ".b", "must be positive");
        return ComponentDensity::laplace(json_number(c, "mu"), b);
    }
    if (kind == "cauchy") {
        double gamma = json_number(c, "gamma");
        if (!(gamma > 0.0)) throw ParseError(where + ".gamma", "must be positive");
        return ComponentDensity::cauchy(json_number(c, "x0"), gamma);
    }
    throw ParseError(where + ".kind", "unknown component kind '" + kind + "'");
}

}  // namespace detail

inline MixtureFamily parse_mixture_family(const nlohmann::json& j) {
    if (!j.contains("components")) throw ParseError("components", "missing");
    const auto& comps = j["components"];
    if (!comps.is_array() || comps.size() < 2)
        throw ParseError("components", "need an array of at least two components");
    std::vector<ComponentDensity> cs;
    for (size_t i = 0; i < comps.size(); ++i)
        cs.push_back(detail::parse_component(comps[i], static_cast<int>(i)));
    return MixtureFamily(std::move(cs));
}

inline ParsedModel parse_model(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("model", "must be a JSON object");
    if (!j.contains("family")) throw ParseError("family", "missing");
    if (!j["family"].is_string()) throw ParseError("family", "must be a string");
    std::string fam = j["family"].get<std::string>();

    ParsedModel out;
    out.family_name = fam;
    if (fam == "bernoulli") {
        out.expfam = std::make_shared<ExponentialFamily>(families::bernoulli());
    } else if (fam == "categorical") {
        double k = detail::json_number(j, "k");
        if (k != std::floor(k) || k < 2) throw ParseError("k", "must be an integer >= 2");
        out.expfam = std::make_shared<ExponentialFamily>(
            families::categorical(static_cast<int>(k)));
    } else if (fam == "poisson") {
        out.expfam = std::make_shared<ExponentialFamily>(families::poisson());
    } else if (fam == "gaussian") {
        out.expfam = std::make_shared<ExponentialFamily>(families::gaussian());
    } else if (fam == "gaussian_fixed_var") {
        double sigma = detail::json_number(j, "sigma");
        if (!(sigma > 0.0)) throw ParseError("sigma", "must be positive");
        out.expfam =
            std::make_shared<ExponentialFamily>(families::gaussian_fixed_var(sigma));
    } else if (fam == "exponential") {
        out.expfam = std::make_shared<ExponentialFamily>(families::exponential());
    } else if (fam == "mixture") {
        out.mixture = std::make_shared<MixtureFamily>(parse_mixture_family(j));
    } else {
        throw ParseError("family", "unknown family '" + fam + "'");
    }

    if (j.contains("theta")) {
        out.theta = detail::json_vector(j, "theta");
        if (out.theta.size() != out.dim())
            throw ParseError("theta", "expected dimension " + std::to_string(out.dim()));
        if (out.expfam) {
            if (!out.expfam->cumulant().domain().contains(out.theta))
                throw ParseError("theta", "outside the natural parameter domain");
        } else if (!out.mixture->domain().contains(out.theta)) {
            throw ParseError("theta", "outside the open weight simplex");
        }
    }
    return out;
}

inline ParsedModel parse_model(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("model", std::string("invalid JSON: ") + e.what());
    }
    return parse_model(j);
}

}  // namespace infogeo
