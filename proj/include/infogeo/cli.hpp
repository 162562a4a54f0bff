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

#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "chernoff.hpp"
#include "crlb.hpp"
#include "fdivergence.hpp"
#include "fim_estimators.hpp"
#include "kmeans.hpp"
#include "model_spec.hpp"
#include "projection.hpp"
#include "rao.hpp"

namespace infogeo {
namespace cli {

inline constexpr const char* kVersion = "0.1.0";

// Deterministic JSON emission: insertion-ordered keys and doubles printed
// with 17 significant digits, so identical argv + seed produce byte-identical
// stdout. Non-finite values (a KL divergence can be infinite) are emitted as
// the strings "inf" / "-inf" / "nan" since JSON has no literal for them.
class Json {
  public:
    static Json num(double v) { return Json(format_double(v)); }
    static Json integer(long long v) { return Json(std::to_string(v)); }
    static Json uinteger(unsigned long long v) { return Json(std::to_string(v)); }
    static Json boolean(bool b) { return Json(b ? "true" : "false"); }
    static Json str(const std::string& s) { return Json(quote(s)); }
    static Json array() {
        Json j("");
        j.kind_ = Kind::Array;
        return j;
    }
    static Json object() {
        Json j("");
        j.kind_ = Kind::Object;
        return j;
    }
    static Json vec(const Vec& v) {
        Json a = array();
        for (int i = 0; i < v.size(); ++i) a.push(num(v[i]));
        return a;
    }
    static Json matrix(const Mat& m) {
        Json rows = array();
        for (int i = 0; i < m.rows(); ++i) {
            Json r = array();
            for (int j = 0; j < m.cols(); ++j) r.push(num(m(i, j)));
            rows.push(std::move(r));
        }
        return rows;
    }

    Json& set(const std::string& key, Json v) {
        entries_.emplace_back(quote(key), std::move(v));
        return *this;
    }
    Json& push(Json v) {
        entries_.emplace_back("", std::move(v));
        return *this;
    }

    void dump(std::ostream& os) const {
        switch (kind_) {
            case Kind::Scalar:
                os << scalar_;
                return;
            case Kind::Array: {
                os << '[';
                bool first = true;
                for (const auto& e : entries_) {
                    if (!first) os << ',';
                    first = false;
                    e.second.dump(os);
                }
                os << ']';
                return;
            }
            case Kind::Object: {
                os << '{';
                bool first = true;
                for (const auto& e : entries_) {
                    if (!first) os << ',';
                    first = false;
                    os << e.first << ':';
                    e.second.dump(os);
                }
                os << '}';
                return;
            }
        }
    }

    static std::string format_double(double v) {
        if (std::isnan(v)) return "\"nan\"";
        if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }

  private:
    enum class Kind { Scalar, Array, Object };
    explicit Json(std::string s) : kind_(Kind::Scalar), scalar_(std::move(s)) {}

    static std::string quote(const std::string& s) {
        std::string out = "\"";
        for (char c : s) {
            switch (c) {
                case '"': out += "\\\""; break;
                case '\\': out += "\\\\"; break;
                case '\n': out += "\\n"; break;
                case '\t': out += "\\t"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof buf, "\\u%04x", c);
                        out += buf;
                    } else {
                        out += c;
                    }
            }
        }
        out += '"';
        return out;
    }

    Kind kind_ = Kind::Scalar;
    std::string scalar_;
    std::vector<std::pair<std::string, Json>> entries_;
};

namespace detail {

/// Accepts "[a,b,c]" or bare "a,b,c".
inline Vec parse_vector(const std::string& text, const std::string& flag) {
    std::string s = text;
    if (!s.empty() && s.front() == '[') {
        if (s.back() != ']') throw ParseError(flag, "unbalanced brackets");
        s = s.substr(1, s.size() - 2);
    }
    std::vector<double> vals;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            size_t pos = 0;
            double v = std::stod(tok, &pos);
            vals.push_back(v);
        } catch (...) {
            throw ParseError(flag, "'" + tok + "' is not a number");
        }
    }
    if (vals.empty()) throw ParseError(flag, "empty vector");
    Vec v(vals.size());
    for (size_t i = 0; i < vals.size(); ++i) v[static_cast<int>(i)] = vals[i];
    return v;
}

/// Constraint text "a11,a12|a21,a22;b1,b2": rows of A separated by '|',
/// then ';' and the right-hand side.
inline std::pair<Mat, Vec> parse_constraint(const std::string& text) {
    auto semi = text.find(';');
    if (semi == std::string::npos)
        throw ParseError("--constraint", "expected \"A;b\" with ';' separator");
    std::string a_part = text.substr(0, semi);
    std::string b_part = text.substr(semi + 1);
    std::vector<Vec> rows;
    std::stringstream ss(a_part);
    std::string row;
    while (std::getline(ss, row, '|')) rows.push_back(parse_vector(row, "--constraint"));
    if (rows.empty()) throw ParseError("--constraint", "no rows in A");
    Mat A(rows.size(), rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != A.cols())
            throw ParseError("--constraint", "ragged rows in A");
        A.row(static_cast<int>(i)) = rows[i];
    }
    Vec b = parse_vector(b_part, "--constraint");
    if (b.size() != A.rows()) throw ParseError("--constraint", "b length != rows of A");
    return {A, b};
}

inline FGenerator generator_by_kind(const std::string& kind, double alpha) {
    if (kind == "kl") return generators::kl();
    if (kind == "revkl") return generators::reverse_kl();
    if (kind == "hellinger") return generators::hellinger();
    if (kind == "js") return generators::jensen_shannon();
    if (kind == "tv") return generators::total_variation();
    if (kind == "alpha") return generators::alpha_divergence(alpha);
    throw ParseError("--kind", "unknown divergence kind '" + kind + "'");
}

/// Gradient range of the built-in cumulants, where box/simplex shaped.
inline std::optional<Domain> eta_domain_for(const ExponentialFamily& fam) {
    const std::string& n = fam.name();
    if (n == "bernoulli") return Domain::box(Vec::Zero(1), Vec::Ones(1));
    if (n == "categorical") return Domain::simplex_interior(fam.dim(), 0.0);
    if (n == "poisson" || n == "exponential") return Domain::positive(1);
    if (n == "gaussian_fixed_var") return Domain::unbounded(1);
    return std::nullopt;  // gaussian: {eta2 > eta1^2} is not box-shaped
}

/// Open (append) a CSV sink, emitting the header only for a fresh file.
class CsvSink {
  public:
    CsvSink(const std::string& path, const std::string& header) {
        if (path.empty()) return;
        bool fresh = true;
        {
            std::ifstream probe(path);
            fresh = !probe.good() || probe.peek() == std::ifstream::traits_type::eof();
        }
        out_.open(path, std::ios::app);
        if (!out_) throw Error("cannot open CSV path '" + path + "'");
        if (fresh) out_ << header << '\n';
    }
    bool active() const { return out_.is_open(); }
    void row(const std::vector<double>& vals) {
        if (!active()) return;
        for (size_t i = 0; i < vals.size(); ++i) {
            if (i) out_ << ',';
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", vals[i]);
            out_ << buf;
        }
        out_ << '\n';
    }

  private:
    std::ofstream out_;
};

inline std::string error_kind(const Error& e) {
    if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
    if (dynamic_cast<const DimensionError*>(&e)) return "DimensionError";
    if (dynamic_cast<const RangeError*>(&e)) return "RangeError";
    if (dynamic_cast<const ConvergenceError*>(&e)) return "ConvergenceError";
    if (dynamic_cast<const SupportError*>(&e)) return "SupportError";
    if (dynamic_cast<const PartitionError*>(&e)) return "PartitionError";
    if (dynamic_cast<const DegenerateGeneratorError*>(&e)) return "DegenerateGeneratorError";
    if (dynamic_cast<const QuadratureError*>(&e)) return "QuadratureError";
    if (dynamic_cast<const InfeasibleError*>(&e)) return "InfeasibleError";
    if (dynamic_cast<const SingularMetricError*>(&e)) return "SingularMetricError";
    if (dynamic_cast<const EmptyClusterError*>(&e)) return "EmptyClusterError";
    if (dynamic_cast<const DegenerateError*>(&e)) return "DegenerateError";
    return "Error";
}

inline Json header(const std::string& command, std::uint64_t seed) {
    Json doc = Json::object();
    doc.set("version", Json::str(kVersion));
    doc.set("command", Json::str(command));
    doc.set("seed", Json::uinteger(seed));
    return doc;
}

inline int emit(std::ostream& out, const Json& doc) {
    doc.dump(out);
    out << '\n';
    return 0;
}

}  // namespace detail

/// Entry point shared by the binary and the tests. Returns 0 on success,
/// 1 on usage/parse errors (empty stdout), 2 on numeric failures.
inline int run(const std::vector<std::string>& argv, std::ostream& out,
               std::ostream& err) {
    CLI::App app{"information-geometry toolkit: divergences, dual coordinates, "
                 "error exponents, and Bregman clustering"};
    app.require_subcommand(1);

    // -------- divergence --------
    std::string dv_kind, dv_p, dv_q, dv_model, dv_csv;
    double dv_alpha = 0.5;
    std::uint64_t dv_seed = 0;
    auto* dv = app.add_subcommand(
        "divergence",
        "Divergence between two distributions or parameter points.\n"
        "Kinds kl|revkl|hellinger|js|tv|alpha take --p/--q as probability vectors;\n"
        "kinds bregman|jensen take --model plus --p/--q as natural parameters.\n"
        "CSV columns: alpha,value");
    dv->add_option("--kind", dv_kind, "divergence kind")->required();
    dv->add_option("--p", dv_p, "first distribution or point")->required();
    dv->add_option("--q", dv_q, "second distribution or point")->required();
    dv->add_option("--alpha", dv_alpha, "skew/alpha parameter");
    dv->add_option("--model", dv_model, "model JSON (bregman/jensen kinds)");
    dv->add_option("--seed", dv_seed, "master seed (echoed)");
    dv->add_option("--emit-csv", dv_csv, "append a CSV row to this path");

    // -------- legendre --------
    std::string lg_model, lg_eta, lg_csv;
    std::uint64_t lg_seed = 0;
    auto* lg = app.add_subcommand(
        "legendre",
        "Convex-conjugate value and dual parameter at a given eta.\n"
        "CSV columns: value,residual,theta_0..");
    lg->add_option("--model", lg_model, "model JSON")->required();
    lg->add_option("--eta", lg_eta, "dual parameter (csv or [..])")->required();
    lg->add_option("--seed", lg_seed, "master seed (echoed)");
    lg->add_option("--emit-csv", lg_csv, "append a CSV row to this path");

    // -------- fim --------
    std::string fm_model, fm_method = "exact", fm_csv, fm_theta;
    double fm_alpha = 0.0;
    long fm_samples = 100000;
    std::uint64_t fm_seed = 0;
    auto* fm = app.add_subcommand(
        "fim",
        "Information matrix at theta: exact (closed form / quadrature) or\n"
        "Monte-Carlo estimators score|hessian|alpha|sqrt.\n"
        "CSV columns: i,j,value,stderr");
    fm->add_option("--model", fm_model, "model JSON (theta inside or via --theta)")
        ->required();
    fm->add_option("--theta", fm_theta, "parameter override");
    fm->add_option("--method", fm_method, "exact|score|hessian|alpha|sqrt");
    fm->add_option("--alpha", fm_alpha, "embedding parameter for --method alpha");
    fm->add_option("--samples", fm_samples, "Monte-Carlo sample count");
    fm->add_option("--seed", fm_seed, "master seed");
    fm->add_option("--emit-csv", fm_csv, "append CSV rows to this path");

    // -------- chernoff --------
    std::string ch_model, ch_t1, ch_t2, ch_csv;
    bool ch_sim = false;
    int ch_nobs = 1;
    long ch_trials = 10000;
    double ch_prior = 0.5;
    std::uint64_t ch_seed = 0;
    auto* ch = app.add_subcommand(
        "chernoff",
        "Best error exponent between two hypotheses of one family; optional\n"
        "posterior-rule simulation. alpha_star weights theta2 along the\n"
        "theta-geodesic (the integrand exponent on p1 is 1 - alpha_star).\n"
        "CSV columns: alpha,bhattacharyya (1001-point sweep)");
    ch->add_option("--model", ch_model, "model JSON")->required();
    ch->add_option("--theta1", ch_t1, "first hypothesis")->required();
    ch->add_option("--theta2", ch_t2, "second hypothesis")->required();
    ch->add_flag("--simulate", ch_sim, "run the decision-rule simulation");
    ch->add_option("--nobs", ch_nobs, "observations per trial");
    ch->add_option("--trials", ch_trials, "simulation trials");
    ch->add_option("--prior", ch_prior, "prior weight of hypothesis 1");
    ch->add_option("--seed", ch_seed, "master seed");
    ch->add_option("--emit-csv", ch_csv, "append CSV sweep to this path");

    // -------- project --------
    std::string pj_model, pj_point, pj_constraint, pj_chart = "theta", pj_csv;
    std::uint64_t pj_seed = 0;
    auto* pj = app.add_subcommand(
        "project",
        "Divergence projection of a point onto an affine constraint set\n"
        "A x = b in the theta or eta chart (constraint text: rows of A\n"
        "separated by '|', entries by ',', then ';' and b).\n"
        "CSV columns: theta_0..");
    pj->add_option("--model", pj_model, "model JSON")->required();
    pj->add_option("--point", pj_point, "point to project (theta chart)")->required();
    pj->add_option("--constraint", pj_constraint, "\"A;b\"")->required();
    pj->add_option("--chart", pj_chart, "theta|eta");
    pj->add_option("--seed", pj_seed, "master seed (echoed)");
    pj->add_option("--emit-csv", pj_csv, "append a CSV row to this path");

    // -------- cluster --------
    std::string cl_mixture, cl_thetas, cl_csv;
    int cl_k = 2;
    long cl_samples = 10000;
    std::uint64_t cl_seed = 0;
    auto* cl = app.add_subcommand(
        "cluster",
        "Bregman k-means over mixture weight vectors with the Monte-Carlo\n"
        "entropy surrogate (one shared sample set).\n"
        "CSV columns: index,assignment");
    cl->add_option("--mixture", cl_mixture, "mixture family JSON file")->required();
    cl->add_option("--thetas", cl_thetas, "JSON file: array of weight vectors")
        ->required();
    cl->add_option("--k", cl_k, "cluster count")->required();
    cl->add_option("--samples", cl_samples, "Monte-Carlo sample count");
    cl->add_option("--seed", cl_seed, "master seed");
    cl->add_option("--emit-csv", cl_csv, "append CSV rows to this path");

    // -------- rao --------
    std::string ra_model, ra_t1, ra_t2, ra_csv;
    int ra_segments = 100;
    std::uint64_t ra_seed = 0;
    auto* ra = app.add_subcommand(
        "rao",
        "Riemannian (information-metric) distance by discrete path-energy\n"
        "descent; categorical models also report the closed form.\n"
        "CSV columns: node,theta_0..");
    ra->add_option("--model", ra_model, "model JSON")->required();
    ra->add_option("--theta1", ra_t1, "start point")->required();
    ra->add_option("--theta2", ra_t2, "end point")->required();
    ra->add_option("--segments", ra_segments, "path segments (>= 16)");
    ra->add_option("--seed", ra_seed, "master seed (echoed)");
    ra->add_option("--emit-csv", ra_csv, "append path nodes to this path");

    std::vector<const char*> cargs;
    cargs.push_back("igeo");
    for (const auto& a : argv) cargs.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help() << std::flush;
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 1;
    }

    try {
        if (dv->parsed()) {
            Json doc = detail::header("divergence", dv_seed);
            doc.set("kind", Json::str(dv_kind));
            double value;
            if (dv_kind == "bregman" || dv_kind == "jensen") {
                if (dv_model.empty())
                    throw ParseError("--model", "required for kind '" + dv_kind + "'");
                ParsedModel m = parse_model(dv_model);
                if (m.is_mixture())
                    throw ParseError("--model", "parameter divergences need an "
                                                "exponential-family model");
                Vec p = detail::parse_vector(dv_p, "--p");
                Vec q = detail::parse_vector(dv_q, "--q");
                value = (dv_kind == "bregman")
                            ? bregman(m.expfam->cumulant(), p, q)
                            : skew_jensen(m.expfam->cumulant(), dv_alpha, p, q);
                if (dv_kind == "jensen") doc.set("alpha", Json::num(dv_alpha));
            } else {
                FGenerator gen = detail::generator_by_kind(dv_kind, dv_alpha);
                if (dv_kind == "alpha") doc.set("alpha", Json::num(dv_alpha));
                DiscreteDistribution p(detail::parse_vector(dv_p, "--p"));
                DiscreteDistribution q(detail::parse_vector(dv_q, "--q"));
                value = f_divergence(gen, p, q);
            }
            doc.set("value", Json::num(value));
            detail::CsvSink csv(dv_csv, "alpha,value");
            csv.row({dv_alpha, value});
            return detail::emit(out, doc);
        }

        if (lg->parsed()) {
            ParsedModel m = parse_model(lg_model);
            if (m.is_mixture())
                throw ParseError("--model", "legendre needs an exponential-family model");
            Vec eta = detail::parse_vector(lg_eta, "--eta");
            ConjugateResult c = legendre_conjugate(m.expfam->cumulant(), eta);
            Json doc = detail::header("legendre", lg_seed);
            doc.set("family", Json::str(m.family_name));
            doc.set("value", Json::num(c.value));
            doc.set("theta", Json::vec(c.theta));
            doc.set("residual", Json::num(c.residual));
            std::vector<double> row{c.value, c.residual};
            for (int i = 0; i < c.theta.size(); ++i) row.push_back(c.theta[i]);
            detail::CsvSink csv(lg_csv, "value,residual,theta...");
            csv.row(row);
            return detail::emit(out, doc);
        }

        if (fm->parsed()) {
            ParsedModel m = parse_model(fm_model);
            Vec theta = fm_theta.empty() ? m.theta : detail::parse_vector(fm_theta, "--theta");
            if (theta.size() == 0)
                throw ParseError("theta", "provide theta in the model or via --theta");
            FIMEstimate est;
            if (fm_method == "exact") {
                if (m.is_mixture())
                    est = {m.mixture->fim(theta), Mat::Zero(m.dim(), m.dim()), 0,
                           "quadrature"};
                else
                    est = {m.expfam->fim(theta), Mat::Zero(m.dim(), m.dim()), 0, "exact"};
            } else if (fm_method == "score") {
                est = m.is_mixture()
                          ? fim_score_outer(*m.mixture, theta, fm_samples, fm_seed)
                          : fim_score_outer(*m.expfam, theta, fm_samples, fm_seed);
            } else if (fm_method == "hessian") {
                est = m.is_mixture()
                          ? fim_neg_hessian(*m.mixture, theta, fm_samples, fm_seed)
                          : fim_neg_hessian(*m.expfam, theta, fm_samples, fm_seed);
            } else if (fm_method == "alpha" || fm_method == "sqrt") {
                double a = (fm_method == "sqrt") ? 0.0 : fm_alpha;
                est = m.is_mixture()
                          ? fim_alpha(*m.mixture, theta, a, fm_samples, fm_seed)
                          : fim_alpha(*m.expfam, theta, a, fm_samples, fm_seed);
            } else {
                throw ParseError("--method", "unknown method '" + fm_method + "'");
            }
            Json doc = detail::header("fim", fm_seed);
            doc.set("family", Json::str(m.family_name));
            doc.set("method", Json::str(est.method));
            doc.set("samples", Json::integer(est.n));
            doc.set("matrix", Json::matrix(est.matrix));
            doc.set("stderr", Json::matrix(est.stderr_));
            detail::CsvSink csv(fm_csv, "i,j,value,stderr");
            for (int i = 0; i < est.matrix.rows(); ++i)
                for (int j = 0; j < est.matrix.cols(); ++j)
                    csv.row({double(i), double(j), est.matrix(i, j), est.stderr_(i, j)});
            return detail::emit(out, doc);
        }

        if (ch->parsed()) {
            ParsedModel m = parse_model(ch_model);
            if (m.is_mixture())
                throw ParseError("--model", "chernoff needs an exponential-family model");
            const ExponentialFamily& fam = *m.expfam;
            Vec t1 = detail::parse_vector(ch_t1, "--theta1");
            Vec t2 = detail::parse_vector(ch_t2, "--theta2");
            ChernoffResult res = chernoff(fam, t1, t2);
            Json doc = detail::header("chernoff", ch_seed);
            doc.set("family", Json::str(m.family_name));
            doc.set("alpha_star", Json::num(res.alpha_star));
            doc.set("value", Json::num(res.value));
            doc.set("theta_star", Json::vec(res.theta_star));
            if (ch_sim) {
                BinaryHypothesis h(fam, t1, t2, ch_prior);
                MapSimResult sim = map_error_simulation(h, ch_nobs, ch_trials, ch_seed);
                Json s = Json::object();
                s.set("error_rate", Json::num(sim.error_rate));
                s.set("exponent", Json::num(sim.exponent));
                s.set("errors", Json::integer(sim.errors));
                s.set("trials", Json::integer(sim.trials));
                s.set("reliable", Json::boolean(sim.reliable));
                doc.set("simulation", std::move(s));
            }
            detail::CsvSink csv(ch_csv, "alpha,bhattacharyya");
            if (csv.active()) {
                for (int i = 0; i <= 1000; ++i) {  // 1001 interior grid points
                    double a = (i + 0.5) / 1001.0;
                    csv.row({a, bhattacharyya(fam, t1, t2, a)});
                }
            }
            return detail::emit(out, doc);
        }

        if (pj->parsed()) {
            ParsedModel m = parse_model(pj_model);
            if (m.is_mixture())
                throw ParseError("--model", "project needs an exponential-family model");
            Vec point = detail::parse_vector(pj_point, "--point");
            auto [A, b] = detail::parse_constraint(pj_constraint);
            DuallyFlatManifold mfd(m.expfam->cumulant(), detail::eta_domain_for(*m.expfam));
            Vec projected;
            if (pj_chart == "theta") {
                AffineSubmanifold S(Chart::Theta, A, b);
                projected = project_dual(mfd, point, S);
            } else if (pj_chart == "eta") {
                AffineSubmanifold S(Chart::Eta, A, b);
                projected = project_primal(mfd, point, S);
            } else {
                throw ParseError("--chart", "must be theta or eta");
            }
            Json doc = detail::header("project", pj_seed);
            doc.set("family", Json::str(m.family_name));
            doc.set("chart", Json::str(pj_chart));
            doc.set("point", Json::vec(projected));
            doc.set("divergence", Json::num(pj_chart == "theta"
                                                ? mfd.divergence(projected, point)
                                                : mfd.divergence(point, projected)));
            std::vector<double> row;
            for (int i = 0; i < projected.size(); ++i) row.push_back(projected[i]);
            detail::CsvSink csv(pj_csv, "theta...");
            csv.row(row);
            return detail::emit(out, doc);
        }

        if (cl->parsed()) {
            std::ifstream mixf(cl_mixture);
            if (!mixf) throw ParseError("--mixture", "cannot open '" + cl_mixture + "'");
            std::stringstream mixbuf;
            mixbuf << mixf.rdbuf();
            ParsedModel m = parse_model(mixbuf.str());
            if (!m.is_mixture())
                throw ParseError("--mixture", "file must describe a mixture family");
            std::ifstream thf(cl_thetas);
            if (!thf) throw ParseError("--thetas", "cannot open '" + cl_thetas + "'");
            nlohmann::json tj;
            try {
                tj = nlohmann::json::parse(thf);
            } catch (const nlohmann::json::parse_error& e) {
                throw ParseError("--thetas", std::string("invalid JSON: ") + e.what());
            }
            if (!tj.is_array() || tj.empty())
                throw ParseError("--thetas", "expected a non-empty array of arrays");
            std::vector<Vec> thetas;
            for (size_t i = 0; i < tj.size(); ++i) {
                const auto& row = tj[i];
                if (!row.is_array())
                    throw ParseError("--thetas[" + std::to_string(i) + "]",
                                     "expected an array");
                Vec t(row.size());
                for (size_t c = 0; c < row.size(); ++c) t[static_cast<int>(c)] = row[c];
                thetas.push_back(t);
            }
            ClusteringResult res =
                cluster_wmixtures(*m.mixture, thetas, cl_k, cl_samples, cl_seed);
            Json doc = detail::header("cluster", cl_seed);
            doc.set("k", Json::integer(cl_k));
            doc.set("samples", Json::integer(cl_samples));
            Json assign = Json::array();
            for (int a : res.assignments) assign.push(Json::integer(a));
            doc.set("assignments", std::move(assign));
            Json centers = Json::array();
            for (const Vec& c : res.centers) centers.push(Json::vec(c));
            doc.set("centers", std::move(centers));
            doc.set("objective", Json::num(res.objective));
            doc.set("iterations", Json::integer(res.iterations));
            detail::CsvSink csv(cl_csv, "index,assignment");
            for (size_t i = 0; i < res.assignments.size(); ++i)
                csv.row({double(i), double(res.assignments[i])});
            return detail::emit(out, doc);
        }

        if (ra->parsed()) {
            ParsedModel m = parse_model(ra_model);
            if (m.is_mixture())
                throw ParseError("--model", "rao needs an exponential-family model");
            Vec t1 = detail::parse_vector(ra_t1, "--theta1");
            Vec t2 = detail::parse_vector(ra_t2, "--theta2");
            RaoPathResult res = rao_distance_numeric(*m.expfam, t1, t2, ra_segments);
            Json doc = detail::header("rao", ra_seed);
            doc.set("family", Json::str(m.family_name));
            doc.set("distance", Json::num(res.distance));
            doc.set("chord_length", Json::num(res.initial_length));
            doc.set("segments", Json::integer(ra_segments));
            if (m.family_name == "categorical") {
                auto to_probs = [&](const Vec& th) {
                    Vec eta = m.expfam->theta_to_eta(th);
                    Vec full(eta.size() + 1);
                    full.head(eta.size()) = eta;
                    full[eta.size()] = 1.0 - eta.sum();
                    return full;
                };
                doc.set("closed_form",
                        Json::num(rao_distance_categorical(
                            DiscreteDistribution(to_probs(t1)),
                            DiscreteDistribution(to_probs(t2)))));
            }
            detail::CsvSink csv(ra_csv, "node,theta...");
            for (size_t u = 0; u < res.path.size(); ++u) {
                std::vector<double> row{double(u)};
                for (int c = 0; c < res.path[u].size(); ++c) row.push_back(res.path[u][c]);
                csv.row(row);
            }
            return detail::emit(out, doc);
        }
    } catch (const ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << "numeric failure [" << detail::error_kind(e) << "]: " << e.what() << "\n";
        return 2;
    }
    err << "no subcommand selected\n";
    return 1;
}

}  // namespace cli
}  // namespace infogeo
